//! Univariate polynomials over an [`ExtField`], with the finite-field
//! factorization pipeline: squarefree decomposition, distinct-degree
//! factorization and Cantor–Zassenhaus equal-degree splitting.

use std::fmt;

use rand::Rng;

use super::{ExtField, FieldElement};

/// Dense univariate polynomial, coefficients constant term first, with no
/// trailing zeros (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UPoly {
    field: ExtField,
    coeffs: Vec<FieldElement>,
}

impl UPoly {
    pub fn new(field: &ExtField, coeffs: Vec<FieldElement>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        let mut out = UPoly {
            field: field.clone(),
            coeffs,
        };
        out.trim();
        out
    }

    pub fn from_ints(field: &ExtField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &ExtField) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c])
    }

    pub fn one(field: &ExtField) -> Self {
        Self::constant(field.one())
    }

    /// The polynomial `x`.
    pub fn x(field: &ExtField) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    /// `x - a`.
    pub fn linear(a: &FieldElement) -> Self {
        let field = a.field().clone();
        Self::new(&field, vec![-a, field.one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("nonzero lead");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            &self.field,
            (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            &self.field,
            (0..len).map(|i| self.coeff(i) - other.coeff(i)).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::new(&self.field, out)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let db = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.lead().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return (Self::zero(&self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - db];
        for top in (db..rem.len()).rev() {
            let c = &rem[top] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            let shift = top - db;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &(&c * d);
            }
            quot[shift] = c;
        }
        rem.truncate(db);
        (Self::new(&self.field, quot), Self::new(&self.field, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).1
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        match r0.lead() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = l.inv().unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            &self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &self.field.from_int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Evaluates at `x` lying in an extension field, embedding the coefficients.
    pub fn eval_in_extension(&self, x: &FieldElement) -> FieldElement {
        if x.field() == &self.field {
            return self.eval(x);
        }
        let target = x.field().clone();
        let mut acc = target.zero();
        for c in self.coeffs.iter().rev() {
            let c = super::embed(c, &target).expect("coefficient field embeds");
            acc = &(&acc * x) + &c;
        }
        acc
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    pub fn pow_mod(&self, mut exp: u64, modulus: &Self) -> Self {
        let mut acc = Self::one(&self.field).rem(modulus);
        let mut base = self.rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
            exp >>= 1;
        }
        acc
    }

    /// Applies the `p`-power map coefficientwise (not a polynomial power).
    fn map_pow_p(&self) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|c| c.pow_p()).collect())
    }

    /// `self^p mod modulus`, using `(Σ a_i x^i)^p = Σ a_i^p x^(ip)` with the
    /// table `x_pows[i] = x^(ip) mod modulus`.
    fn pow_p_mod(&self, x_pows: &[Self]) -> Self {
        let mut acc = Self::zero(&self.field);
        for (a, xp) in self.map_pow_p().coeffs.iter().zip(x_pows) {
            if !a.is_zero() {
                acc = acc.add(&xp.scale(a));
            }
        }
        acc
    }

    fn x_pow_table(modulus: &Self) -> Vec<Self> {
        let f = &modulus.field;
        let d = modulus.degree().unwrap();
        let xp = Self::x(f).pow_mod(f.p(), modulus);
        let mut out = Vec::with_capacity(d);
        let mut cur = Self::one(f).rem(modulus);
        for _ in 0..d.max(1) {
            out.push(cur.clone());
            cur = cur.mul_mod(&xp, modulus);
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Monic irreducible factors with multiplicities, plus the leading
    /// coefficient. Factors are sorted by degree, then coefficients. The result
    /// does not depend on `rng`; only the running time does.
    pub fn factor<R: Rng + ?Sized>(&self, rng: &mut R) -> (FieldElement, Vec<(UPoly, usize)>) {
        let lead = self.lead().expect("factoring zero polynomial").clone();
        let mut out = Vec::new();
        for (sqf, mult) in self.monic().squarefree_decomposition() {
            for (g, d) in sqf.distinct_degree() {
                for h in g.equal_degree(d, rng) {
                    out.push((h, mult));
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp_canonical(&b.0).then(a.1.cmp(&b.1)));
        (lead, out)
    }

    fn cmp_canonical(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(g_i, i)` with
    /// `self = Π g_i^i` and each `g_i` squarefree, nonconstant.
    pub fn squarefree_decomposition(&self) -> Vec<(UPoly, usize)> {
        let mut out = Vec::new();
        self.sqf_rec(1, &mut out);
        out
    }

    fn sqf_rec(&self, scale: usize, out: &mut Vec<(UPoly, usize)>) {
        if self.degree().unwrap_or(0) == 0 {
            return;
        }
        let p = self.field.p() as usize;
        let d = self.derivative();
        if d.is_zero() {
            // self = g(x^p); take the p-th root
            self.pth_root().sqf_rec(scale * p, out);
            return;
        }
        let mut c = self.gcd(&d);
        let mut w = self.divrem(&c).0;
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let z = w.divrem(&y).0;
            if z.degree().unwrap_or(0) > 0 {
                out.push((z.monic(), i * scale));
            }
            i += 1;
            w = y;
            c = c.divrem(&w).0;
        }
        if c.degree().unwrap_or(0) > 0 {
            c.pth_root().sqf_rec(scale * p, out);
        }
    }

    /// For `self = Σ a_i x^(ip)`, returns `Σ a_i^(1/p) x^i`.
    fn pth_root(&self) -> Self {
        let p = self.field.p() as usize;
        let n = self.field.degree();
        let coeffs = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|c| c.pow_p_iter(n - 1))
            .collect();
        Self::new(&self.field, coeffs)
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// `(g_d, d)` where `g_d` is the product of all irreducible factors of degree `d`.
    pub fn distinct_degree(&self) -> Vec<(UPoly, usize)> {
        let f = &self.field;
        let n = f.degree();
        let mut out = Vec::new();
        let mut rest = self.monic();
        let x = Self::x(f);
        let mut d = 0;
        // h = x^(Q^d) mod rest, Q = p^n
        let mut h = x.rem(&rest);
        while let Some(deg) = rest.degree() {
            if deg < 2 * (d + 1) {
                if deg > 0 {
                    out.push((rest.clone(), deg));
                }
                break;
            }
            d += 1;
            let table = Self::x_pow_table(&rest);
            for _ in 0..n {
                h = h.pow_p_mod(&table);
            }
            let g = h.sub(&x).gcd(&rest);
            if g.degree().unwrap_or(0) > 0 {
                rest = rest.divrem(&g).0;
                h = h.rem(&rest);
                out.push((g, d));
            }
        }
        out
    }

    /// Cantor–Zassenhaus splitting of a monic squarefree polynomial whose
    /// irreducible factors all have degree `d`.
    pub fn equal_degree<R: Rng + ?Sized>(&self, d: usize, rng: &mut R) -> Vec<UPoly> {
        let deg = self.degree().unwrap_or(0);
        if deg == 0 {
            return Vec::new();
        }
        if deg == d {
            return vec![self.monic()];
        }
        let f = &self.field;
        let p = f.p();
        let steps = f.degree() * d;
        let table = Self::x_pow_table(self);
        loop {
            let r = Self::new(f, (0..deg).map(|_| f.random(rng)).collect());
            if r.degree().unwrap_or(0) == 0 {
                continue;
            }
            // r^((Q^d - 1)/2) = (Π_{j < nd} r^(p^j))^((p-1)/2)
            let mut cur = r.clone();
            let mut acc = r.clone();
            for _ in 1..steps {
                cur = cur.pow_p_mod(&table);
                acc = acc.mul_mod(&cur, self);
            }
            let s = acc.pow_mod((p - 1) / 2, self);
            let g = s.sub(&Self::one(f)).gcd(self);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < deg {
                let other = self.divrem(&g).0;
                let mut out = g.equal_degree(d, rng);
                out.extend(other.equal_degree(d, rng));
                return out;
            }
        }
    }

    /// Distinct roots in the coefficient field, sorted by coefficient vector.
    pub fn roots<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<FieldElement> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = &self.field;
        let monic = self.monic();
        // gcd with x^Q - x isolates the linear factors
        let table = Self::x_pow_table(&monic);
        let x = Self::x(f);
        let mut h = x.rem(&monic);
        for _ in 0..f.degree() {
            h = h.pow_p_mod(&table);
        }
        let lin = h.sub(&x).gcd(&monic);
        let mut roots: Vec<FieldElement> = lin
            .equal_degree(1, rng)
            .into_iter()
            .map(|l| -&l.coeffs[0])
            .collect();
        roots.sort();
        roots
    }

    /// Some root in the coefficient field, found by repeatedly splitting and
    /// keeping the smaller factor; cheaper than [`UPoly::roots`] when all
    /// roots are conjugate anyway.
    pub fn any_root<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<FieldElement> {
        if self.degree().unwrap_or(0) == 0 {
            return None;
        }
        let f = &self.field;
        let p = f.p();
        let monic = self.monic();
        let table = Self::x_pow_table(&monic);
        let x = Self::x(f);
        let mut h = x.rem(&monic);
        for _ in 0..f.degree() {
            h = h.pow_p_mod(&table);
        }
        let mut cur = h.sub(&x).gcd(&monic);
        loop {
            let deg = cur.degree()?;
            if deg == 0 {
                return None;
            }
            if deg == 1 {
                return Some(-&cur.coeffs[0]);
            }
            let table = Self::x_pow_table(&cur);
            let r = Self::new(f, (0..deg).map(|_| f.random(rng)).collect());
            if r.degree().unwrap_or(0) == 0 {
                continue;
            }
            let mut c = r.clone();
            let mut acc = r;
            for _ in 1..f.degree() {
                c = c.pow_p_mod(&table);
                acc = acc.mul_mod(&c, &cur);
            }
            let s = acc.pow_mod((p - 1) / 2, &cur);
            let g = s.sub(&Self::one(f)).gcd(&cur);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < deg {
                let other = cur.divrem(&g).0;
                cur = if gd <= deg - gd { g } else { other };
            }
        }
    }

    /// Rabin irreducibility test over the coefficient field.
    pub fn is_irreducible(&self) -> bool {
        let Some(deg) = self.degree() else {
            return false;
        };
        if deg == 0 {
            return false;
        }
        if deg == 1 {
            return true;
        }
        let monic = self.monic();
        self.is_squarefree() && monic.distinct_degree() == vec![(monic.clone(), deg)]
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if c.is_prime_field_element() {
                c.to_string()
            } else {
                format!("({c})")
            };
            match i {
                0 => write!(f, "{coeff}")?,
                1 if c.is_one() => write!(f, "x")?,
                1 => write!(f, "{coeff}*x")?,
                _ if c.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "{coeff}*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois_field::make_field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn factor_x2_minus_2_over_f17() {
        let f = make_field(17, 1).unwrap();
        let g = UPoly::from_ints(&f, &[-2, 0, 1]);
        let (lead, facs) = g.factor(&mut rng());
        assert!(lead.is_one());
        // 6^2 = 36 = 2 mod 17
        assert_eq!(
            facs,
            vec![
                (UPoly::from_ints(&f, &[6, 1]), 1),
                (UPoly::from_ints(&f, &[-6, 1]), 1)
            ]
        );
    }

    #[test]
    fn factor_repeated_root() {
        let f = make_field(5, 1).unwrap();
        let g = UPoly::from_ints(&f, &[1, -2, 1]);
        let (_, facs) = g.factor(&mut rng());
        assert_eq!(facs, vec![(UPoly::from_ints(&f, &[-1, 1]), 2)]);
    }

    #[test]
    fn factor_x2_plus_1_over_f3_is_irreducible() {
        let f = make_field(3, 1).unwrap();
        let g = UPoly::from_ints(&f, &[1, 0, 1]);
        assert!(g.is_irreducible());
        let (_, facs) = g.factor(&mut rng());
        assert_eq!(facs, vec![(g.clone(), 1)]);
    }

    #[test]
    fn pth_power_inseparable_case() {
        // x^3 - 1 = (x - 1)^3 over F_3
        let f = make_field(3, 1).unwrap();
        let g = UPoly::from_ints(&f, &[-1, 0, 0, 1]);
        let (_, facs) = g.factor(&mut rng());
        assert_eq!(facs, vec![(UPoly::from_ints(&f, &[-1, 1]), 3)]);
    }

    #[test]
    fn factorization_reconstructs_product() {
        let f = make_field(3, 2).unwrap();
        let mut r = rng();
        for _ in 0..20 {
            let g = UPoly::new(&f, (0..9).map(|_| f.random(&mut r)).collect());
            if g.is_zero() {
                continue;
            }
            let (lead, facs) = g.factor(&mut r);
            let mut prod = UPoly::constant(lead);
            for (h, m) in &facs {
                assert!(h.is_irreducible());
                for _ in 0..*m {
                    prod = prod.mul(h);
                }
            }
            assert_eq!(prod, g);
        }
    }

    #[test]
    fn roots_of_split_polynomial() {
        let f = make_field(7, 2).unwrap();
        let mut r = rng();
        let a = f.random(&mut r);
        let b = f.random(&mut r);
        let g = UPoly::linear(&a).mul(&UPoly::linear(&b));
        let mut want = vec![a, b];
        want.sort();
        want.dedup();
        assert_eq!(g.roots(&mut r), want);
    }
}
