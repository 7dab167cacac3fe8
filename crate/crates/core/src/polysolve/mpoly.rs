use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::galois_field::{embed, ExtField, FieldElement, FieldError, UPoly};

/// Exponent vector of a monomial; its length is the number of variables.
pub type Exponent = SmallVec<[u16; 8]>;

/// Monomial orders supported by the Gröbner engine. Variable 0 is the largest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    Grevlex,
}

pub(crate) type OrderKey = SmallVec<[i32; 9]>;

impl MonomialOrder {
    /// A key whose lexicographic order realizes the monomial order.
    pub(crate) fn key(self, e: &[u16]) -> OrderKey {
        match self {
            MonomialOrder::Lex => e.iter().map(|&x| x as i32).collect(),
            MonomialOrder::Grevlex => {
                let mut k = OrderKey::with_capacity(e.len() + 1);
                k.push(e.iter().map(|&x| x as i32).sum());
                k.extend(e.iter().rev().map(|&x| -(x as i32)));
                k
            }
        }
    }

    pub fn cmp(self, a: &[u16], b: &[u16]) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

pub(crate) fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn lcm(a: &[u16], b: &[u16]) -> Exponent {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

pub(crate) fn coprime(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x == 0 || y == 0)
}

pub(crate) fn sub_exp(a: &[u16], b: &[u16]) -> Exponent {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

pub(crate) fn add_exp(a: &[u16], b: &[u16]) -> Exponent {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

/// Sparse multivariate polynomial over an [`ExtField`]. No zero coefficient is
/// ever stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    field: ExtField,
    nvars: usize,
    terms: BTreeMap<Exponent, FieldElement>,
}

impl MPoly {
    pub fn zero(field: &ExtField, nvars: usize) -> Self {
        MPoly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &ExtField, nvars: usize, c: FieldElement) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(SmallVec::from_elem(0, nvars), c);
        p
    }

    pub fn one(field: &ExtField, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    /// The variable `x_i`.
    pub fn var(field: &ExtField, nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e: Exponent = SmallVec::from_elem(0, nvars);
        e[i] = 1;
        let mut p = Self::zero(field, nvars);
        p.add_term(e, field.one());
        p
    }

    pub fn from_terms<I>(field: &ExtField, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u16>, FieldElement)>,
    {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length must equal nvars");
            p.add_term(e.into_iter().collect(), c);
        }
        p
    }

    /// Convenience constructor with integer coefficients.
    pub fn from_int_terms(field: &ExtField, nvars: usize, terms: &[(&[u16], i64)]) -> Self {
        Self::from_terms(
            field,
            nvars,
            terms.iter().map(|(e, c)| (e.to_vec(), field.from_int(*c))),
        )
    }

    pub fn add_term(&mut self, e: Exponent, c: FieldElement) {
        debug_assert_eq!(c.field(), &self.field);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u16]) -> FieldElement {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
    }

    /// Leading exponent under `order`.
    pub fn leading_exponent(&self, order: MonomialOrder) -> Option<&Exponent> {
        self.terms.keys().max_by(|a, b| order.cmp(a, b))
    }

    pub fn leading_coeff(&self, order: MonomialOrder) -> Option<&FieldElement> {
        self.leading_exponent(order).map(|e| &self.terms[e])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(&self.field, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(add_exp(e1, e2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_monomial(&self, e: &[u16], c: &FieldElement) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (e1, c1) in &self.terms {
            out.add_term(add_exp(e1, e), c1 * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.field, self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.add_term(ne, c * &self.field.from_int(e[i] as i64));
        }
        out
    }

    /// Evaluates at a point whose coordinates lie in the coefficient field or
    /// in an extension of it (coefficients are embedded canonically).
    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement, FieldError> {
        assert_eq!(point.len(), self.nvars);
        let target = point
            .first()
            .map(|x| x.field().clone())
            .unwrap_or_else(|| self.field.clone());
        let max_deg = self
            .terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0) as usize;
        // powers[i][k] = point[i]^k
        let powers: Vec<Vec<FieldElement>> = point
            .iter()
            .map(|x| {
                let mut v = Vec::with_capacity(max_deg + 1);
                let mut cur = target.one();
                for _ in 0..=max_deg {
                    v.push(cur.clone());
                    cur = &cur * x;
                }
                v
            })
            .collect();
        let mut acc = target.zero();
        for (e, c) in &self.terms {
            let mut term = embed(c, &target)?;
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.checked_mul(&powers[i][k as usize])?;
                }
            }
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    }

    /// Same polynomial with coefficients pushed into an extension field.
    pub fn embed_into(&self, target: &ExtField) -> Result<Self, FieldError> {
        let mut out = Self::zero(target, self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), embed(c, target)?);
        }
        Ok(out)
    }

    /// The single variable this polynomial involves, if any (`Some(None)` for
    /// constants, `None` if two or more variables occur).
    pub fn univariate_variable(&self) -> Option<Option<usize>> {
        let mut var = None;
        for e in self.terms.keys() {
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    match var {
                        None => var = Some(i),
                        Some(v) if v != i => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(var)
    }

    pub fn to_upoly(&self, var: usize) -> UPoly {
        let deg = self.terms.keys().map(|e| e[var] as usize).max().unwrap_or(0);
        let mut coeffs = vec![self.field.zero(); deg + 1];
        for (e, c) in &self.terms {
            coeffs[e[var] as usize] = c.clone();
        }
        UPoly::new(&self.field, coeffs)
    }

    pub fn from_upoly(u: &UPoly, nvars: usize, var: usize) -> Self {
        let mut out = Self::zero(u.field(), nvars);
        for (k, c) in u.coeffs().iter().enumerate() {
            let mut e: Exponent = SmallVec::from_elem(0, nvars);
            e[var] = k as u16;
            out.add_term(e, c.clone());
        }
        out
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("x{i}")
                    } else {
                        format!("x{i}^{k}")
                    }
                })
                .collect();
            let coeff = if c.is_prime_field_element() {
                c.to_string()
            } else {
                format!("({c})")
            };
            if mono.is_empty() {
                write!(f, "{coeff}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois_field::make_field;

    #[test]
    fn grevlex_vs_lex() {
        // x0 * x2^2 vs x1^3 (degree 3 both): grevlex compares last var
        let a = [1u16, 0, 2];
        let b = [0u16, 3, 0];
        assert_eq!(MonomialOrder::Grevlex.cmp(&a, &b), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
        // total degree dominates in grevlex
        assert_eq!(MonomialOrder::Grevlex.cmp(&[2, 0, 0], &[0, 0, 3]), Ordering::Less);
    }

    #[test]
    fn arithmetic_and_derivative() {
        let f = make_field(7, 1).unwrap();
        let x = MPoly::var(&f, 2, 0);
        let y = MPoly::var(&f, 2, 1);
        let p = x.mul(&x).add(&x.mul(&y).scale(&f.from_int(3)));
        assert_eq!(p.derivative(0), x.scale(&f.from_int(2)).add(&y.scale(&f.from_int(3))));
        assert!(p.sub(&p).is_zero());
        let v = p.eval(&[f.from_int(2), f.from_int(1)]).unwrap();
        assert_eq!(v, f.from_int(4 + 6));
    }
}
