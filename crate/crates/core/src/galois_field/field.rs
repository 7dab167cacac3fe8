use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::fp_poly;
use super::FieldError;

/// Largest characteristic accepted; keeps every coefficient product inside `u64`.
pub const MAX_CHARACTERISTIC: u64 = (1 << 31) - 1;

pub(crate) type Coeffs = SmallVec<[u64; 4]>;

struct FieldData {
    p: u64,
    n: usize,
    /// Monic, `n + 1` coefficients, constant term first.
    modulus: Vec<u64>,
    /// `frob[i]` is `(t^i)^p` reduced, so the p-power map is a matrix product.
    frob: Vec<Vec<u64>>,
}

/// The finite field `F_{p^n}` presented as `F_p[t]/(m(t))` with the canonical
/// modulus `m`. Cloning is cheap; two handles are equal iff `(p, n)` agree,
/// which identifies the presentation because the modulus is canonical.
#[derive(Clone)]
pub struct ExtField(Arc<FieldData>);

/// JSON shape of a field: `{"p": int, "n": int}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub n: usize,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn field_cache() -> &'static Mutex<HashMap<(u64, usize), ExtField>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), ExtField>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds (or fetches from the process-wide cache) `F_{p^n}` with its canonical
/// modulus: the monic irreducible of degree `n` that is smallest when read as a
/// base-`p` integer, constant term least significant.
pub fn make_field(p: u64, n: usize) -> Result<ExtField, FieldError> {
    if p == 2 {
        return Err(FieldError::EvenCharacteristic);
    }
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if p > MAX_CHARACTERISTIC {
        return Err(FieldError::CharacteristicTooLarge(p));
    }
    if n == 0 {
        return Err(FieldError::ZeroDegree);
    }
    if let Some(f) = field_cache().lock().unwrap().get(&(p, n)) {
        return Ok(f.clone());
    }
    let modulus = fp_poly::canonical_modulus(p, n);
    let frob = frobenius_table(p, &modulus);
    let field = ExtField(Arc::new(FieldData {
        p,
        n,
        modulus,
        frob,
    }));
    let mut cache = field_cache().lock().unwrap();
    Ok(cache.entry((p, n)).or_insert(field).clone())
}

fn frobenius_table(p: u64, modulus: &[u64]) -> Vec<Vec<u64>> {
    let n = modulus.len() - 1;
    let t = if n == 1 { vec![0] } else { vec![0, 1] };
    let tp = fp_poly::pow_mod(&t, p, modulus, p);
    let mut out = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for _ in 0..n {
        let mut padded = cur.clone();
        padded.resize(n, 0);
        out.push(padded);
        cur = fp_poly::mul_mod(&cur, &tp, modulus, p);
    }
    out
}

impl ExtField {
    pub fn from_spec(spec: FieldSpec) -> Result<Self, FieldError> {
        make_field(spec.p, spec.n)
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p(),
            n: self.degree(),
        }
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    /// Extension degree over the prime field.
    pub fn degree(&self) -> usize {
        self.0.n
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// `p^n` if it fits in a `u128`.
    pub fn order(&self) -> Option<u128> {
        (self.p() as u128).checked_pow(self.degree() as u32)
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.n == 1
    }

    /// True iff `sub` is (canonically embedded as) a subfield of `self`.
    pub fn contains_subfield(&self, sub: &ExtField) -> bool {
        sub.p() == self.p() && self.degree() % sub.degree() == 0
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: SmallVec::from_elem(0, self.degree()),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Image of an integer under `Z -> F_p -> F_{p^n}`.
    pub fn from_int(&self, v: i64) -> FieldElement {
        let p = self.p() as i64;
        let mut e = self.zero();
        e.coeffs[0] = v.rem_euclid(p) as u64;
        e
    }

    /// The class of `t` (for `n = 1` this is `0`, matching the modulus `x`).
    pub fn generator(&self) -> FieldElement {
        let mut e = self.zero();
        if self.degree() == 1 {
            return e;
        }
        e.coeffs[1] = 1;
        e
    }

    /// Element from a coefficient vector (constant term first). Shorter vectors
    /// are zero-padded; entries are reduced mod `p`.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.degree() {
            return Err(FieldError::BadCoefficientLength {
                expected: self.degree(),
                got: coeffs.len(),
            });
        }
        let p = self.p() as i64;
        let mut e = self.zero();
        for (slot, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *slot = c.rem_euclid(p) as u64;
        }
        Ok(e)
    }

    pub(crate) fn from_raw(&self, coeffs: Coeffs) -> FieldElement {
        debug_assert_eq!(coeffs.len(), self.degree());
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let p = self.p();
        let coeffs = (0..self.degree()).map(|_| rng.gen_range(0..p)).collect();
        self.from_raw(coeffs)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let e = self.random(rng);
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// All elements in base-`p` counting order. Intended for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let total = self.order().expect("field too large to enumerate");
        let p = self.p() as u128;
        (0..total).map(move |mut idx| {
            let mut coeffs = Coeffs::new();
            for _ in 0..self.degree() {
                coeffs.push((idx % p) as u64);
                idx /= p;
            }
            self.from_raw(coeffs)
        })
    }

    fn mul_coeffs(&self, a: &[u64], b: &[u64]) -> Coeffs {
        let p = self.p();
        let n = self.degree();
        if n == 1 {
            return SmallVec::from_elem(a[0] * b[0] % p, 1);
        }
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        let m = &self.0.modulus;
        for top in (n..2 * n - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            let shift = top - n;
            for (i, &mi) in m[..n].iter().enumerate() {
                prod[shift + i] = (prod[shift + i] + (p - c) * mi) % p;
            }
            prod[top] = 0;
        }
        prod.truncate(n);
        prod.into_iter().collect()
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.n == other.0.n)
    }
}

impl Eq for ExtField {}

impl Hash for ExtField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.n.hash(state);
    }
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.n == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}", self.0.p, self.0.n)
        }
    }
}

/// An element of an [`ExtField`], stored as its `n` coefficients in the power
/// basis `1, t, ..., t^(n-1)`.
///
/// The arithmetic operators panic when the operands live in different fields;
/// [`arith`] and the `checked_*` methods report that as [`FieldError::FieldMismatch`].
#[derive(Clone)]
pub struct FieldElement {
    field: ExtField,
    coeffs: Coeffs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Fallible binary arithmetic.
pub fn arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement, FieldError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

impl FieldElement {
    pub fn field(&self) -> &ExtField {
        &self.field
    }

    /// Coefficients in the power basis, constant term first.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// True iff the element lies in the prime field.
    pub fn is_prime_field_element(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn check_same(&self, other: &Self) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        let p = self.field.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| {
                let s = a + b;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        Ok(self.field.from_raw(coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        let p = self.field.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| if a >= b { a - b } else { a + p - b })
            .collect();
        Ok(self.field.from_raw(coeffs))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        Ok(self
            .field
            .from_raw(self.field.mul_coeffs(&self.coeffs, &other.coeffs)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let p = self.field.p();
        if self.field.degree() == 1 {
            return Ok(self
                .field
                .from_raw(SmallVec::from_elem(fp_poly::inv_mod_p(self.coeffs[0], p), 1)));
        }
        let mut a: Vec<u64> = self.coeffs.to_vec();
        fp_poly::trim(&mut a);
        let mut inv = fp_poly::inv_mod(&a, self.field.modulus(), p);
        inv.resize(self.field.degree(), 0);
        Ok(self.field.from_raw(inv.into_iter().collect()))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            exp >>= 1;
        }
        acc
    }

    /// `self^p`, applied as a linear map over `F_p`.
    pub fn pow_p(&self) -> Self {
        let f = &self.field;
        let n = f.degree();
        if n == 1 {
            return self.clone();
        }
        let p = f.p();
        let mut out: Coeffs = SmallVec::from_elem(0, n);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (slot, &img) in out.iter_mut().zip(&f.0.frob[i]) {
                *slot = (*slot + c * img) % p;
            }
        }
        f.from_raw(out)
    }

    /// `self^(p^k)`.
    pub fn pow_p_iter(&self, k: usize) -> Self {
        let n = self.field.degree();
        let mut out = self.clone();
        for _ in 0..(k % n) {
            out = out.pow_p();
        }
        out
    }

    /// Norm down to the prime field: the product of all `p`-power conjugates.
    pub fn norm_to_prime(&self) -> u64 {
        let mut acc = self.clone();
        let mut cur = self.clone();
        for _ in 1..self.field.degree() {
            cur = cur.pow_p();
            acc = &acc * &cur;
        }
        debug_assert!(acc.is_prime_field_element());
        acc.coeffs[0]
    }

    /// Euler's criterion `a^((|F|-1)/2) = 1`. Since
    /// `(p^n - 1)/2 = (1 + p + ... + p^(n-1)) (p - 1)/2`, the power equals
    /// `N(a)^((p-1)/2)` with `N` the norm to `F_p`, which is how it is evaluated.
    pub fn is_square(&self) -> Result<bool, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroArgument);
        }
        let p = self.field.p();
        Ok(fp_poly::pow_mod_p(self.norm_to_prime(), (p - 1) / 2, p) == 1)
    }

    /// Coefficients as signed integers, for serialization.
    pub fn to_i64_vec(&self) -> Vec<i64> {
        self.coeffs.iter().map(|&c| c as i64).collect()
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.coeffs.hash(state);
    }
}

/// Orders first by field `(p, n)`, then lexicographically by coefficient
/// vector starting from the constant term.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.field.p(), self.field.degree())
            .cmp(&(other.field.p(), other.field.degree()))
            .then_with(|| self.coeffs.as_slice().cmp(other.coeffs.as_slice()))
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_prime_field_element() {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{c}*t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field arithmetic")
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$checked(&rhs).expect("field arithmetic")
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$checked(rhs).expect("field arithmetic")
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$checked(&rhs).expect("field arithmetic")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = &*self * rhs;
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.field.p();
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| if c == 0 { 0 } else { p - c })
            .collect();
        self.field.from_raw(coeffs)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_field_examples() {
        let f17 = make_field(17, 1).unwrap();
        assert_eq!(f17.modulus(), &[0, 1]);
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        assert_eq!(make_field(2, 1).unwrap_err(), FieldError::EvenCharacteristic);
        assert_eq!(make_field(15, 1).unwrap_err(), FieldError::NotPrime(15));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = make_field(17, 1).unwrap();
        assert_eq!(f.from_int(9) + f.from_int(9), f.from_int(1));
        assert_eq!(f.from_int(1) / f.from_int(2), f.from_int(9));
        assert_eq!(
            arith(&f.one(), &f.zero(), ArithOp::Div).unwrap_err(),
            FieldError::DivisionByZero
        );
    }

    #[test]
    fn modulus_forces_t_squared() {
        let f9 = make_field(3, 2).unwrap();
        let t = f9.generator();
        assert_eq!(&t * &t, f9.from_int(-1));
        assert_eq!(&t * &t, f9.from_int(2));
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = make_field(3, 1).unwrap().one();
        let b = make_field(3, 2).unwrap().one();
        assert!(matches!(
            arith(&a, &b, ArithOp::Add),
            Err(FieldError::FieldMismatch { .. })
        ));
    }

    #[test]
    fn squares_in_f17() {
        let f = make_field(17, 1).unwrap();
        assert!(f.from_int(2).is_square().unwrap());
        assert!(!f.from_int(3).is_square().unwrap());
        assert_eq!(f.zero().is_square().unwrap_err(), FieldError::ZeroArgument);
    }

    #[test]
    fn inverses_exhaustive_f27() {
        let f = make_field(3, 3).unwrap();
        for a in f.elements().filter(|a| !a.is_zero()) {
            assert!((&a * &a.inv().unwrap()).is_one());
        }
    }
}
