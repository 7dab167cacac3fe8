use std::fmt;

use crate::galois_field::{embed, ExtField, FieldElement, FieldError, UPoly};
use crate::linalg::Matrix;

/// Number of monomials `x_i x_j` with `0 <= i <= j <= 4`.
pub const NUM_COEFFS: usize = 15;

/// Position of the monomial `x_i x_j` (any order of `i`, `j`) in the
/// coefficient vector `x0², x0x1, …, x0x4, x1², …, x4²`.
pub fn monomial_index(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    assert!(j < 5);
    i * 5 - i * i.saturating_sub(1) / 2 + (j - i)
}

/// A quadric `Σ c_ij x_i x_j` on `P^4`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    field: ExtField,
    coeffs: Vec<FieldElement>,
}

impl QuadraticForm {
    pub fn new(field: &ExtField, coeffs: Vec<FieldElement>) -> Result<Self, FieldError> {
        if coeffs.len() != NUM_COEFFS {
            return Err(FieldError::BadCoefficientLength {
                expected: NUM_COEFFS,
                got: coeffs.len(),
            });
        }
        for c in &coeffs {
            if c.field() != field {
                return Err(FieldError::FieldMismatch {
                    left: field.to_string(),
                    right: c.field().to_string(),
                });
            }
        }
        Ok(QuadraticForm {
            field: field.clone(),
            coeffs,
        })
    }

    pub fn from_ints(field: &ExtField, coeffs: &[i64]) -> Result<Self, FieldError> {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    /// `Σ d_i x_i²`.
    pub fn diagonal(field: &ExtField, d: &[i64; 5]) -> Self {
        let mut coeffs = vec![field.zero(); NUM_COEFFS];
        for (i, &v) in d.iter().enumerate() {
            coeffs[monomial_index(i, i)] = field.from_int(v);
        }
        QuadraticForm {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> &FieldElement {
        &self.coeffs[monomial_index(i, j)]
    }

    /// Symmetric Gram matrix with `M_ij = c_ij / 2` off the diagonal.
    pub fn gram(&self) -> Matrix {
        let half = self.field.from_int(2).inv().expect("odd characteristic");
        (0..5)
            .map(|i| {
                (0..5)
                    .map(|j| {
                        let c = self.coeff(i, j);
                        if i == j {
                            c.clone()
                        } else {
                            c * &half
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn from_gram(m: &Matrix) -> Self {
        let field = m[0][0].field().clone();
        let two = field.from_int(2);
        let mut coeffs = vec![field.zero(); NUM_COEFFS];
        for i in 0..5 {
            for j in i..5 {
                coeffs[monomial_index(i, j)] = if i == j {
                    m[i][i].clone()
                } else {
                    &m[i][j] * &two
                };
            }
        }
        QuadraticForm { field, coeffs }
    }

    /// Value at a point whose coordinates may lie in an extension field.
    pub fn eval(&self, x: &[FieldElement]) -> Result<FieldElement, FieldError> {
        let target = x[0].field().clone();
        let mut acc = target.zero();
        for i in 0..5 {
            for j in i..5 {
                let c = self.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                let c = embed(c, &target)?;
                acc = acc.checked_add(&c.checked_mul(&x[i])?.checked_mul(&x[j])?)?;
            }
        }
        Ok(acc)
    }

    /// Polar form `B(x, y) = Q(x + y) - Q(x) - Q(y)`.
    pub fn polar(&self, x: &[FieldElement], y: &[FieldElement]) -> Result<FieldElement, FieldError> {
        let target = x[0].field().clone();
        let mut acc = target.zero();
        for i in 0..5 {
            for j in i..5 {
                let c = self.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                let c = embed(c, &target)?;
                let t = &(&x[i] * &y[j]) + &(&x[j] * &y[i]);
                acc += &(&c * &t);
            }
        }
        Ok(acc)
    }

    pub fn embed_into(&self, target: &ExtField) -> Result<Self, FieldError> {
        Ok(QuadraticForm {
            field: target.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| embed(c, target))
                .collect::<Result<_, _>>()?,
        })
    }
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for i in 0..5 {
            for j in i..5 {
                let c = self.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                let mono = if i == j {
                    format!("x{i}^2")
                } else {
                    format!("x{i}*x{j}")
                };
                parts.push(if c.is_one() {
                    mono
                } else if c.is_prime_field_element() {
                    format!("{c}*{mono}")
                } else {
                    format!("({c})*{mono}")
                });
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `det(λ M1 + M2)` as a polynomial in `λ`.
pub fn pencil_determinant(f1: &QuadraticForm, f2: &QuadraticForm) -> UPoly {
    let field = f1.field().clone();
    let (m1, m2) = (f1.gram(), f2.gram());
    let entries: Vec<Vec<UPoly>> = (0..5)
        .map(|i| {
            (0..5)
                .map(|j| UPoly::new(&field, vec![m2[i][j].clone(), m1[i][j].clone()]))
                .collect()
        })
        .collect();
    let mut total = UPoly::zero(&field);
    let mut perm = [0usize, 1, 2, 3, 4];
    permutations(&mut perm, 0, true, &mut |p, even| {
        let mut term = UPoly::one(&field);
        for (i, &j) in p.iter().enumerate() {
            term = term.mul(&entries[i][j]);
            if term.is_zero() {
                return;
            }
        }
        total = if even { total.add(&term) } else { total.sub(&term) };
    });
    total
}

fn permutations(p: &mut [usize; 5], k: usize, even: bool, visit: &mut impl FnMut(&[usize; 5], bool)) {
    if k == p.len() {
        visit(p, even);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, if i == k { even } else { !even }, visit);
        p.swap(k, i);
    }
}

/// The intersection of the two quadrics is a smooth surface iff the binary
/// quintic `det(λ M1 + μ M2)` has five distinct roots on `P^1`.
pub fn is_smooth_surface(f1: &QuadraticForm, f2: &QuadraticForm) -> bool {
    if f1.field() != f2.field() {
        return false;
    }
    let g = pencil_determinant(f1, f2);
    match g.degree() {
        Some(d) if d >= 4 => g.is_squarefree(),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois_field::make_field;

    #[test]
    fn index_layout() {
        let expected = [
            (0, 0), (0, 1), (0, 2), (0, 3), (0, 4), (1, 1), (1, 2), (1, 3),
            (1, 4), (2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (4, 4),
        ];
        for (k, &(i, j)) in expected.iter().enumerate() {
            assert_eq!(monomial_index(i, j), k);
            assert_eq!(monomial_index(j, i), k);
        }
    }

    #[test]
    fn gram_roundtrip() {
        let f = make_field(11, 1).unwrap();
        let q = QuadraticForm::from_ints(&f, &(1..=15).collect::<Vec<_>>()).unwrap();
        assert_eq!(QuadraticForm::from_gram(&q.gram()), q);
    }

    #[test]
    fn smoothness_examples() {
        let f = make_field(17, 1).unwrap();
        let s = QuadraticForm::diagonal(&f, &[1, 1, 1, 1, 1]);
        let t = QuadraticForm::diagonal(&f, &[0, 1, 2, 3, 4]);
        assert!(is_smooth_surface(&s, &t));
        assert!(!is_smooth_surface(&s, &s));
        let r = QuadraticForm::diagonal(&f, &[1, 1, 2, 3, 3]);
        assert!(!is_smooth_surface(&s, &r));
    }
}
