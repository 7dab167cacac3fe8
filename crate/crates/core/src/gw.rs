//! The Grothendieck–Witt group of a finite field of odd characteristic.
//!
//! A class is determined by its rank and the square class of its
//! discriminant, taken here as the plain product of diagonal entries.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::galois_field::{embed, trace_to, ExtField, FieldElement, FieldError, FieldSpec};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GwError {
    #[error("diagonal entries must be nonzero")]
    ZeroEntry,
    #[error("forms over different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },
    #[error("symmetric matrix is degenerate")]
    DegenerateForm,
    #[error("extension degree ratio {ratio} is even")]
    EvenRatio { ratio: usize },
    #[error("{from} and {to} are not nested")]
    Unrelated { from: String, to: String },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A nonzero element up to squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareClass {
    pub representative: FieldElement,
    pub is_square: bool,
}

impl SquareClass {
    pub fn new(representative: FieldElement) -> Result<Self, GwError> {
        let is_square = representative.is_square().map_err(|_| GwError::ZeroEntry)?;
        Ok(SquareClass {
            representative,
            is_square,
        })
    }

    pub fn field(&self) -> &ExtField {
        self.representative.field()
    }
}

impl Serialize for SquareClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SquareClass", 2)?;
        st.serialize_field("representative", &self.representative.to_i64_vec())?;
        st.serialize_field("is_square", &self.is_square)?;
        st.end()
    }
}

/// An element of `GW(F)`.
#[derive(Clone, Debug)]
pub struct GWForm {
    field: ExtField,
    rank: usize,
    disc_nonsquare: bool,
    diag_history: Option<Vec<FieldElement>>,
}

impl PartialEq for GWForm {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.rank == other.rank && self.disc_nonsquare == other.disc_nonsquare
    }
}

impl Eq for GWForm {}

#[derive(Serialize, Deserialize)]
struct GWFormJson {
    rank: usize,
    disc_is_square: bool,
    field: FieldSpec,
}

impl Serialize for GWForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GWFormJson {
            rank: self.rank,
            disc_is_square: !self.disc_nonsquare,
            field: self.field.spec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GWForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = GWFormJson::deserialize(d)?;
        let field = ExtField::from_spec(j.field).map_err(serde::de::Error::custom)?;
        Ok(GWForm {
            field,
            rank: j.rank,
            disc_nonsquare: !j.disc_is_square,
            diag_history: None,
        })
    }
}

impl fmt::Display for GWForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rank {}, disc {} over {}",
            self.rank,
            if self.disc_nonsquare { "nonsquare" } else { "square" },
            self.field
        )
    }
}

fn mismatch(a: &ExtField, b: &ExtField) -> GwError {
    GwError::FieldMismatch {
        left: a.to_string(),
        right: b.to_string(),
    }
}

impl GWForm {
    pub fn zero(field: &ExtField) -> Self {
        GWForm {
            field: field.clone(),
            rank: 0,
            disc_nonsquare: false,
            diag_history: Some(Vec::new()),
        }
    }

    /// Form built from its canonical invariants.
    pub fn from_invariants(field: &ExtField, rank: usize, disc_is_square: bool) -> Self {
        GWForm {
            field: field.clone(),
            rank,
            disc_nonsquare: !disc_is_square,
            diag_history: None,
        }
    }

    /// `⟨a_1⟩ + … + ⟨a_n⟩`.
    pub fn from_diagonal(field: &ExtField, entries: &[FieldElement]) -> Result<Self, GwError> {
        let mut nonsquare = false;
        for e in entries {
            if e.field() != field {
                return Err(mismatch(field, e.field()));
            }
            let sq = e.is_square().map_err(|_| GwError::ZeroEntry)?;
            nonsquare ^= !sq;
        }
        Ok(GWForm {
            field: field.clone(),
            rank: entries.len(),
            disc_nonsquare: nonsquare,
            diag_history: Some(entries.to_vec()),
        })
    }

    /// `⟨a⟩`.
    pub fn symbol(a: &FieldElement) -> Result<Self, GwError> {
        Self::from_diagonal(a.field(), std::slice::from_ref(a))
    }

    /// `H = ⟨1⟩ + ⟨-1⟩`.
    pub fn hyperbolic(field: &ExtField) -> Self {
        Self::from_diagonal(field, &[field.one(), -field.one()]).expect("nonzero entries")
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn disc_is_square(&self) -> bool {
        !self.disc_nonsquare
    }

    pub fn diag_history(&self) -> Option<&[FieldElement]> {
        self.diag_history.as_deref()
    }

    pub fn add(&self, other: &Self) -> Result<Self, GwError> {
        if self.field != other.field {
            return Err(mismatch(&self.field, &other.field));
        }
        let diag_history = match (&self.diag_history, &other.diag_history) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        Ok(GWForm {
            field: self.field.clone(),
            rank: self.rank + other.rank,
            disc_nonsquare: self.disc_nonsquare ^ other.disc_nonsquare,
            diag_history,
        })
    }

    /// `n · self`.
    pub fn times(&self, n: usize) -> Self {
        let mut acc = GWForm::zero(&self.field);
        for _ in 0..n {
            acc = acc.add(self).expect("same field");
        }
        acc
    }

    /// `self = n · H`.
    pub fn is_multiple_of_h(&self, n: usize) -> bool {
        *self == GWForm::hyperbolic(&self.field).times(n)
    }

    /// Image under extension of scalars to `target` or its inverse, both
    /// isomorphisms when the degree ratio is odd.
    pub fn transport(&self, target: &ExtField) -> Result<Self, GwError> {
        let (m, n) = (self.field.degree(), target.degree());
        if self.field.p() != target.p() || (n % m != 0 && m % n != 0) {
            return Err(GwError::Unrelated {
                from: self.field.to_string(),
                to: target.to_string(),
            });
        }
        let ratio = if n >= m { n / m } else { m / n };
        if ratio % 2 == 0 {
            return Err(GwError::EvenRatio { ratio });
        }
        let diag_history = if n % m == 0 {
            self.diag_history
                .as_ref()
                .map(|h| h.iter().map(|e| embed(e, target)).collect::<Result<Vec<_>, _>>())
                .transpose()?
        } else {
            None
        };
        Ok(GWForm {
            field: target.clone(),
            rank: self.rank,
            disc_nonsquare: self.disc_nonsquare,
            diag_history,
        })
    }
}

/// Checks the defining relations of the presentation of `GW` by symbols:
/// `⟨uv²⟩ = ⟨u⟩`, `⟨u⟩ + ⟨-u⟩ = H`, and
/// `⟨u⟩ + ⟨v⟩ = ⟨u+v⟩ + ⟨(u+v)uv⟩` when `u + v ≠ 0`.
pub fn relations_check(u: &FieldElement, v: &FieldElement) -> Result<bool, GwError> {
    if u.field() != v.field() {
        return Err(mismatch(u.field(), v.field()));
    }
    if u.is_zero() || v.is_zero() {
        return Err(GwError::ZeroEntry);
    }
    let field = u.field();
    let su = GWForm::symbol(u)?;
    let r1 = GWForm::symbol(&(u * &v.square()))? == su;
    let r2 = su.add(&GWForm::symbol(&-u)?)? == GWForm::hyperbolic(field);
    let s = u + v;
    let r3 = if s.is_zero() {
        true
    } else {
        let lhs = su.add(&GWForm::symbol(v)?)?;
        let rhs = GWForm::symbol(&s)?.add(&GWForm::symbol(&(&(&s * u) * v))?)?;
        lhs == rhs
    };
    Ok(r1 && r2 && r3)
}

/// Diagonal entries of a diagonal form congruent to the symmetric matrix `g`.
pub fn diagonalize_gram(g: &Matrix) -> Result<Vec<FieldElement>, GwError> {
    let n = g.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut a = g.clone();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][i].is_zero());
        let pivot = match pivot {
            Some(i) => i,
            None => {
                let (i, j) = (k..n)
                    .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero())
                    .ok_or(GwError::DegenerateForm)?;
                // e_i <- e_i + e_j, making the (i,i) entry 2 a_ij
                for c in 0..n {
                    let t = a[j][c].clone();
                    a[i][c] += &t;
                }
                for r in 0..n {
                    let t = a[r][j].clone();
                    a[r][i] += &t;
                }
                i
            }
        };
        a.swap(k, pivot);
        for row in a.iter_mut() {
            row.swap(k, pivot);
        }
        let d = a[k][k].clone();
        let inv = d.inv().expect("nonzero pivot");
        for r in (k + 1)..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] * &inv;
            for c in k..n {
                let t = &f * &a[k][c];
                a[r][c] -= &t;
            }
            for rr in k..n {
                let t = &f * &a[rr][k];
                a[rr][r] -= &t;
            }
        }
        out.push(d);
    }
    Ok(out)
}

/// Gram matrix `Tr(a t^{i+j})` of the trace form of `⟨a⟩` on the power basis
/// of the generator `t` of `a`'s field.
pub fn trace_gram(a: &FieldElement, base: &ExtField) -> Result<Matrix, GwError> {
    let big = a.field();
    if !big.contains_subfield(base) {
        return Err(GwError::Field(FieldError::NoEmbedding {
            from: base.to_string(),
            to: big.to_string(),
        }));
    }
    let d = big.degree() / base.degree();
    let t = if d == 1 { big.one() } else { big.generator() };
    let mut traces = Vec::with_capacity(2 * d - 1);
    let mut cur = a.clone();
    for _ in 0..(2 * d - 1) {
        traces.push(trace_to(&cur, base)?);
        cur = &cur * &t;
    }
    Ok((0..d)
        .map(|i| (0..d).map(|j| traces[i + j].clone()).collect())
        .collect())
}

/// `Tr_{F/base} ⟨a⟩` in `GW(base)`.
pub fn trace_form(a: &FieldElement, base: &ExtField) -> Result<GWForm, GwError> {
    if a.is_zero() {
        return Err(GwError::ZeroEntry);
    }
    let g = trace_gram(a, base)?;
    let diag = diagonalize_gram(&g)?;
    GWForm::from_diagonal(base, &diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois_field::make_field;
    use crate::linalg::determinant;

    #[test]
    fn diagonal_examples() {
        let f = make_field(17, 1).unwrap();
        let h = GWForm::from_diagonal(&f, &[f.one(), f.from_int(-1)]).unwrap();
        assert_eq!((h.rank(), h.disc_is_square()), (2, true));
        let two = GWForm::symbol(&f.from_int(2)).unwrap();
        assert!(two.disc_is_square());
        let threes = GWForm::from_diagonal(&f, &[f.from_int(3), f.from_int(3)]).unwrap();
        assert!(threes.disc_is_square());
        assert_eq!(GWForm::from_diagonal(&f, &[f.zero()]), Err(GwError::ZeroEntry));
    }

    #[test]
    fn hyperbolic_examples() {
        for (p, sq) in [(3, false), (17, true), (5, true)] {
            let f = make_field(p, 1).unwrap();
            let h = GWForm::hyperbolic(&f);
            assert_eq!((h.rank(), h.disc_is_square()), (2, sq), "p = {p}");
        }
        let f = make_field(7, 1).unwrap();
        let h = GWForm::hyperbolic(&f);
        let eight = h.times(8);
        assert_eq!((eight.rank(), eight.disc_is_square()), (16, true));
        assert_eq!(h.add(&GWForm::zero(&f)).unwrap(), h);
    }

    #[test]
    fn relation_examples() {
        let f = make_field(17, 1).unwrap();
        assert!(relations_check(&f.one(), &f.one()).unwrap());
        assert!(relations_check(&f.from_int(3), &f.from_int(5)).unwrap());
        assert!(relations_check(&f.from_int(4), &f.from_int(-4)).unwrap());
    }

    #[test]
    fn diagonalize_examples() {
        let f = make_field(3, 1).unwrap();
        let m = |rows: &[[i64; 2]]| -> Matrix {
            rows.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect()
        };
        let d = diagonalize_gram(&m(&[[2, 0], [0, 1]])).unwrap();
        assert_eq!(d, vec![f.from_int(2), f.one()]);
        let g = m(&[[0, 1], [1, 0]]);
        let d = diagonalize_gram(&g).unwrap();
        let prod = &d[0] * &d[1];
        assert_eq!((&prod * &determinant(&g)).is_square(), Ok(true));
        assert!(diagonalize_gram(&m(&[[1, 1], [1, 1]])).is_err());
    }

    #[test]
    fn trace_form_examples() {
        let f17 = make_field(17, 1).unwrap();
        let t = trace_form(&f17.from_int(5), &f17).unwrap();
        assert_eq!(t, GWForm::symbol(&f17.from_int(5)).unwrap());

        let f3 = make_field(3, 1).unwrap();
        let f9 = make_field(3, 2).unwrap();
        let g = trace_gram(&f9.one(), &f3).unwrap();
        assert_eq!(g, vec![vec![f3.from_int(2), f3.zero()], vec![f3.zero(), f3.one()]]);
        assert_eq!(trace_form(&f9.one(), &f3).unwrap(), GWForm::hyperbolic(&f3));
        let tg = f9.generator();
        let g = trace_gram(&tg, &f3).unwrap();
        assert_eq!(g, vec![vec![f3.zero(), f3.one()], vec![f3.one(), f3.zero()]]);
        assert_eq!(trace_form(&tg, &f3).unwrap(), GWForm::hyperbolic(&f3));
    }

    #[test]
    fn transport_examples() {
        let f3 = make_field(3, 1).unwrap();
        let f27 = make_field(3, 3).unwrap();
        let f9 = make_field(3, 2).unwrap();
        let h3 = GWForm::hyperbolic(&f3);
        assert_eq!(h3.transport(&f27).unwrap(), GWForm::hyperbolic(&f27));
        assert_eq!(h3.transport(&f9), Err(GwError::EvenRatio { ratio: 2 }));
        let big = GWForm::from_invariants(&f27, 16, true);
        assert_eq!(big.transport(&f3).unwrap(), GWForm::from_invariants(&f3, 16, true));
        assert_eq!(big.transport(&f3).unwrap().transport(&f27).unwrap(), big);
    }
}
