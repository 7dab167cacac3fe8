//! Affine charts and Plücker coordinates of `Gr(2,5)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::quadric::QuadraticForm;
use crate::galois_field::{embed, ExtField, FieldElement, FieldError};
use crate::polysolve::MPoly;

/// Pairs `(a, b)` with `a < b` in Plücker index order.
pub const PLUCKER_PAIRS: [(usize, usize); 10] = [
    (0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4),
];

pub fn plucker_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    assert!(a != b && b < 5);
    a * 4 - a * a.saturating_sub(1) / 2 + (b - a - 1)
}

/// The open set where the Plücker coordinate `p_ij` is nonzero. A point is
/// the row space of `[row1; row2]` with `row1 = e_i + Σ a_k e_{c_k}` and
/// `row2 = e_j + Σ b_k e_{c_k}`, `c_1 < c_2 < c_3` the remaining columns.
/// Chart variables are ordered `a1, a2, a3, b1, b2, b3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Chart {
    pub i: usize,
    pub j: usize,
}

impl Chart {
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i < j && j < 5, "chart needs 0 <= i < j <= 4");
        Chart { i, j }
    }

    /// All ten charts in index order.
    pub fn all() -> [Chart; 10] {
        PLUCKER_PAIRS.map(|(i, j)| Chart { i, j })
    }

    pub fn from_index(k: usize) -> Self {
        let (i, j) = PLUCKER_PAIRS[k];
        Chart { i, j }
    }

    pub fn index(&self) -> usize {
        plucker_index(self.i, self.j)
    }

    pub fn free_columns(&self) -> [usize; 3] {
        let mut out = [0; 3];
        let mut k = 0;
        for c in 0..5 {
            if c != self.i && c != self.j {
                out[k] = c;
                k += 1;
            }
        }
        out
    }

    /// The two spanning rows for the given chart coordinates.
    pub fn rows(&self, coords: &[FieldElement]) -> [Vec<FieldElement>; 2] {
        assert_eq!(coords.len(), 6);
        let field = coords[0].field();
        let mut r1 = vec![field.zero(); 5];
        let mut r2 = vec![field.zero(); 5];
        r1[self.i] = field.one();
        r2[self.j] = field.one();
        for (k, &c) in self.free_columns().iter().enumerate() {
            r1[c] = coords[k].clone();
            r2[c] = coords[3 + k].clone();
        }
        [r1, r2]
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.i, self.j)
    }
}

/// Ten Plücker coordinates in the order of [`PLUCKER_PAIRS`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PluckerVec(pub Vec<FieldElement>);

impl PluckerVec {
    pub fn coords(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn field(&self) -> &ExtField {
        self.0[0].field()
    }

    /// Antisymmetric accessor `p_ab = -p_ba`, `p_aa = 0`.
    pub fn get(&self, a: usize, b: usize) -> FieldElement {
        if a == b {
            self.field().zero()
        } else if a < b {
            self.0[plucker_index(a, b)].clone()
        } else {
            -&self.0[plucker_index(a, b)]
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    /// The five relations `p_ij p_kl - p_ik p_jl + p_il p_jk`, one for each
    /// four-element subset `{i<j<k<l}`.
    pub fn relations(&self) -> Vec<FieldElement> {
        let mut out = Vec::with_capacity(5);
        for skip in (0..5).rev() {
            let idx: Vec<usize> = (0..5).filter(|&x| x != skip).collect();
            let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
            let v = &(&(&self.get(i, j) * &self.get(k, l)) - &(&self.get(i, k) * &self.get(j, l)))
                + &(&self.get(i, l) * &self.get(j, k));
            out.push(v);
        }
        out
    }

    pub fn satisfies_relations(&self) -> bool {
        !self.is_zero() && self.relations().iter().all(|r| r.is_zero())
    }

    /// Scaled so that the first nonzero coordinate is 1.
    pub fn normalized(&self) -> Self {
        let lead = self
            .0
            .iter()
            .find(|x| !x.is_zero())
            .expect("nonzero Plücker vector")
            .inv()
            .unwrap();
        PluckerVec(self.0.iter().map(|x| x * &lead).collect())
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|x| !x.is_zero())
    }
}

/// A linear form on `P^9` in Plücker coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OneForm(pub Vec<FieldElement>);

impl OneForm {
    pub fn coordinate(field: &ExtField, k: usize) -> Self {
        let mut v = vec![field.zero(); 10];
        v[k] = field.one();
        OneForm(v)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn field(&self) -> &ExtField {
        self.0[0].field()
    }

    /// `s(P)` with the coefficients embedded into `P`'s field.
    pub fn eval(&self, p: &PluckerVec) -> Result<FieldElement, FieldError> {
        let target = p.field().clone();
        let mut acc = target.zero();
        for (s, x) in self.0.iter().zip(&p.0) {
            if s.is_zero() {
                continue;
            }
            acc = acc.checked_add(&embed(s, &target)?.checked_mul(x)?)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        OneForm(self.0.iter().map(|x| x * c).collect())
    }
}

/// The ten `2x2` minors of the chart's row matrix.
pub fn plucker_of(chart: Chart, coords: &[FieldElement]) -> PluckerVec {
    let [r1, r2] = chart.rows(coords);
    PluckerVec(
        PLUCKER_PAIRS
            .iter()
            .map(|&(a, b)| &(&r1[a] * &r2[b]) - &(&r1[b] * &r2[a]))
            .collect(),
    )
}

/// Chart coordinates of the line with Plücker vector `p`, if it lies in the
/// chart.
pub fn coords_from_plucker(chart: Chart, p: &PluckerVec) -> Option<Vec<FieldElement>> {
    let (i, j) = (chart.i, chart.j);
    let pij = p.get(i, j);
    let inv = pij.inv().ok()?;
    let cols = chart.free_columns();
    let mut out = Vec::with_capacity(6);
    for &c in &cols {
        out.push(&p.get(c, j) * &inv);
    }
    for &c in &cols {
        out.push(&p.get(i, c) * &inv);
    }
    Some(out)
}

fn row_polys(chart: Chart, field: &ExtField) -> [Vec<MPoly>; 2] {
    let zero = MPoly::zero(field, 6);
    let one = MPoly::one(field, 6);
    let mut r1 = vec![zero.clone(); 5];
    let mut r2 = vec![zero; 5];
    r1[chart.i] = one.clone();
    r2[chart.j] = one;
    for (k, &c) in chart.free_columns().iter().enumerate() {
        r1[c] = MPoly::var(field, 6, k);
        r2[c] = MPoly::var(field, 6, 3 + k);
    }
    [r1, r2]
}

/// Coefficients `(c0, c1, c2)` of `s², st, t²` in `Q(s·row1 + t·row2)`.
pub fn restrict_quadric(q: &QuadraticForm, chart: Chart) -> [MPoly; 3] {
    let field = q.field();
    let [r1, r2] = row_polys(chart, field);
    let mut out = [
        MPoly::zero(field, 6),
        MPoly::zero(field, 6),
        MPoly::zero(field, 6),
    ];
    for i in 0..5 {
        for j in i..5 {
            let c = q.coeff(i, j);
            if c.is_zero() {
                continue;
            }
            out[0] = out[0].add(&r1[i].mul(&r1[j]).scale(c));
            out[1] = out[1].add(&r1[i].mul(&r2[j]).add(&r2[i].mul(&r1[j])).scale(c));
            out[2] = out[2].add(&r2[i].mul(&r2[j]).scale(c));
        }
    }
    out
}

/// The six chart equations of the lines on `Z(f1, f2)`.
pub fn line_system(f1: &QuadraticForm, f2: &QuadraticForm, chart: Chart) -> Vec<MPoly> {
    let mut v = restrict_quadric(f1, chart).to_vec();
    v.extend(restrict_quadric(f2, chart));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois_field::make_field;
    use crate::geometry::quadric::monomial_index;

    fn vars(f: &ExtField) -> Vec<MPoly> {
        (0..6).map(|k| MPoly::var(f, 6, k)).collect()
    }

    #[test]
    fn restrict_examples() {
        let f = make_field(17, 1).unwrap();
        let v = vars(&f);
        let (a1, a2, a3, b1, b2, b3) = (&v[0], &v[1], &v[2], &v[3], &v[4], &v[5]);
        let mut c = vec![0i64; 15];
        c[monomial_index(0, 3)] = 1;
        c[monomial_index(2, 4)] = -1;
        let q = QuadraticForm::from_ints(&f, &c).unwrap();
        let [c0, c1, c2] = restrict_quadric(&q, Chart::new(0, 1));
        assert_eq!(c0, a2.sub(&a1.mul(a3)));
        assert_eq!(c1, b2.sub(&a1.mul(b3)).sub(&a3.mul(b1)));
        assert_eq!(c2, b1.mul(b3).scale(&f.from_int(-1)));

        let q = QuadraticForm::diagonal(&f, &[0, 0, 1, 0, 0]);
        let [c0, c1, c2] = restrict_quadric(&q, Chart::new(0, 1));
        assert_eq!(c0, a1.mul(a1));
        assert_eq!(c1, a1.mul(b1).scale(&f.from_int(2)));
        assert_eq!(c2, b1.mul(b1));

        let q = QuadraticForm::diagonal(&f, &[1, 0, 0, 0, 0]);
        let [c0, c1, c2] = restrict_quadric(&q, Chart::new(0, 1));
        assert_eq!(c0, MPoly::one(&f, 6));
        assert!(c1.is_zero() && c2.is_zero());
    }

    #[test]
    fn plucker_examples() {
        let f = make_field(17, 1).unwrap();
        let zeros = vec![f.zero(); 6];
        let p = plucker_of(Chart::new(0, 1), &zeros);
        assert_eq!(p.0[0], f.one());
        assert!(p.0[1..].iter().all(|x| x.is_zero()));

        let c: Vec<FieldElement> = [2, 3, 5, 7, 11, 13].iter().map(|&x| f.from_int(x)).collect();
        let p = plucker_of(Chart::new(0, 1), &c);
        let (a1, a2, a3, b1, b2, b3) = (2, 3, 5, 7, 11, 13);
        let expect = [
            1, b1, b2, b3, -a1, -a2, -a3,
            a1 * b2 - a2 * b1, a1 * b3 - a3 * b1, a2 * b3 - a3 * b2,
        ];
        for (x, e) in p.0.iter().zip(expect) {
            assert_eq!(*x, f.from_int(e));
        }
        assert!(p.satisfies_relations());
        for chart in Chart::all() {
            let q = plucker_of(chart, &c);
            assert_eq!(q.0[chart.index()], f.one());
            assert!(q.satisfies_relations());
            assert_eq!(coords_from_plucker(chart, &q).unwrap(), c);
        }
    }

    #[test]
    fn chart_bookkeeping() {
        assert_eq!(Chart::all().len(), 10);
        for (k, ch) in Chart::all().iter().enumerate() {
            assert_eq!(ch.index(), k);
            assert_eq!(Chart::from_index(k), *ch);
        }
        assert_eq!(Chart::new(1, 3).free_columns(), [0, 2, 4]);
    }
}
