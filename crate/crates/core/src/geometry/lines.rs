use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::grassmannian::{coords_from_plucker, line_system, plucker_of, Chart, OneForm, PluckerVec};
use super::quadric::QuadraticForm;
use super::GeometryError;
use crate::galois_field::{descend, make_field, ExtField, FieldElement};
use crate::linalg;
use crate::polysolve::{shape_solve, SolveError};

/// Expected weighted number of lines on a smooth quartic del Pezzo surface.
pub const LINE_COUNT: usize = 16;

const RANDOM_FORM_ATTEMPTS: usize = 10_000;

/// Galois-orbit identity of a line: residue degree followed by the least
/// serialization among the Frobenius conjugates of its normalized Plücker
/// vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonKey(pub Vec<u8>);

impl fmt::Display for CanonKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// A closed point of `Gr(2,5)` over the base field `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub degree: usize,
    /// Least chart containing the line; `coords` are taken there.
    pub chart: Chart,
    pub coords: Vec<FieldElement>,
    /// Normalized Plücker vector over the residue field.
    pub plucker: PluckerVec,
    pub canon_key: CanonKey,
    base: ExtField,
}

fn serialize(p: &PluckerVec) -> Vec<u8> {
    let mut out = Vec::new();
    for x in p.coords() {
        for &c in x.coeffs() {
            out.extend_from_slice(&(c as u32).to_be_bytes());
        }
    }
    out
}

fn conjugate(p: &PluckerVec, base: &ExtField) -> PluckerVec {
    PluckerVec(p.coords().iter().map(|x| x.pow_p_iter(base.degree())).collect())
}

impl Line {
    /// Builds the closed point through a Plücker vector over any extension
    /// of `base`. The representative stored is the conjugate with the least
    /// serialization, so equal orbits give equal `Line`s.
    pub fn from_plucker(p: &PluckerVec, base: &ExtField) -> Result<Line, GeometryError> {
        if !p.satisfies_relations() {
            return Err(GeometryError::InvalidPlucker);
        }
        let big = p.field().clone();
        if !big.contains_subfield(base) {
            return Err(GeometryError::Field(crate::galois_field::FieldError::NoEmbedding {
                from: base.to_string(),
                to: big.to_string(),
            }));
        }
        let p = p.normalized();
        let ratio = big.degree() / base.degree();
        let degree = (1..=ratio)
            .filter(|e| ratio % e == 0)
            .find(|&e| {
                p.coords()
                    .iter()
                    .all(|x| x.pow_p_iter(base.degree() * e) == *x)
            })
            .expect("orbit closes at the full degree");
        let residue = make_field(base.p(), base.degree() * degree)?;
        let mut cur = PluckerVec(
            p.coords()
                .iter()
                .map(|x| descend(x, &residue))
                .collect::<Result<_, _>>()?,
        );
        let mut best = (serialize(&cur), cur.clone());
        for _ in 1..degree {
            cur = conjugate(&cur, base);
            let s = serialize(&cur);
            if s < best.0 {
                best = (s, cur.clone());
            }
        }
        let (ser, plucker) = best;
        let chart = Chart::from_index(plucker.first_nonzero().expect("nonzero"));
        let coords = coords_from_plucker(chart, &plucker).expect("preferred chart contains the line");
        let mut key = (degree as u32).to_be_bytes().to_vec();
        key.extend(ser);
        Ok(Line {
            degree,
            chart,
            coords,
            plucker,
            canon_key: CanonKey(key),
            base: base.clone(),
        })
    }

    pub fn base(&self) -> &ExtField {
        &self.base
    }

    /// `κ(L)`, the canonical field of degree `degree` over the base.
    pub fn residue_field(&self) -> &ExtField {
        self.plucker.field()
    }

    /// Charts containing the line.
    pub fn charts(&self) -> Vec<Chart> {
        Chart::all()
            .into_iter()
            .filter(|c| !self.plucker.coords()[c.index()].is_zero())
            .collect()
    }

    pub fn coords_in(&self, chart: Chart) -> Result<Vec<FieldElement>, GeometryError> {
        coords_from_plucker(chart, &self.plucker).ok_or(GeometryError::NotInChart { chart })
    }

    /// The `k`-th Frobenius conjugate over the base, as a Plücker vector.
    pub fn conjugate_plucker(&self, k: usize) -> PluckerVec {
        let mut cur = self.plucker.clone();
        for _ in 0..k {
            cur = conjugate(&cur, &self.base);
        }
        cur
    }

    /// The spanning 2-plane in `K^5` lies on the quadric.
    pub fn lies_on(&self, q: &QuadraticForm) -> Result<bool, GeometryError> {
        let [r1, r2] = self.chart.rows(&self.coords);
        let sum: Vec<FieldElement> = r1.iter().zip(&r2).map(|(a, b)| a + b).collect();
        Ok(q.eval(&r1)?.is_zero() && q.eval(&r2)?.is_zero() && q.eval(&sum)?.is_zero())
    }
}

fn chart_seed(seed: u64, chart: Chart) -> u64 {
    seed.wrapping_add((chart.index() as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn degenerate(reason: impl Into<String>) -> GeometryError {
    GeometryError::DegenerateSurface(reason.into())
}

/// Lines of one chart, as closed points over the field of `f1`.
pub fn lines_in_chart(
    f1: &QuadraticForm,
    f2: &QuadraticForm,
    chart: Chart,
    rng_seed: u64,
) -> Result<Vec<Line>, GeometryError> {
    let base = f1.field();
    let system = line_system(f1, f2, chart);
    let sols = shape_solve(&system, chart_seed(rng_seed, chart)).map_err(|e| match e {
        SolveError::NotRadical => degenerate(format!("non-reduced line scheme in chart {chart}")),
        SolveError::NotZeroDimensional => degenerate(format!("infinitely many lines in chart {chart}")),
        SolveError::ShapeFailure => degenerate(format!("no separating form in chart {chart}")),
        other => degenerate(other.to_string()),
    })?;
    sols.iter()
        .map(|s| Line::from_plucker(&plucker_of(chart, &s.coords), base))
        .collect()
}

/// All lines on `Z(f1, f2)` as closed points over the coefficient field,
/// sorted by canonical key. Fails with `DegenerateSurface` unless the line
/// scheme is reduced of total degree 16 with an invertible Jacobian at every
/// line.
pub fn find_lines(f1: &QuadraticForm, f2: &QuadraticForm, rng_seed: u64) -> Result<Vec<Line>, GeometryError> {
    if f1.field() != f2.field() {
        return Err(GeometryError::Field(crate::galois_field::FieldError::FieldMismatch {
            left: f1.field().to_string(),
            right: f2.field().to_string(),
        }));
    }
    let per_chart: Vec<Result<Vec<Line>, GeometryError>> = Chart::all()
        .par_iter()
        .map(|&chart| lines_in_chart(f1, f2, chart, rng_seed))
        .collect();
    let mut by_key: BTreeMap<CanonKey, Line> = BTreeMap::new();
    for r in per_chart {
        for line in r? {
            by_key.entry(line.canon_key.clone()).or_insert(line);
        }
    }
    let lines: Vec<Line> = by_key.into_values().collect();
    let total: usize = lines.iter().map(|l| l.degree).sum();
    if total != LINE_COUNT {
        return Err(degenerate(format!("found {total} lines counted with degree, expected {LINE_COUNT}")));
    }
    let checks: Vec<Result<FieldElement, GeometryError>> = lines
        .par_iter()
        .map(|l| jacobian_det(f1, f2, l.chart, l))
        .collect();
    for c in checks {
        match c {
            Ok(_) => {}
            Err(GeometryError::SingularZero) => return Err(degenerate("a line is not a simple zero")),
            Err(e) => return Err(e),
        }
    }
    Ok(lines)
}

/// Determinant of the `6x6` Jacobian of the chart equations at the line.
pub fn jacobian_det(
    f1: &QuadraticForm,
    f2: &QuadraticForm,
    chart: Chart,
    line: &Line,
) -> Result<FieldElement, GeometryError> {
    let coords = line.coords_in(chart)?;
    let system = line_system(f1, f2, chart);
    let jac: linalg::Matrix = system
        .iter()
        .map(|f| {
            (0..6)
                .map(|v| f.derivative(v).eval(&coords))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let det = linalg::determinant(&jac);
    if det.is_zero() {
        Err(GeometryError::SingularZero)
    } else {
        Ok(det)
    }
}

fn nondegenerate_on(s: &OneForm, lines: &[Line]) -> Result<bool, GeometryError> {
    for l in lines {
        if s.eval(&l.plucker)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A linear form on `P^9` vanishing at none of the lines: the coordinate
/// forms are tried in index order, then seeded random forms.
pub fn pick_one_form(lines: &[Line], base: &ExtField, rng_seed: u64) -> Result<OneForm, GeometryError> {
    for k in 0..10 {
        let s = OneForm::coordinate(base, k);
        if nondegenerate_on(&s, lines)? {
            return Ok(s);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    for _ in 0..RANDOM_FORM_ATTEMPTS {
        let s = OneForm((0..10).map(|_| base.random(&mut rng)).collect());
        if s.coeffs().iter().all(|c| c.is_zero()) {
            continue;
        }
        if nondegenerate_on(&s, lines)? {
            return Ok(s);
        }
    }
    Err(GeometryError::SearchExhausted)
}

/// `ŝ^9 · det J` computed in the given chart, where `ŝ` is `s` evaluated on
/// the chart's Plücker vector (so `p_I = 1`).
pub fn twisted_jacobian_class_in_chart(
    f1: &QuadraticForm,
    f2: &QuadraticForm,
    line: &Line,
    s: &OneForm,
    chart: Chart,
) -> Result<FieldElement, GeometryError> {
    let coords = line.coords_in(chart)?;
    let s_hat = s.eval(&plucker_of(chart, &coords))?;
    if s_hat.is_zero() {
        return Err(GeometryError::DegenerateOneForm);
    }
    let det = jacobian_det(f1, f2, chart, line)?;
    Ok(&s_hat.pow(9) * &det)
}

/// The twisted Jacobian element of a line, in its preferred chart. Only its
/// square class in `κ(L)` is meaningful.
pub fn twisted_jacobian_class(
    f1: &QuadraticForm,
    f2: &QuadraticForm,
    line: &Line,
    s: &OneForm,
) -> Result<FieldElement, GeometryError> {
    twisted_jacobian_class_in_chart(f1, f2, line, s, line.chart)
}
