//! Brute-force line search: every line meets the hyperplane `x4 = 0`, so the
//! lines of residue degree dividing `d` are found by running through the
//! points of the surface on that hyperplane over `F_{q^d}` and solving for
//! the directions of lines through each point.

use std::collections::{BTreeMap, HashMap};

use super::spec::SurfaceSpec;
use super::PipelineError;
use crate::galois_field::{make_field, ExtField, FieldElement, UPoly};
use crate::geometry::{is_smooth_surface, CanonKey, GeometryError, Line, PluckerVec, QuadraticForm, PLUCKER_PAIRS};
use crate::linalg;

/// Largest `|k|^(2·dmax)` the oracle accepts.
pub const ORACLE_LIMIT: u128 = 10_000_000;

struct Ctx {
    field: ExtField,
    f1: QuadraticForm,
    f2: QuadraticForm,
    sqrt: HashMap<FieldElement, FieldElement>,
}

impl Ctx {
    /// Roots of `a c² + b c + e` in the field; `None` if the polynomial is 0.
    fn quadratic_roots(&self, a: &FieldElement, b: &FieldElement, e: &FieldElement) -> Option<Vec<FieldElement>> {
        if a.is_zero() {
            if b.is_zero() {
                return if e.is_zero() { None } else { Some(Vec::new()) };
            }
            return Some(vec![-&(e / b)]);
        }
        let disc = &(b * b) - &(&(a * e) * &self.field.from_int(4));
        let Some(r) = self.sqrt.get(&disc) else {
            return Some(Vec::new());
        };
        let inv = (a * &self.field.from_int(2)).inv().expect("nonzero");
        let mut out = vec![&(&-b + r) * &inv];
        if !r.is_zero() {
            out.push(&(&-b - r) * &inv);
        }
        Some(out)
    }

    /// `Q(x + c e_k)` as a polynomial `A c² + B c + C` in `c`.
    fn coefficients(q: &QuadraticForm, x: &[FieldElement], k: usize, field: &ExtField) -> [FieldElement; 3] {
        let mut ek = vec![field.zero(); 5];
        ek[k] = field.one();
        [
            q.eval(&ek).unwrap(),
            q.polar(x, &ek).unwrap(),
            q.eval(x).unwrap(),
        ]
    }

    /// Points with `x4 = 0` on the surface, one representative each.
    fn points(&self) -> Result<Vec<Vec<FieldElement>>, PipelineError> {
        let f = &self.field;
        let elems: Vec<FieldElement> = f.elements().collect();
        let mut out = Vec::new();
        // stratum: x_lead = 1, free coordinates after it, last free one solved
        for lead in 0..4 {
            let last = 3;
            let free_before: Vec<usize> = ((lead + 1)..last).collect();
            let mut idx = vec![0usize; free_before.len()];
            loop {
                let mut x = vec![f.zero(); 5];
                x[lead] = f.one();
                for (slot, &col) in free_before.iter().enumerate() {
                    x[col] = elems[idx[slot]].clone();
                }
                if lead == last {
                    if self.f1.eval(&x)?.is_zero() && self.f2.eval(&x)?.is_zero() {
                        out.push(x.clone());
                    }
                } else {
                    let [a, b, e] = Self::coefficients(&self.f1, &x, last, f);
                    match self.quadratic_roots(&a, &b, &e) {
                        Some(roots) => {
                            for c in roots {
                                let mut y = x.clone();
                                y[last] = c;
                                if self.f2.eval(&y)?.is_zero() {
                                    out.push(y);
                                }
                            }
                        }
                        None => {
                            for c in &elems {
                                let mut y = x.clone();
                                y[last] = c.clone();
                                if self.f2.eval(&y)?.is_zero() {
                                    out.push(y);
                                }
                            }
                        }
                    }
                }
                // advance the odometer
                let mut pos = 0;
                loop {
                    if pos == idx.len() {
                        break;
                    }
                    idx[pos] += 1;
                    if idx[pos] < elems.len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == idx.len() {
                    break;
                }
            }
        }
        Ok(out)
    }

    /// Directions `v` with `span(P, v)` on the surface.
    fn directions(&self, pt: &[FieldElement]) -> Result<Vec<Vec<FieldElement>>, PipelineError> {
        let f = &self.field;
        let grad = |q: &QuadraticForm| -> Vec<FieldElement> {
            (0..5)
                .map(|k| {
                    let mut ek = vec![f.zero(); 5];
                    ek[k] = f.one();
                    q.polar(pt, &ek).unwrap()
                })
                .collect()
        };
        let m = vec![grad(&self.f1), grad(&self.f2)];
        let ker = linalg::nullspace(&m, 5, f);
        if ker.len() != 3 {
            return Err(GeometryError::DegenerateSurface("singular point on the surface".into()).into());
        }
        let (w1, w2) = pick_complement(pt, &ker);
        let binary = |q: &QuadraticForm| -> [FieldElement; 3] {
            // q(α w1 + β w2) = q(w1) α² + B(w1,w2) αβ + q(w2) β²
            [
                q.eval(&w1).unwrap(),
                q.polar(&w1, &w2).unwrap(),
                q.eval(&w2).unwrap(),
            ]
        };
        let g1 = binary(&self.f1);
        let g2 = binary(&self.f2);
        let mut out = Vec::new();
        if g1[0].is_zero() && g2[0].is_zero() {
            out.push(w1.clone());
        }
        // roots with β = 1: g(x) = a x² + b x + c
        let u1 = UPoly::new(f, vec![g1[2].clone(), g1[1].clone(), g1[0].clone()]);
        let u2 = UPoly::new(f, vec![g2[2].clone(), g2[1].clone(), g2[0].clone()]);
        let g = u1.gcd(&u2);
        if g.is_zero() {
            return Err(GeometryError::DegenerateSurface("a cone of lines through a point".into()).into());
        }
        let roots: Vec<FieldElement> = match g.degree() {
            Some(0) => Vec::new(),
            Some(1) => vec![-&g.coeff(0)],
            _ => {
                let (a, b, c) = (g.coeff(2), g.coeff(1), g.coeff(0));
                self.quadratic_roots(&a, &b, &c).unwrap_or_default()
            }
        };
        for x in roots {
            out.push(w1.iter().zip(&w2).map(|(a, b)| &(&x * a) + b).collect());
        }
        Ok(out)
    }
}

fn pick_complement(pt: &[FieldElement], ker: &[Vec<FieldElement>]) -> (Vec<FieldElement>, Vec<FieldElement>) {
    for a in 0..ker.len() {
        for b in (a + 1)..ker.len() {
            let m = vec![pt.to_vec(), ker[a].clone(), ker[b].clone()];
            if linalg::rank(&m) == 3 {
                return (ker[a].clone(), ker[b].clone());
            }
        }
    }
    unreachable!("the kernel contains the point and has dimension 3")
}

fn plucker_of_rows(r1: &[FieldElement], r2: &[FieldElement]) -> PluckerVec {
    PluckerVec(
        PLUCKER_PAIRS
            .iter()
            .map(|&(a, b)| &(&r1[a] * &r2[b]) - &(&r1[b] * &r2[a]))
            .collect(),
    )
}

/// Lines of residue degree at most `dmax` over the spec's field, found by
/// exhaustive search.
pub fn oracle_lines(spec: &SurfaceSpec, dmax: usize) -> Result<Vec<Line>, PipelineError> {
    let base = spec.field();
    let limit_ok = base
        .order()
        .and_then(|q| q.checked_pow(2 * dmax as u32))
        .map(|v| v <= ORACLE_LIMIT)
        .unwrap_or(false);
    if !limit_ok || dmax == 0 {
        return Err(PipelineError::TooLarge {
            field: base.to_string(),
            dmax,
        });
    }
    if !is_smooth_surface(&spec.f1, &spec.f2) {
        return Err(PipelineError::NotSmooth);
    }
    let mut found: BTreeMap<CanonKey, Line> = BTreeMap::new();
    for d in 1..=dmax {
        let field = make_field(base.p(), base.degree() * d)?;
        let f1 = spec.f1.embed_into(&field)?;
        let f2 = spec.f2.embed_into(&field)?;
        let sqrt: HashMap<FieldElement, FieldElement> = field.elements().map(|x| (x.square(), x)).collect();
        let ctx = Ctx {
            field,
            f1,
            f2,
            sqrt,
        };
        for pt in ctx.points()? {
            for v in ctx.directions(&pt)? {
                let line = Line::from_plucker(&plucker_of_rows(&pt, &v), base)?;
                if line.degree <= dmax {
                    found.entry(line.canon_key.clone()).or_insert(line);
                }
            }
        }
    }
    Ok(found.into_values().collect())
}
