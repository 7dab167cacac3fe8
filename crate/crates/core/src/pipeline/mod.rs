//! End-to-end enriched line counts.

mod oracle;
mod report;
mod spec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::galois_field::{make_field, ExtField, FieldError};
use crate::geometry::{
    find_lines, is_smooth_surface, pick_one_form, twisted_jacobian_class, GeometryError, Line, OneForm,
    QuadraticForm, NUM_COEFFS,
};
use crate::gw::{trace_form, GWForm, GwError, SquareClass};

pub use oracle::{oracle_lines, ORACLE_LIMIT};
pub use report::{line_json, CountReport, LineRecord, Seeds, REPORT_FORMAT};
pub use spec::{CoeffJson, SurfaceSpec, SurfaceSpecJson};

/// Fields with at most this many elements are replaced by an odd-degree
/// extension before choosing a one-form.
pub const SMALL_FIELD_BOUND: u128 = 16;

/// Draw limit for [`random_surface`].
pub const MAX_DRAWS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("not smooth")]
    NotSmooth,
    #[error("field has more than {SMALL_FIELD_BOUND} elements; no extension needed")]
    NotNeeded,
    #[error("oracle over {field} with dmax {dmax} exceeds the enumeration limit")]
    TooLarge { field: String, dmax: usize },
    #[error("no accepted surface after {0} draws")]
    RetriesExhausted(usize),
    #[error("line lists over unrelated fields: {0}")]
    MismatchedFields(String),
    #[error("one-form vanishes on a line")]
    DegenerateOneForm,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Gw(#[from] GwError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Least `m·q` with `m` odd and `p^(m q) > 16`.
pub fn qhat(p: u64, q: usize) -> Result<usize, PipelineError> {
    let size = |e: usize| (p as u128).checked_pow(e as u32).unwrap_or(u128::MAX);
    if size(q) > SMALL_FIELD_BOUND {
        return Err(PipelineError::NotNeeded);
    }
    let mut m = 1;
    while size(m * q) <= SMALL_FIELD_BOUND {
        m += 2;
    }
    Ok(m * q)
}

/// The field the count runs over, with the extension degree when it differs
/// from the base field.
pub fn working_field(base: &ExtField) -> Result<(ExtField, Option<usize>), PipelineError> {
    match qhat(base.p(), base.degree()) {
        Ok(qh) => Ok((make_field(base.p(), qh)?, Some(qh))),
        Err(PipelineError::NotNeeded) => Ok((base.clone(), None)),
        Err(e) => Err(e),
    }
}

/// Enriched count with the default one-form search.
pub fn enriched_count(spec: &SurfaceSpec, rng_seed: u64) -> Result<CountReport, PipelineError> {
    enriched_count_with(spec, rng_seed, None)
}

/// Enriched count; `one_form`, if given, must be defined over the working
/// field and vanish on no line.
pub fn enriched_count_with(
    spec: &SurfaceSpec,
    rng_seed: u64,
    one_form: Option<&OneForm>,
) -> Result<CountReport, PipelineError> {
    let base = spec.field();
    if !is_smooth_surface(&spec.f1, &spec.f2) {
        return Err(PipelineError::NotSmooth);
    }
    let (work, qhat_used) = working_field(base)?;
    let f1 = spec.f1.embed_into(&work)?;
    let f2 = spec.f2.embed_into(&work)?;
    let lines = find_lines(&f1, &f2, rng_seed)?;
    let s = match one_form {
        Some(s) => {
            if s.field() != &work {
                return Err(PipelineError::MismatchedFields(format!(
                    "one-form over {}, working field {}",
                    s.field(),
                    work
                )));
            }
            for l in &lines {
                if s.eval(&l.plucker).map_err(GeometryError::from)?.is_zero() {
                    return Err(PipelineError::DegenerateOneForm);
                }
            }
            s.clone()
        }
        None => pick_one_form(&lines, &work, rng_seed)?,
    };
    let records = lines
        .par_iter()
        .map(|l| local_record(&f1, &f2, l, &s, &work))
        .collect::<Result<Vec<_>, _>>()?;
    let mut total = GWForm::zero(&work);
    for r in &records {
        total = total.add(&r.local_form)?;
    }
    let sum_degrees = records.iter().map(|r| r.line.degree).sum();
    let total_over_base = match qhat_used {
        Some(_) => Some(total.transport(base)?),
        None => None,
    };
    let is_8h = total.is_multiple_of_h(8)
        && total_over_base.as_ref().map(|t| t.is_multiple_of_h(8)).unwrap_or(true);
    Ok(CountReport {
        spec: spec.clone(),
        working_field: work,
        qhat_used,
        working_f1: f1,
        working_f2: f2,
        one_form: s,
        lines: records,
        total,
        total_over_base,
        sum_degrees,
        is_8h,
        seeds: Seeds {
            solver: rng_seed,
            one_form: rng_seed,
        },
    })
}

fn local_record(
    f1: &QuadraticForm,
    f2: &QuadraticForm,
    line: &Line,
    s: &OneForm,
    work: &ExtField,
) -> Result<LineRecord, PipelineError> {
    let class = twisted_jacobian_class(f1, f2, line, s)?;
    let local_form = trace_form(&class, work)?;
    Ok(LineRecord {
        line: line.clone(),
        local_class: SquareClass::new(class)?,
        local_form,
    })
}

/// `Σ [κ(L) : K]` over the lines in the report.
pub fn weighted_count(report: &CountReport) -> usize {
    report.lines.iter().map(|r| r.line.degree).sum()
}

/// An accepted random surface and the number of draws rejected before it.
#[derive(Clone, Debug)]
pub struct RandomSurface {
    pub spec: SurfaceSpec,
    pub rejections: usize,
}

/// Draws coefficient pairs until the surface is smooth and its lines form a
/// reduced scheme of degree 16 over the working field.
pub fn random_surface(field: &ExtField, rng_seed: u64) -> Result<RandomSurface, PipelineError> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let (work, _) = working_field(field)?;
    for draw in 0..MAX_DRAWS {
        let mut quadric = || {
            QuadraticForm::new(field, (0..NUM_COEFFS).map(|_| field.random(&mut rng)).collect())
                .expect("15 coefficients")
        };
        let f1 = quadric();
        let f2 = quadric();
        if !is_smooth_surface(&f1, &f2) {
            log::debug!("draw {draw}: not smooth");
            continue;
        }
        match find_lines(&f1.embed_into(&work)?, &f2.embed_into(&work)?, rng_seed) {
            Ok(_) => {
                log::info!("accepted surface over {field} after {draw} rejections");
                return Ok(RandomSurface {
                    spec: SurfaceSpec { f1, f2 },
                    rejections: draw,
                });
            }
            Err(GeometryError::DegenerateSurface(reason)) => {
                log::debug!("draw {draw}: {reason}");
            }
            Err(e) => return Err(e.into()),
        }
    }
    Err(PipelineError::RetriesExhausted(MAX_DRAWS))
}

/// Groups lines over an odd-degree extension `K` by the closed point of the
/// base field `k` under them. Returns one entry per `k`-line, in input order.
pub fn fiber_group(lines_over_big: &[Line], lines_over_small: &[Line]) -> Result<Vec<(Line, Vec<Line>)>, PipelineError> {
    let mut out: Vec<(Line, Vec<Line>)> = lines_over_small.iter().map(|z| (z.clone(), Vec::new())).collect();
    let Some(small) = lines_over_small.first().map(|z| z.base().clone()) else {
        return if lines_over_big.is_empty() {
            Ok(out)
        } else {
            Err(PipelineError::MismatchedFields("no lines over the base field".into()))
        };
    };
    for y in lines_over_big {
        if !y.base().contains_subfield(&small) {
            return Err(PipelineError::MismatchedFields(format!(
                "{} does not contain {}",
                y.base(),
                small
            )));
        }
        let z = Line::from_plucker(&y.plucker, &small)?;
        let slot = out
            .iter_mut()
            .find(|(zz, _)| zz.canon_key == z.canon_key)
            .ok_or_else(|| PipelineError::MismatchedFields("a line has no image among the base lines".into()))?;
        slot.1.push(y.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qhat_table() {
        for (p, q, want) in [(3, 1, 3), (5, 1, 3), (7, 1, 3), (11, 1, 3), (13, 1, 3), (3, 2, 6)] {
            assert_eq!(qhat(p, q), Ok(want), "p={p} q={q}");
        }
        assert_eq!(qhat(17, 1), Err(PipelineError::NotNeeded));
        assert_eq!(qhat(3, 3), Err(PipelineError::NotNeeded));
    }

    #[test]
    fn diagonal_pencil_over_f17() {
        let spec = SurfaceSpec::diagonal_pencil(17, 1).unwrap();
        let r = enriched_count(&spec, 0).unwrap();
        assert_eq!(r.sum_degrees, 16);
        assert_eq!(weighted_count(&r), r.total.rank());
        assert!(r.is_8h);
        assert!(r.qhat_used.is_none());
    }
}
