//! Zero-dimensional solving through the multiplication matrices of the
//! quotient algebra.
//!
//! A random linear form `l` is applied to the unit of each component; its
//! Krylov sequence gives the minimal polynomial `g` of `l`. When `deg g`
//! equals the component dimension, `l` is a primitive element and every
//! coordinate is a polynomial in `l` (shape position). Otherwise, if `g` has
//! several irreducible factors, the component splits along the kernels of the
//! factors and each piece is solved independently.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::groebner::{groebner, GroebnerBasis};
use super::mpoly::{Exponent, MPoly, MonomialOrder};
use super::SolveError;
use crate::galois_field::{degree_over, make_field, minimal_polynomial, ExtField, FieldElement, UPoly};
use crate::linalg::{self, Matrix};

const MAX_ATTEMPTS: usize = 20;

/// A closed point of a zero-dimensional variety over the coefficient field
/// `K`. `coords` live in the canonical field of degree `degree` over `K` and
/// are the lexicographically least of the `degree` conjugate representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedPointSol {
    pub degree: usize,
    /// Minimal polynomial over `K` of a coordinate generating the residue
    /// field (the last such coordinate), or of a separating linear form when
    /// no single coordinate generates it.
    pub min_poly: UPoly,
    pub coords: Vec<FieldElement>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SolveStats {
    pub quotient_dim: usize,
    pub splits: usize,
    pub retries: usize,
}

struct Component {
    mults: Vec<Matrix>,
    unit: Vec<FieldElement>,
}

/// Multiplication matrices of `K[x]/I` on the standard-monomial basis, and the
/// coordinates of `1`.
fn multiplication_matrices(gb: &GroebnerBasis, std: &[Exponent], field: &ExtField) -> Component {
    let n = std.len();
    let index: HashMap<&Exponent, usize> = std.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut mults = Vec::with_capacity(gb.nvars());
    for v in 0..gb.nvars() {
        let mut m = linalg::zeros(field, n, n);
        for (k, b) in std.iter().enumerate() {
            let mut e = b.clone();
            e[v] += 1;
            if let Some(&r) = index.get(&e) {
                m[r][k] = field.one();
                continue;
            }
            let nf = gb.normal_form(&MPoly::from_terms(field, gb.nvars(), [(e.to_vec(), field.one())]));
            for (te, c) in nf.terms() {
                m[index[te]][k] = c.clone();
            }
        }
        mults.push(m);
    }
    let mut unit = vec![field.zero(); n];
    let zero_exp: Exponent = smallvec::SmallVec::from_elem(0, gb.nvars());
    unit[index[&zero_exp]] = field.one();
    Component { mults, unit }
}

fn poly_of_matrix(f: &UPoly, m: &Matrix, field: &ExtField) -> Matrix {
    let n = m.len();
    let mut acc = linalg::zeros(field, n, n);
    for c in f.coeffs().iter().rev() {
        acc = linalg::mat_mul(&acc, m);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += c;
        }
    }
    acc
}

fn columns_to_matrix(cols: &[Vec<FieldElement>]) -> Matrix {
    let rows = cols[0].len();
    (0..rows)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect()
}

struct Solver {
    field: ExtField,
    rng: ChaCha8Rng,
    out: Vec<ClosedPointSol>,
    stats: SolveStats,
}

impl Solver {
    fn solve_component(&mut self, comp: Component) -> Result<(), SolveError> {
        let r = comp.unit.len();
        let field = self.field.clone();
        for _ in 0..MAX_ATTEMPTS {
            let coeffs: Vec<FieldElement> = comp.mults.iter().map(|_| field.random(&mut self.rng)).collect();
            let mut l = linalg::zeros(&field, r, r);
            for (c, m) in coeffs.iter().zip(&comp.mults) {
                if c.is_zero() {
                    continue;
                }
                for (lrow, mrow) in l.iter_mut().zip(m) {
                    for (x, y) in lrow.iter_mut().zip(mrow) {
                        *x += &(c * y);
                    }
                }
            }

            let mut krylov = vec![comp.unit.clone()];
            let g = loop {
                let next = linalg::mat_vec(&l, krylov.last().unwrap());
                if let Some(a) = linalg::solve(&columns_to_matrix(&krylov), &next) {
                    let mut gc: Vec<FieldElement> = a.iter().map(|x| -x).collect();
                    gc.push(field.one());
                    break UPoly::new(&field, gc);
                }
                krylov.push(next);
            };
            if !g.is_squarefree() {
                return Err(SolveError::NotRadical);
            }
            let k = g.degree().unwrap();
            let (_, factors) = g.factor(&mut self.rng);
            if k == r {
                self.emit_shape(&comp, &krylov, &factors);
                return Ok(());
            }
            if factors.len() >= 2 {
                self.stats.splits += 1;
                return self.split(&comp, &l, &factors);
            }
            self.stats.retries += 1;
        }
        Err(SolveError::ShapeFailure)
    }

    fn split(&mut self, comp: &Component, l: &Matrix, factors: &[(UPoly, usize)]) -> Result<(), SolveError> {
        let field = self.field.clone();
        let r = comp.unit.len();
        let bases: Vec<Vec<Vec<FieldElement>>> = factors
            .iter()
            .map(|(phi, _)| linalg::nullspace(&poly_of_matrix(phi, l, &field), r, &field))
            .collect();
        let all: Vec<Vec<FieldElement>> = bases.iter().flatten().cloned().collect();
        let full = columns_to_matrix(&all);
        let unit_coords = linalg::solve(&full, &comp.unit).expect("kernels span the algebra");
        let mut offset = 0;
        for basis in &bases {
            let b = columns_to_matrix(basis);
            let mults = comp
                .mults
                .iter()
                .map(|m| {
                    let cols: Vec<Vec<FieldElement>> = basis
                        .iter()
                        .map(|v| linalg::solve(&b, &linalg::mat_vec(m, v)).expect("invariant subspace"))
                        .collect();
                    columns_to_matrix(&cols)
                })
                .collect();
            let unit = unit_coords[offset..offset + basis.len()].to_vec();
            offset += basis.len();
            self.solve_component(Component { mults, unit })?;
        }
        Ok(())
    }

    fn emit_shape(&mut self, comp: &Component, krylov: &[Vec<FieldElement>], factors: &[(UPoly, usize)]) {
        let field = self.field.clone();
        let v = columns_to_matrix(krylov);
        // coordinate x_i = h_i(l) with h_i read off in the Krylov basis
        let hs: Vec<UPoly> = comp
            .mults
            .iter()
            .map(|m| {
                let w = linalg::mat_vec(m, &comp.unit);
                UPoly::new(&field, linalg::solve(&v, &w).expect("Krylov basis spans"))
            })
            .collect();
        for (phi, _) in factors {
            let d = phi.degree().unwrap();
            let ext = make_field(field.p(), field.degree() * d).expect("valid field");
            let phi_ext = UPoly::new(
                &ext,
                phi.coeffs()
                    .iter()
                    .map(|c| crate::galois_field::embed(c, &ext).expect("subfield"))
                    .collect(),
            );
            let theta = phi_ext.any_root(&mut self.rng).expect("factor splits in its residue field");
            let mut coords: Vec<FieldElement> = hs.iter().map(|h| h.eval_in_extension(&theta)).collect();
            let mut best = coords.clone();
            for _ in 1..d {
                coords = coords.iter().map(|c| c.pow_p_iter(field.degree())).collect();
                if coords < best {
                    best = coords.clone();
                }
            }
            let min_poly = best
                .iter()
                .rev()
                .find(|c| degree_over(c, &field).ok() == Some(d))
                .map(|c| minimal_polynomial(c, &field).expect("subfield"))
                .unwrap_or_else(|| phi.monic());
            self.out.push(ClosedPointSol {
                degree: d,
                min_poly,
                coords: best,
            });
        }
    }
}

/// Solves a zero-dimensional radical system, returning its closed points
/// sorted by `(degree, coords)`.
pub fn shape_solve(gens: &[MPoly], rng_seed: u64) -> Result<Vec<ClosedPointSol>, SolveError> {
    shape_solve_with_stats(gens, rng_seed).map(|(pts, _)| pts)
}

pub fn shape_solve_with_stats(gens: &[MPoly], rng_seed: u64) -> Result<(Vec<ClosedPointSol>, SolveStats), SolveError> {
    let gb = groebner(gens, MonomialOrder::Grevlex);
    let Some(field) = gb.field().cloned() else {
        return Err(SolveError::NotZeroDimensional);
    };
    let std = gb.standard_monomials().ok_or(SolveError::NotZeroDimensional)?;
    let mut solver = Solver {
        field: field.clone(),
        rng: ChaCha8Rng::seed_from_u64(rng_seed),
        out: Vec::new(),
        stats: SolveStats {
            quotient_dim: std.len(),
            splits: 0,
            retries: 0,
        },
    };
    if !std.is_empty() {
        let comp = multiplication_matrices(&gb, &std, &field);
        solver.solve_component(comp)?;
    }
    let mut out = solver.out;
    out.sort_by(|a, b| (a.degree, &a.coords).cmp(&(b.degree, &b.coords)));
    debug_assert!(out.iter().all(|pt| gens
        .iter()
        .all(|g| g.eval(&pt.coords).map(|v| v.is_zero()).unwrap_or(false))));
    Ok((out, solver.stats))
}
