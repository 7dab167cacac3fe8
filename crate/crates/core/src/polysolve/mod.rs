//! Sparse multivariate polynomials, Gröbner bases and zero-dimensional
//! solving over finite fields.

mod groebner;
mod mpoly;
mod solve;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{Map, Value};
use thiserror::Error;

pub use groebner::{groebner, quotient_dim, GroebnerBasis, QuotientDim};
pub use mpoly::{Exponent, MPoly, MonomialOrder};
pub use solve::{shape_solve, shape_solve_with_stats, ClosedPointSol, SolveStats};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("the system has infinitely many solutions")]
    NotZeroDimensional,
    #[error("the ideal is not radical")]
    NotRadical,
    #[error("no separating linear form found")]
    ShapeFailure,
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial involves more than one variable")]
    NotUnivariate,
}

/// Factors a polynomial in at most one variable into monic irreducibles with
/// multiplicities, returned as polynomials in the same ring. The leading
/// coefficient is dropped.
pub fn factor_univariate(f: &MPoly, rng_seed: u64) -> Result<Vec<(MPoly, usize)>, SolveError> {
    if f.is_zero() {
        return Err(SolveError::ZeroPolynomial);
    }
    let var = f.univariate_variable().ok_or(SolveError::NotUnivariate)?;
    let Some(var) = var else {
        return Ok(Vec::new());
    };
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let (_, factors) = f.to_upoly(var).factor(&mut rng);
    Ok(factors
        .into_iter()
        .map(|(g, m)| (MPoly::from_upoly(&g, f.nvars(), var), m))
        .collect())
}

/// JSON form `{"[e0,e1,...]": [c0,c1,...]}` with coefficient vectors
/// constant term first.
pub fn mpoly_to_json(f: &MPoly) -> Value {
    let mut map = Map::new();
    for (e, c) in f.terms() {
        let key = format!(
            "[{}]",
            e.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
        );
        map.insert(key, Value::from(c.to_i64_vec()));
    }
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois_field::{make_field, ExtField};

    fn xy(f: &ExtField) -> (MPoly, MPoly) {
        (MPoly::var(f, 2, 0), MPoly::var(f, 2, 1))
    }

    #[test]
    fn lex_basis_of_two_points() {
        let f = make_field(17, 1).unwrap();
        let (x, y) = xy(&f);
        let one = MPoly::one(&f, 2);
        let gb = groebner(&[x.mul(&x).sub(&one), y.sub(&x)], MonomialOrder::Lex);
        assert!(gb.polys().contains(&y.mul(&y).sub(&one)));
        assert!(gb.polys().contains(&x.sub(&y)));
        assert_eq!(gb.polys().len(), 2);
        assert_eq!(quotient_dim(&gb), QuotientDim::Finite(2));
        let again = groebner(gb.polys(), MonomialOrder::Lex);
        assert_eq!(again, gb);
    }

    #[test]
    fn unit_and_inconsistent() {
        let f = make_field(17, 1).unwrap();
        let one = MPoly::one(&f, 1);
        let gb = groebner(&[one.clone()], MonomialOrder::Grevlex);
        assert_eq!(gb.polys(), &[one.clone()]);
        assert_eq!(quotient_dim(&gb), QuotientDim::Finite(0));
        let x = MPoly::var(&f, 1, 0);
        let three = MPoly::constant(&f, 1, f.from_int(3));
        let five = MPoly::constant(&f, 1, f.from_int(5));
        let gb = groebner(&[x.sub(&three), x.sub(&five)], MonomialOrder::Grevlex);
        assert_eq!(gb.polys(), &[one]);
        assert!(groebner(&[], MonomialOrder::Lex).polys().is_empty());
    }

    #[test]
    fn positive_dimensional() {
        let f = make_field(17, 1).unwrap();
        let (x, y) = xy(&f);
        let gb = groebner(&[x.mul(&y)], MonomialOrder::Grevlex);
        assert_eq!(quotient_dim(&gb), QuotientDim::Infinite);
        assert_eq!(shape_solve(&[x.mul(&y)], 0), Err(SolveError::NotZeroDimensional));
    }

    #[test]
    fn factor_examples() {
        let f3 = make_field(3, 1).unwrap();
        let x = MPoly::var(&f3, 1, 0);
        let one = MPoly::one(&f3, 1);
        let g = x.mul(&x).add(&one);
        assert_eq!(factor_univariate(&g, 0).unwrap(), vec![(g.clone(), 1)]);

        let f17 = make_field(17, 1).unwrap();
        let x = MPoly::var(&f17, 1, 0);
        let c = |v: i64| MPoly::constant(&f17, 1, f17.from_int(v));
        let fs = factor_univariate(&x.mul(&x).sub(&c(2)), 0).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&(x.sub(&c(6)), 1)));
        assert!(fs.contains(&(x.add(&c(6)), 1)));

        let f5 = make_field(5, 1).unwrap();
        let x = MPoly::var(&f5, 1, 0);
        let xm1 = x.sub(&MPoly::one(&f5, 1));
        assert_eq!(factor_univariate(&xm1.mul(&xm1), 0).unwrap(), vec![(xm1, 2)]);
        assert_eq!(
            factor_univariate(&MPoly::zero(&f5, 1), 0),
            Err(SolveError::ZeroPolynomial)
        );
    }

    #[test]
    fn solve_examples() {
        let f = make_field(17, 1).unwrap();
        let (x, y) = xy(&f);
        let one = MPoly::one(&f, 2);
        let pts = shape_solve(&[x.mul(&x).sub(&one), y.sub(&x)], 3).unwrap();
        let coords: Vec<Vec<i64>> = pts
            .iter()
            .map(|p| p.coords.iter().map(|c| c.to_i64_vec()[0]).collect())
            .collect();
        assert_eq!(coords, vec![vec![1, 1], vec![16, 16]]);

        let x1 = MPoly::var(&f, 1, 0);
        let pts = shape_solve(&[x1.mul(&x1).sub(&MPoly::constant(&f, 1, f.from_int(3)))], 0).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].degree, 2);
        assert_eq!(pts[0].min_poly, crate::galois_field::UPoly::from_ints(&f, &[-3, 0, 1]));
        assert_eq!(pts[0].coords[0].field().degree(), 2);
        assert_eq!(pts[0].coords[0].square(), pts[0].coords[0].field().from_int(3));

        assert_eq!(shape_solve(&[x.mul(&x), y.clone()], 0), Err(SolveError::NotRadical));
    }

    #[test]
    fn many_rational_points_over_small_field() {
        // x^3 = x, y^3 = y over F_3: nine rational points, no single linear
        // form separates them.
        let f = make_field(3, 1).unwrap();
        let (x, y) = xy(&f);
        let pts = shape_solve(&[x.pow(3).sub(&x), y.pow(3).sub(&y)], 1).unwrap();
        assert_eq!(pts.len(), 9);
        assert!(pts.iter().all(|p| p.degree == 1));
    }

    #[test]
    fn json_shape() {
        let f = make_field(5, 1).unwrap();
        let (x, y) = xy(&f);
        let v = mpoly_to_json(&x.mul(&y).add(&MPoly::constant(&f, 2, f.from_int(2))));
        assert_eq!(v["[1,1]"], serde_json::json!([1]));
        assert_eq!(v["[0,0]"], serde_json::json!([2]));
    }
}
