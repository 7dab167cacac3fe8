//! Dense linear algebra over a finite field: row reduction, determinants,
//! kernels and linear solves. Matrices are row-major `Vec<Vec<FieldElement>>`.

use crate::galois_field::{ExtField, FieldElement};

pub type Matrix = Vec<Vec<FieldElement>>;

pub fn zeros(field: &ExtField, rows: usize, cols: usize) -> Matrix {
    vec![vec![field.zero(); cols]; rows]
}

pub fn identity(field: &ExtField, n: usize) -> Matrix {
    let mut m = zeros(field, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = field.one();
    }
    m
}

pub fn mat_vec(m: &Matrix, v: &[FieldElement]) -> Vec<FieldElement> {
    m.iter()
        .map(|row| {
            let mut acc = v[0].field().zero();
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b[0].len();
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = row[0].field().zero();
                    for (k, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            acc += &(x * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

pub fn determinant(m: &Matrix) -> FieldElement {
    let n = m.len();
    let field = m[0][0].field().clone();
    let mut a = m.clone();
    let mut det = field.one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return field.zero();
        };
        if piv != c {
            a.swap(c, piv);
            det = -det;
        }
        det = &det * &a[c][c];
        let inv = a[c][c].inv().unwrap();
        for r in (c + 1)..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            let (top, bottom) = a.split_at_mut(r);
            for (x, y) in bottom[0].iter_mut().zip(&top[c]).skip(c) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
    }
    det
}

/// Basis of the right kernel `{x : m x = 0}`, as column vectors.
pub fn nullspace(m: &Matrix, cols: usize, field: &ExtField) -> Vec<Vec<FieldElement>> {
    let mut work = m.clone();
    let pivots = if work.is_empty() {
        Vec::new()
    } else {
        rref(&mut work)
    };
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![field.zero(); cols];
            v[fc] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&work[r][fc];
            }
            v
        })
        .collect()
}

/// Solves `m x = b` for a matrix with full column rank; `None` if the system
/// is inconsistent.
pub fn solve(m: &Matrix, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
    let cols = m[0].len();
    let mut aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    assert_eq!(pivots.len(), cols, "solve requires full column rank");
    Some((0..cols).map(|r| aug[r][cols].clone()).collect())
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let field = m[0][0].field().clone();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois_field::make_field;

    fn m(f: &ExtField, rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| f.from_int(x)).collect())
            .collect()
    }

    #[test]
    fn det_and_inverse() {
        let f = make_field(17, 1).unwrap();
        let a = m(&f, &[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(determinant(&a), f.from_int(-2));
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(&f, 3));
    }

    #[test]
    fn kernel_of_rank_one() {
        let f = make_field(7, 1).unwrap();
        let a = m(&f, &[&[1, 2, 3], &[2, 4, 6]]);
        let ker = nullspace(&a, 3, &f);
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(mat_vec(&a, &v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_detects_inconsistency() {
        let f = make_field(5, 1).unwrap();
        let a = m(&f, &[&[1], &[1]]);
        assert!(solve(&a, &[f.from_int(1), f.from_int(2)]).is_none());
        assert_eq!(
            solve(&a, &[f.from_int(3), f.from_int(3)]).unwrap(),
            vec![f.from_int(3)]
        );
    }
}
