use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::Coeffs;
use super::fp_poly;
use super::upoly::UPoly;
use super::{ExtField, FieldElement, FieldError};

/// The canonical embedding `F_{p^m} -> F_{p^n}` for `m | n`: the generator of
/// the small field goes to the root of its modulus in the large field with the
/// lexicographically least coefficient vector (constant term compared first).
/// For `m = n` it is the identity.
pub struct Embedding {
    from: ExtField,
    to: ExtField,
    /// `images[i]` = image of `t^i`, as `n` coefficients.
    images: Vec<Vec<u64>>,
    /// `m` rows of the `n x m` image matrix that are linearly independent,
    /// and the inverse of the square submatrix they form.
    pivot_rows: Vec<usize>,
    pivot_inverse: Vec<Vec<u64>>,
}

fn embedding_cache() -> &'static Mutex<HashMap<(u64, usize, usize), Arc<Embedding>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize, usize), Arc<Embedding>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Fetches the canonical embedding `from -> to`, computing it on first use.
pub fn embedding(from: &ExtField, to: &ExtField) -> Result<Arc<Embedding>, FieldError> {
    if !to.contains_subfield(from) {
        return Err(FieldError::NoEmbedding {
            from: from.to_string(),
            to: to.to_string(),
        });
    }
    let key = (from.p(), from.degree(), to.degree());
    if let Some(e) = embedding_cache().lock().unwrap().get(&key) {
        return Ok(e.clone());
    }
    let emb = Arc::new(Embedding::compute(from, to));
    let mut cache = embedding_cache().lock().unwrap();
    Ok(cache.entry(key).or_insert(emb).clone())
}

impl Embedding {
    fn compute(from: &ExtField, to: &ExtField) -> Self {
        let m = from.degree();
        let n = to.degree();
        let root = if m == n {
            to.generator()
        } else if m == 1 {
            to.zero()
        } else {
            canonical_root(from.modulus(), to)
        };
        let mut images = Vec::with_capacity(m);
        let mut cur = to.one();
        for _ in 0..m {
            images.push(cur.coeffs().to_vec());
            cur = &cur * &root;
        }
        let (pivot_rows, pivot_inverse) = pivot_system(&images, n, to.p());
        Embedding {
            from: from.clone(),
            to: to.clone(),
            images,
            pivot_rows,
            pivot_inverse,
        }
    }

    pub fn source(&self) -> &ExtField {
        &self.from
    }

    pub fn target(&self) -> &ExtField {
        &self.to
    }

    /// The image of the small field's generator `t`.
    pub fn generator_image(&self) -> FieldElement {
        if self.from.degree() == 1 {
            return self.to.zero();
        }
        self.to.from_raw(self.images[1].iter().copied().collect())
    }

    pub fn apply(&self, a: &FieldElement) -> FieldElement {
        debug_assert_eq!(a.field(), &self.from);
        let p = self.to.p();
        let mut out: Coeffs = smallvec::SmallVec::from_elem(0, self.to.degree());
        for (&c, img) in a.coeffs().iter().zip(&self.images) {
            if c == 0 {
                continue;
            }
            for (slot, &v) in out.iter_mut().zip(img) {
                *slot = (*slot + c * v) % p;
            }
        }
        self.to.from_raw(out)
    }

    /// Preimage of `a` if it lies in the image of the embedding.
    pub fn preimage(&self, a: &FieldElement) -> Option<FieldElement> {
        debug_assert_eq!(a.field(), &self.to);
        let p = self.to.p();
        let rhs: Vec<u64> = self.pivot_rows.iter().map(|&r| a.coeffs()[r]).collect();
        let coeffs: Coeffs = self
            .pivot_inverse
            .iter()
            .map(|row| row.iter().zip(&rhs).fold(0, |acc, (&x, &y)| (acc + x * y) % p))
            .collect();
        let candidate = self.from.from_raw(coeffs);
        (self.apply(&candidate) == *a).then_some(candidate)
    }
}

/// Picks `m` independent rows of the `n x m` matrix whose columns are
/// `images`, and inverts that square block over `F_p`.
fn pivot_system(images: &[Vec<u64>], n: usize, p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let m = images.len();
    let mut rows: Vec<usize> = Vec::with_capacity(m);
    // incremental Gaussian elimination on rows of the n x m matrix
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    for r in 0..n {
        let mut v: Vec<u64> = (0..m).map(|c| images[c][r]).collect();
        for (pc, b) in &basis {
            let c = v[*pc];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = (*x + (p - c) * y) % p;
                }
            }
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let inv = fp_poly::inv_mod_p(v[pc], p);
            for x in v.iter_mut() {
                *x = *x * inv % p;
            }
            for (_, b) in basis.iter_mut() {
                let c = b[pc];
                if c != 0 {
                    for (x, &y) in b.iter_mut().zip(&v) {
                        *x = (*x + (p - c) * y) % p;
                    }
                }
            }
            basis.push((pc, v));
            rows.push(r);
            if rows.len() == m {
                break;
            }
        }
    }
    assert_eq!(rows.len(), m, "embedding images are not independent");
    // invert the m x m block A[i][c] = images[c][rows[i]]
    let mut aug: Vec<Vec<u64>> = (0..m)
        .map(|i| {
            let mut row: Vec<u64> = (0..m).map(|c| images[c][rows[i]]).collect();
            row.extend((0..m).map(|j| u64::from(i == j)));
            row
        })
        .collect();
    for col in 0..m {
        let piv = (col..m).find(|&r| aug[r][col] != 0).expect("singular block");
        aug.swap(col, piv);
        let inv = fp_poly::inv_mod_p(aug[col][col], p);
        for x in aug[col].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col] == 0 {
                continue;
            }
            let c = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = (*x + (p - c) * y) % p;
            }
        }
    }
    let inverse = aug.into_iter().map(|row| row[m..].to_vec()).collect();
    (rows, inverse)
}

/// Lexicographically least root of the `F_p`-polynomial `poly` inside `field`,
/// which must split it. One root is found by equal-degree splitting; the rest
/// are its `p`-power conjugates.
fn canonical_root(poly: &[u64], field: &ExtField) -> FieldElement {
    let coeffs: Vec<i64> = poly.iter().map(|&c| c as i64).collect();
    let f = UPoly::from_ints(field, &coeffs);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let first = first_root(&f, &mut rng).expect("modulus splits in the target field");
    let deg = f.degree().unwrap();
    let mut roots = Vec::with_capacity(deg);
    let mut cur = first;
    for _ in 0..deg {
        roots.push(cur.clone());
        cur = cur.pow_p();
    }
    roots.into_iter().min().unwrap()
}

/// Some root of `f` in its coefficient field, if one exists.
pub(crate) fn first_root<R: rand::Rng + ?Sized>(f: &UPoly, rng: &mut R) -> Option<FieldElement> {
    f.any_root(rng)
}

/// Image of `a` under the canonical embedding into `target`.
pub fn embed(a: &FieldElement, target: &ExtField) -> Result<FieldElement, FieldError> {
    if a.field() == target {
        return Ok(a.clone());
    }
    Ok(embedding(a.field(), target)?.apply(a))
}

/// Preimage of `a` in the subfield `sub` under the canonical embedding.
pub fn descend(a: &FieldElement, sub: &ExtField) -> Result<FieldElement, FieldError> {
    if a.field() == sub {
        return Ok(a.clone());
    }
    embedding(sub, a.field())?
        .preimage(a)
        .ok_or_else(|| FieldError::NotInSubfield {
            sub: sub.to_string(),
        })
}

/// `a^(|base|^k)`: the `k`-th power of the Frobenius of `a`'s field over `base`.
pub fn frobenius(a: &FieldElement, k: usize, base: &ExtField) -> Result<FieldElement, FieldError> {
    if !a.field().contains_subfield(base) {
        return Err(FieldError::NoEmbedding {
            from: base.to_string(),
            to: a.field().to_string(),
        });
    }
    Ok(a.pow_p_iter(base.degree() * k))
}

/// `Tr(a) = a + a^q + ... + a^(q^(d-1))` for `q = |base|`, returned as an
/// element of `base`.
pub fn trace_to(a: &FieldElement, base: &ExtField) -> Result<FieldElement, FieldError> {
    if !a.field().contains_subfield(base) {
        return Err(FieldError::NoEmbedding {
            from: base.to_string(),
            to: a.field().to_string(),
        });
    }
    let d = a.field().degree() / base.degree();
    let mut acc = a.clone();
    let mut cur = a.clone();
    for _ in 1..d {
        cur = cur.pow_p_iter(base.degree());
        acc += &cur;
    }
    descend(&acc, base)
}

/// `N(a) = a * a^q * ... * a^(q^(d-1))` as an element of `base`.
pub fn norm_to(a: &FieldElement, base: &ExtField) -> Result<FieldElement, FieldError> {
    if !a.field().contains_subfield(base) {
        return Err(FieldError::NoEmbedding {
            from: base.to_string(),
            to: a.field().to_string(),
        });
    }
    let d = a.field().degree() / base.degree();
    let mut acc = a.clone();
    let mut cur = a.clone();
    for _ in 1..d {
        cur = cur.pow_p_iter(base.degree());
        acc *= &cur;
    }
    descend(&acc, base)
}

/// Minimal polynomial of `a` over `base`: the product of `x - c` over the
/// distinct Frobenius conjugates `c` of `a`, with coefficients in `base`.
pub fn minimal_polynomial(a: &FieldElement, base: &ExtField) -> Result<UPoly, FieldError> {
    let d = degree_over(a, base)?;
    let big = a.field();
    let mut acc = UPoly::one(big);
    let mut cur = a.clone();
    for _ in 0..d {
        acc = acc.mul(&UPoly::linear(&cur));
        cur = cur.pow_p_iter(base.degree());
    }
    let coeffs = acc
        .coeffs()
        .iter()
        .map(|c| descend(c, base))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(UPoly::new(base, coeffs))
}

/// Degree over `base` of the subfield generated by `a` (the size of its
/// Frobenius orbit).
pub fn degree_over(a: &FieldElement, base: &ExtField) -> Result<usize, FieldError> {
    if !a.field().contains_subfield(base) {
        return Err(FieldError::NoEmbedding {
            from: base.to_string(),
            to: a.field().to_string(),
        });
    }
    let d = a.field().degree() / base.degree();
    let mut cur = a.clone();
    for k in 1..=d {
        cur = cur.pow_p_iter(base.degree());
        if cur == *a {
            return Ok(k);
        }
    }
    unreachable!("Frobenius orbit longer than the extension degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois_field::make_field;

    #[test]
    fn embed_identity_and_prime_subfield() {
        let f17 = make_field(17, 1).unwrap();
        assert_eq!(embed(&f17.from_int(5), &f17).unwrap(), f17.from_int(5));
        let f3 = make_field(3, 1).unwrap();
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(embed(&f3.from_int(2), &f9).unwrap(), f9.from_int(2));
    }

    #[test]
    fn embed_f9_into_f81_is_lex_least_root() {
        let f9 = make_field(3, 2).unwrap();
        let f81 = make_field(3, 4).unwrap();
        let img = embed(&f9.generator(), &f81).unwrap();
        assert_eq!(&img * &img, f81.from_int(-1));
        // oracle: exhaustive scan of F_81 for roots of t^2 + 1
        let roots: Vec<_> = f81
            .elements()
            .filter(|x| (&(x * x) + &f81.one()).is_zero())
            .collect();
        assert_eq!(roots.len(), 2);
        assert_eq!(img, roots.iter().min().unwrap().clone());
    }

    #[test]
    fn no_embedding_when_degree_does_not_divide() {
        let f9 = make_field(3, 2).unwrap();
        let f27 = make_field(3, 3).unwrap();
        assert!(matches!(
            embed(&f9.generator(), &f27),
            Err(FieldError::NoEmbedding { .. })
        ));
    }

    #[test]
    fn frobenius_examples() {
        let f3 = make_field(3, 1).unwrap();
        let f9 = make_field(3, 2).unwrap();
        let t = f9.generator();
        assert_eq!(frobenius(&t, 1, &f3).unwrap(), -&t);
        assert_eq!(frobenius(&t, 2, &f3).unwrap(), t);
        let f17 = make_field(17, 1).unwrap();
        assert_eq!(
            frobenius(&f17.from_int(5), 1, &f17).unwrap(),
            f17.from_int(5)
        );
    }

    #[test]
    fn trace_examples() {
        let f3 = make_field(3, 1).unwrap();
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(trace_to(&f9.one(), &f3).unwrap(), f3.from_int(2));
        assert_eq!(trace_to(&f9.generator(), &f3).unwrap(), f3.zero());
        let f17 = make_field(17, 1).unwrap();
        assert_eq!(trace_to(&f17.from_int(11), &f17).unwrap(), f17.from_int(11));
    }

    #[test]
    fn descend_roundtrip() {
        let f9 = make_field(3, 2).unwrap();
        let f729 = make_field(3, 6).unwrap();
        for a in f9.elements() {
            let up = embed(&a, &f729).unwrap();
            assert_eq!(descend(&up, &f9).unwrap(), a);
        }
        assert!(descend(&f729.generator(), &f9).is_err());
    }
}
