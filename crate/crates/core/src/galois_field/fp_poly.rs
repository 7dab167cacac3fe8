//! Dense polynomials over a prime field `F_p`, stored as little-endian
//! coefficient vectors of `u64` residues. Only what the field construction
//! needs: multiplication modulo a monic polynomial, gcd, and Rabin's
//! irreducibility test.

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn inv_mod_p(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod_p(a, p - 2, p)
}

pub(crate) fn pow_mod_p(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Reduces `a` in place modulo the monic polynomial `m`.
pub(crate) fn reduce(a: &mut Vec<u64>, m: &[u64], p: u64) {
    let n = m.len() - 1;
    trim(a);
    while a.len() > n {
        let top = a.len() - 1;
        let c = a[top];
        if c != 0 {
            let shift = top - n;
            for (i, &mi) in m.iter().enumerate() {
                let idx = shift + i;
                a[idx] = (a[idx] + (p - c) * mi) % p;
            }
        }
        a.pop();
        trim(a);
    }
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut out = mul(a, b, p);
    reduce(&mut out, m, p);
    out
}

pub(crate) fn pow_mod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    reduce(&mut acc, m, p);
    let mut b = base.to_vec();
    reduce(&mut b, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let mut out: Vec<u64> = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

/// Remainder of `a` by an arbitrary nonzero `b`.
pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "division by zero polynomial");
    let lead_inv = inv_mod_p(*b.last().unwrap(), p);
    let monic: Vec<u64> = b.iter().map(|&c| c * lead_inv % p).collect();
    let mut out = a.to_vec();
    reduce(&mut out, &monic, p);
    out
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let inv = inv_mod_p(lead, p);
        for c in x.iter_mut() {
            *c = *c * inv % p;
        }
    }
    x
}

/// Inverse of `a` modulo the monic irreducible `m`, by the extended Euclidean
/// algorithm. `a` must be nonzero modulo `m`.
pub(crate) fn inv_mod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    // Invariant: s_i * a ≡ r_i (mod m)
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    assert!(r0.len() == 1, "element not invertible modulo the field polynomial");
    let inv = inv_mod_p(r0[0], p);
    let mut out: Vec<u64> = s0.iter().map(|&c| c * inv % p).collect();
    reduce(&mut out, m, p);
    out
}

pub(crate) fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        let shift = top - db;
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - c) * bi) % p;
        }
        r.pop();
        trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    trim(&mut q);
    (q, r)
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: a monic `f` of degree `n` is irreducible over `F_p` iff
/// `x^(p^n) ≡ x (mod f)` and `gcd(x^(p^(n/r)) - x, f) = 1` for every prime `r | n`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x = vec![0u64, 1];
    // powers[k] = x^(p^k) mod f
    let mut powers = Vec::with_capacity(n + 1);
    let mut cur = x.clone();
    reduce(&mut cur, f, p);
    powers.push(cur.clone());
    for _ in 0..n {
        cur = pow_mod(&cur, p, f, p);
        powers.push(cur.clone());
    }
    let mut xr = x.clone();
    reduce(&mut xr, f, p);
    if powers[n] != xr {
        return false;
    }
    prime_factors(n).into_iter().all(|r| {
        let diff = sub(&powers[n / r], &xr, p);
        gcd(&diff, f, p) == vec![1]
    })
}

/// The monic irreducible of degree `n` over `F_p` whose coefficient vector,
/// read as a base-`p` integer with the constant term least significant, is
/// minimal.
pub(crate) fn canonical_modulus(p: u64, n: usize) -> Vec<u64> {
    if n == 1 {
        return vec![0, 1];
    }
    let mut lower = vec![0u64; n];
    loop {
        if lower[0] != 0 {
            let mut f = lower.clone();
            f.push(1);
            if is_irreducible(&f, p) {
                return f;
            }
        }
        // base-p increment, least significant digit first
        let mut i = 0;
        loop {
            lower[i] += 1;
            if lower[i] < p {
                break;
            }
            lower[i] = 0;
            i += 1;
            assert!(i < n, "no irreducible polynomial found");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibility() {
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[2, 0, 1], 3)); // x^2 - 1
        assert!(!is_irreducible(&[0, 0, 1], 3));
        // x^3 + 2x + 1 has no roots mod 3
        assert!(is_irreducible(&[1, 2, 0, 1], 3));
    }

    #[test]
    fn canonical_moduli_small() {
        assert_eq!(canonical_modulus(3, 2), vec![1, 0, 1]);
        assert_eq!(canonical_modulus(17, 1), vec![0, 1]);
        // x^2 + 1 is reducible mod 5 (2^2 = -1); next is x^2 + 2
        assert_eq!(canonical_modulus(5, 2), vec![2, 0, 1]);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = vec![1, 0, 1];
        let a = vec![1, 1];
        let inv = inv_mod(&a, &m, 3);
        assert_eq!(mul_mod(&a, &inv, &m, 3), vec![1]);
    }
}
