//! Dense polynomials over `F_p` for a word-sized odd prime `p < 2^31`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::exactnum::IntPoly;

pub type Fp = Vec<u64>;

pub fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn deg(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (g, x, _) = egcd(a as i64, p as i64);
    assert_eq!(g, 1, "inverse of non-unit");
    x.rem_euclid(p as i64) as u64
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

pub fn reduce(f: &IntPoly, p: u64) -> Fp {
    let bp = BigInt::from(p);
    trim(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&bp).to_u64().expect("residue fits"))
            .collect(),
    )
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % p).collect())
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + p - b.get(i).unwrap_or(&0)) % p).collect())
}

pub fn scale(a: &[u64], s: u64, p: u64) -> Fp {
    trim(a.iter().map(|c| c * s % p).collect())
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Fp, Fp) {
    let db = deg(b).expect("division by zero polynomial");
    let inv = inv_mod(b[db], p);
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![0u64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * inv % p;
        if c == 0 {
            continue;
        }
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * bj % p) % p;
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Fp {
    div_rem(a, b, p).1
}

pub fn monic(a: &[u64], p: u64) -> Fp {
    match a.last() {
        Some(&l) => scale(a, inv_mod(l, p), p),
        None => Vec::new(),
    }
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Fp {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// `(g, s, t)` with `s·a + t·b = g` monic.
pub fn xgcd(a: &[u64], b: &[u64], p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let inv = inv_mod(*r0.last().expect("xgcd of zeros"), p);
    (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
}

pub fn derivative(a: &[u64], p: u64) -> Fp {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| (i as u64 % p) * c % p).collect())
}

pub fn powmod(base: &[u64], exp: &BigUint, m: &[u64], p: u64) -> Fp {
    let mut acc = vec![1u64];
    let b = rem(base, m, p);
    for i in (0..exp.bits()).rev() {
        acc = rem(&mul(&acc, &acc, p), m, p);
        if exp.bit(i) {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
    }
    rem(&acc, m, p)
}

pub fn is_squarefree(a: &[u64], p: u64) -> bool {
    let d = derivative(a, p);
    !d.is_empty() && deg(&gcd(a, &d, p)) == Some(0)
}

/// Distinct-degree factorization of a monic squarefree `f`: pairs `(product, d)`.
pub fn ddf(f: &[u64], p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let x = vec![0u64, 1];
    let pb = BigUint::from(p);
    let mut h = x.clone();
    let mut d = 0;
    while let Some(n) = deg(&rest) {
        if n < 2 * (d + 1) {
            if n > 0 {
                out.push((rest.clone(), n));
            }
            break;
        }
        d += 1;
        h = powmod(&h, &pb, &rest, p);
        let g = gcd(&rest, &sub(&h, &x, p), p);
        if deg(&g) > Some(0) {
            rest = div_rem(&rest, &g, p).0;
            h = rem(&h, &rest, p);
            out.push((g, d));
        }
    }
    out
}

/// Splits a monic product of distinct irreducibles of degree `d` (Cantor–Zassenhaus).
pub fn edf<R: Rng>(f: &[u64], d: usize, p: u64, rng: &mut R) -> Vec<Fp> {
    let n = deg(f).unwrap_or(0);
    if n == d {
        return vec![f.to_vec()];
    }
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&a).unwrap_or(0) == 0 {
            continue;
        }
        let g = gcd(f, &a, p);
        let g = if deg(&g) > Some(0) {
            g
        } else {
            let b = powmod(&a, &e, f, p);
            gcd(f, &sub(&b, &[1], p), p)
        };
        if let Some(k) = deg(&g) {
            if k > 0 && k < n {
                let h = div_rem(f, &g, p).0;
                let mut out = edf(&g, d, p, rng);
                out.extend(edf(&h, d, p, rng));
                return out;
            }
        }
    }
}

/// Degree pattern of the irreducible factors of a monic squarefree `f`.
pub fn factor_degrees(dd: &[(Fp, usize)]) -> Vec<usize> {
    let mut degs = Vec::new();
    for (g, d) in dd {
        let k = deg(g).unwrap_or(0) / d;
        degs.extend(std::iter::repeat_n(*d, k));
    }
    degs
}

pub fn to_intpoly(a: &[u64]) -> IntPoly {
    IntPoly::new(a.iter().map(|&c| BigInt::from(c)).collect())
}

pub fn is_zero(a: &[u64]) -> bool {
    a.iter().all(|c| c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn xgcd_identity() {
        let p = 7;
        let a = vec![1, 0, 1]; // x^2 + 1
        let b = vec![6, 1]; // x − 1
        let (g, s, t) = xgcd(&a, &b, p);
        assert_eq!(g, vec![1]);
        let lhs = add(&mul(&s, &a, p), &mul(&t, &b, p), p);
        assert_eq!(lhs, vec![1]);
    }

    #[test]
    fn full_split_of_x_to_p_minus_x() {
        // x^5 − x over F_5 is the product of all monic linears
        let p = 5;
        let f = vec![0, 4, 0, 0, 0, 1];
        let dd = ddf(&f, p);
        assert_eq!(dd.len(), 1);
        assert_eq!(dd[0].1, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut lin = edf(&dd[0].0, 1, p, &mut rng);
        lin.sort();
        assert_eq!(lin.len(), 5);
        let prod = lin.iter().fold(vec![1u64], |acc, g| mul(&acc, g, p));
        assert_eq!(prod, f);
    }

    #[test]
    fn ddf_separates_degrees() {
        // (x^2 + 1)(x − 2) over F_3: x^2 + 1 irreducible mod 3
        let p = 3;
        let f = mul(&[1, 0, 1], &[1, 1], p);
        let dd = ddf(&f, p);
        assert_eq!(factor_degrees(&dd), vec![1, 2]);
    }
}
