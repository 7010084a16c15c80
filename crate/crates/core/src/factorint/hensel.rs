//! Quadratic Hensel lifting of a modular factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::zmodp::{self, Fp};
use crate::exactnum::IntPoly;

/// Coefficients reduced into `[0, m)`.
pub fn mod_poly(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Coefficients reduced into `(−m/2, m/2]`.
pub fn sym_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m >> 1usize;
    IntPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Division by a monic polynomial modulo `m`.
fn div_rem_monic(a: &IntPoly, b: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
    let db = b.degree().expect("divisor nonzero");
    debug_assert!(b.lc().is_some_and(|c| c.is_one()));
    let mut r: Vec<BigInt> = a.coeffs().to_vec();
    if r.len() <= db {
        return (IntPoly::zero(), mod_poly(a, m));
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs().iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    r.truncate(db);
    (mod_poly(&IntPoly::new(q), m), mod_poly(&IntPoly::new(r), m))
}

fn mulm(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    mod_poly(&(a * b), m)
}

/// One quadratic step: from `f ≡ g·h`, `s·g + t·h ≡ 1 (mod m)` to the same
/// relations modulo `m²`. `h` must be monic.
fn hensel_step(
    f: &IntPoly,
    g: &IntPoly,
    h: &IntPoly,
    s: &IntPoly,
    t: &IntPoly,
    m: &BigInt,
) -> (IntPoly, IntPoly, IntPoly, IntPoly) {
    let m2 = m * m;
    let e = mod_poly(&(f - &(g * h)), &m2);
    let (q, r) = div_rem_monic(&mulm(s, &e, &m2), h, &m2);
    let g1 = mod_poly(&(&(g + &(t * &e)) + &(&q * g)), &m2);
    let h1 = mod_poly(&(h + &r), &m2);
    let b = mod_poly(&(&(&(s * &g1) + &(t * &h1)) - &IntPoly::one()), &m2);
    let (c, d) = div_rem_monic(&mulm(s, &b, &m2), &h1, &m2);
    let s1 = mod_poly(&(s - &d), &m2);
    let t1 = mod_poly(&(&(t - &(t * &b)) - &(&c * &g1)), &m2);
    (g1, h1, s1, t1)
}

/// Lifts `f ≡ lc(f) · ∏ factors (mod p)` (monic factors) to modulus `p^(2^k) ≥ bound`.
/// Returns the lifted monic factors and the final modulus.
pub fn multifactor_lift(f: &IntPoly, factors: &[Fp], p: u64, bound: &BigInt) -> (Vec<IntPoly>, BigInt) {
    let pb = BigInt::from(p);
    let mut steps = 0u32;
    let mut modulus = pb.clone();
    while &modulus <= bound {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let mut lifted = Vec::with_capacity(factors.len());
    let mut rest = mod_poly(f, &modulus);
    for (i, h0) in factors.iter().enumerate() {
        if i + 1 == factors.len() {
            // last factor: rest ≡ lc · h (mod M), so h = rest / lc
            let lc = rest.lc().cloned().unwrap_or_else(BigInt::one);
            let inv = mod_inverse(&lc, &modulus);
            lifted.push(mod_poly(&rest.scale(&inv), &modulus));
            break;
        }
        let others = factors[i + 1..]
            .iter()
            .fold(vec![1u64], |acc, g| zmodp::mul(&acc, g, p));
        let lc_p = zmodp::reduce(&IntPoly::constant(rest.lc().cloned().unwrap_or_else(BigInt::one)), p);
        let g0 = zmodp::mul(&others, &lc_p, p);
        let (_, s0, t0) = zmodp::xgcd(&g0, h0, p);
        let mut g = zmodp::to_intpoly(&g0);
        let mut h = zmodp::to_intpoly(h0);
        let mut s = zmodp::to_intpoly(&s0);
        let mut t = zmodp::to_intpoly(&t0);
        let mut m = pb.clone();
        for _ in 0..steps {
            let (g1, h1, s1, t1) = hensel_step(&rest, &g, &h, &s, &t, &m);
            g = g1;
            h = h1;
            s = s1;
            t = t1;
            m = &m * &m;
        }
        lifted.push(h);
        rest = g;
    }
    (lifted, modulus)
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let g = a.extended_gcd(m);
    assert!(g.gcd.is_one(), "no inverse modulo m");
    g.x.mod_floor(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_reconstructs_modulo_bound() {
        // f = (x^2 + 1)(x − 3)(2x + 5), factored mod 7
        let f = &(&IntPoly::from_i64s(&[1, 0, 1]) * &IntPoly::from_i64s(&[-3, 1])) * &IntPoly::from_i64s(&[5, 2]);
        let p = 7;
        let fp = zmodp::monic(&zmodp::reduce(&f, p), p);
        let mut parts = Vec::new();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(0);
        for (g, d) in zmodp::ddf(&fp, p) {
            parts.extend(zmodp::edf(&g, d, p, &mut rng));
        }
        let bound = BigInt::from(10).pow(12);
        let (lifted, m) = multifactor_lift(&f, &parts, p, &bound);
        assert!(m > bound);
        let lc = f.lc().unwrap().clone();
        let prod = lifted.iter().fold(IntPoly::constant(lc), |acc, g| mulm(&acc, g, &m));
        assert_eq!(prod, mod_poly(&f, &m));
    }
}
