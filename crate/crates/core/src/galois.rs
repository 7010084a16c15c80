//! Multiplicative orders, lifting exponents and degrees of cyclotomic
//! extensions of `Q_p`, with the resulting p-adic degree bounds.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::boettcher::{good_prime, Place};
use crate::dynamics::{snap_degree_multiset, PolyMap};
use crate::error::{Error, Result};
use crate::exactnum::rational::rational_height;
use crate::exactnum::{Ball, Rational};
use crate::nt::{carmichael, factor_u64, gcd_u64, is_prime_u64, pow_mod};

/// Least `f ≥ 1` with `a^f ≡ 1 (mod n)`.
pub fn mult_order(a: i64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::domain("modulus must be at least 2"));
    }
    let a = a.rem_euclid(n as i64) as u64;
    if gcd_u64(a, n) != 1 {
        return Err(Error::domain(format!("{a} is not a unit modulo {n}")));
    }
    let mut order = carmichael(n);
    for (q, _) in factor_u64(order) {
        while order.is_multiple_of(q) && pow_mod(a, order / q, n) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

/// `e` is the order of `a` modulo `q` (modulo 4 when `q = 2`) and `m` is
/// maximal with `a^e ≡ 1 (mod q^m)`. For `n ≥ m` the order of `a` modulo
/// `q^n` is `e·q^(n−m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LiftingExponent {
    pub a: i64,
    pub q: u64,
    pub e: u64,
    pub m: u32,
}

impl LiftingExponent {
    pub fn predicted_order(&self, n: u32) -> Option<u64> {
        if n < self.m {
            return None;
        }
        self.q.checked_pow(n - self.m).and_then(|x| x.checked_mul(self.e))
    }

    /// Compares the prediction with [`mult_order`] for `m ≤ n ≤ m + extra`.
    pub fn verify(&self, extra: u32) -> bool {
        (self.m..=self.m + extra).all(|n| match self.q.checked_pow(n) {
            Some(modulus) if modulus >= 2 => mult_order(self.a, modulus).ok() == self.predicted_order(n),
            Some(_) => true,
            None => true,
        })
    }
}

pub fn lifting_exponent(a: i64, q: u64) -> Result<LiftingExponent> {
    if !is_prime_u64(q) {
        return Err(Error::domain(format!("{q} is not prime")));
    }
    if a.unsigned_abs() <= 1 {
        return Err(Error::domain("base must satisfy |a| > 1"));
    }
    if a.rem_euclid(q as i64) == 0 {
        return Err(Error::domain(format!("{q} divides {a}")));
    }
    let e = if q == 2 { mult_order(a, 4)? } else { mult_order(a, q)? };
    let v = num_traits::pow(BigInt::from(a), e as usize) - BigInt::one();
    if v.is_zero() {
        return Err(Error::domain("a^e = 1 exactly; the exponent m is unbounded"));
    }
    let m = crate::nt::valuation(&v, &BigUint::from(q)) as u32;
    Ok(LiftingExponent { a, q, e, m })
}

/// `[Q_p(ζ_b) : Q_p] = ord_(b̃)(p) · φ(p^k)` for `b = p^k·b̃`, `p ∤ b̃`.
pub fn cyclotomic_degree_qp(p: u64, b: u64) -> Result<u64> {
    if !is_prime_u64(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if b == 0 {
        return Err(Error::domain("b must be positive"));
    }
    let mut k = 0u32;
    let mut rest = b;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    let unramified = if rest <= 2 { 1 } else { mult_order(p as i64, rest)? };
    let ramified = if k == 0 { 1 } else { p.pow(k - 1) * (p - 1) };
    Ok(unramified * ramified)
}

#[derive(Clone, Debug, Serialize)]
pub struct GalcorBound {
    pub degree: u64,
    /// Minimal `m ≥ 0` with `degree ≥ b·D^(−m)`.
    pub m: u32,
    #[serde(with = "crate::exactnum::rational::as_string")]
    pub bound: Rational,
    /// `(D − 1)·log p / log 2`.
    pub m_cap: Ball,
    /// Lifting data of `p` at the primes of `D` other than `p`.
    pub lifting: Vec<LiftingExponent>,
}

pub fn galcor_lower_bound(p: u64, b: u64, d: u64, prec: u32) -> Result<GalcorBound> {
    if d < 2 {
        return Err(Error::domain("D must be at least 2"));
    }
    let d_primes: Vec<u64> = factor_u64(d).into_iter().map(|(q, _)| q).collect();
    for (q, _) in factor_u64(b) {
        if !d_primes.contains(&q) {
            return Err(Error::domain(format!("prime {q} of b does not divide D = {d}")));
        }
    }
    let degree = cyclotomic_degree_qp(p, b)?;
    let mut m = 0u32;
    let mut scaled = BigUint::from(degree);
    while scaled < BigUint::from(b) {
        scaled *= d;
        m += 1;
    }
    let bound = Rational::new(BigInt::from(b), num_traits::pow(BigInt::from(d), m as usize));
    let m_cap = Ball::from_int(p as i64, prec)
        .log()?
        .div(&Ball::ln2(prec))?
        .mul_rational(&Rational::from_integer((d - 1).into()));
    let lifting = d_primes
        .iter()
        .filter(|&&q| q != p)
        .map(|&q| lifting_exponent(p as i64, q))
        .collect::<Result<Vec<_>>>()?;
    Ok(GalcorBound { degree, m, bound, m_cap, lifting })
}

#[derive(Clone, Debug, Serialize)]
pub struct PadicBound {
    pub prime: u64,
    /// `[Q_p(ζ_(D^n)) : Q_p]`, a lower bound for the largest degree in `S_{α,n}`.
    pub bound: u64,
    /// `m` of the cyclotomic bound at `b = D^n`; low-degree count bound is `d²·D^(2m)`.
    pub m: u32,
    /// `(D − 1)·h(α)/log 2`.
    pub m_cap: Ball,
    /// `D^(n − m_cap)`.
    pub height_scaled_bound: Ball,
    pub observed_max: Option<usize>,
    pub consistent: Option<bool>,
}

impl PadicBound {
    pub fn count_bound(&self, d: u64, big_d: u64) -> BigUint {
        BigUint::from(d).pow(2) * BigUint::from(big_d).pow(2 * self.m)
    }
}

pub fn padic_degree_bound(
    map: &PolyMap,
    alpha: &Rational,
    n: u32,
    cap: u64,
    seed: u64,
    prec: u32,
) -> Result<PadicBound> {
    let place = good_prime(map, alpha, prec)?.ok_or_else(|| Error::domain("no good nonarchimedean place"))?;
    let Place::Prime(p) = place.place else {
        unreachable!("good_prime returns primes only")
    };
    let d = map.degree() as u64;
    let b = d
        .checked_pow(n)
        .ok_or_else(|| Error::guard(format!("D^n = {d}^{n} does not fit in 64 bits")))?;
    let bound = cyclotomic_degree_qp(p, b)?;
    let gal = galcor_lower_bound(p, b, d, prec)?;
    let h = Ball::from_bigint(&rational_height(alpha), prec).log()?;
    let m_cap = h.mul_rational(&Rational::from_integer((d - 1).into())).div(&Ball::ln2(prec))?;
    let exponent = &Ball::from_int(n as i64, prec) - &m_cap;
    let height_scaled_bound = (&exponent * &Ball::from_int(d as i64, prec).log()?).exp();
    let (observed_max, consistent) = if b <= cap {
        let snap = snap_degree_multiset(map, alpha, n, cap, seed)?;
        let mx = snap.max_degree();
        (Some(mx), Some(bound as usize <= mx))
    } else {
        (None, None)
    };
    Ok(PadicBound { prime: p, bound, m: gal.m, m_cap, height_scaled_bound, observed_max, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::DEFAULT_DEGREE_CAP;
    use crate::exactnum::rational::rat;
    use crate::nt::euler_phi;

    fn naive_order(a: u64, n: u64) -> u64 {
        let mut x = a % n;
        let mut k = 1;
        while x != 1 {
            x = x * a % n;
            k += 1;
        }
        k
    }

    #[test]
    fn order_examples() {
        assert_eq!(mult_order(2, 5).unwrap(), 4);
        assert_eq!(mult_order(7, 9).unwrap(), 3);
        assert_eq!(mult_order(3, 8).unwrap(), 2);
        assert!(mult_order(6, 9).is_err());
        assert_eq!(mult_order(-1, 7).unwrap(), 2);
    }

    #[test]
    fn order_matches_naive() {
        for n in 2..=120u64 {
            for a in 2..n {
                if gcd_u64(a, n) == 1 {
                    assert_eq!(mult_order(a as i64, n).unwrap(), naive_order(a, n), "{a} mod {n}");
                }
            }
        }
    }

    #[test]
    fn lifting_examples() {
        let l = lifting_exponent(7, 3).unwrap();
        assert_eq!((l.e, l.m), (1, 1));
        assert_eq!(l.predicted_order(3), Some(9));
        assert_eq!(mult_order(7, 27).unwrap(), 9);
        let l = lifting_exponent(3, 2).unwrap();
        assert_eq!((l.e, l.m), (2, 3));
        let l = lifting_exponent(2, 5).unwrap();
        assert_eq!((l.e, l.m), (4, 1));
        assert!(lifting_exponent(6, 3).is_err());
        assert!(lifting_exponent(1, 3).is_err());
    }

    #[test]
    fn lifting_prediction_small() {
        for q in [2u64, 3, 5, 7] {
            for a in 2..30i64 {
                if a % q as i64 != 0 {
                    assert!(lifting_exponent(a, q).unwrap().verify(3), "a = {a}, q = {q}");
                }
            }
        }
    }

    #[test]
    fn cyclotomic_examples() {
        for k in 1..=10 {
            assert_eq!(cyclotomic_degree_qp(2, 1 << k).unwrap(), 1 << (k - 1));
        }
        assert_eq!(cyclotomic_degree_qp(3, 8).unwrap(), 2);
        assert_eq!(cyclotomic_degree_qp(5, 12).unwrap(), 2);
        assert_eq!(cyclotomic_degree_qp(7, 1).unwrap(), 1);
        for p in [2u64, 3, 5, 7, 11] {
            for b in 1..=200u64 {
                assert_eq!(euler_phi(b) % cyclotomic_degree_qp(p, b).unwrap(), 0);
            }
        }
    }

    #[test]
    fn galcor_examples() {
        for n in 1..=8u32 {
            let g = galcor_lower_bound(2, 1 << n, 2, 64).unwrap();
            assert_eq!(g.degree, 1 << (n - 1));
            assert_eq!(g.m, 1);
        }
        let g = galcor_lower_bound(7, 4, 2, 64).unwrap();
        assert_eq!((g.degree, g.m), (2, 1));
        let g = galcor_lower_bound(3, 1, 2, 64).unwrap();
        assert_eq!((g.degree, g.m, g.bound.clone()), (1, 0, rat(1, 1)));
        assert!(galcor_lower_bound(3, 6, 2, 64).is_err());
        for p in [3u64, 5, 7] {
            for b in [1u64, 2, 4, 8, 16, 32] {
                let g = galcor_lower_bound(p, b, 2, 64).unwrap();
                assert!(g.bound <= Rational::from_integer(g.degree.into()));
            }
        }
    }

    #[test]
    fn padic_examples() {
        let m = PolyMap::parse("X^2").unwrap();
        let b = padic_degree_bound(&m, &rat(1, 8), 3, DEFAULT_DEGREE_CAP, 0, 64).unwrap();
        assert_eq!((b.prime, b.bound, b.observed_max), (2, 4, Some(4)));
        let b = padic_degree_bound(&m, &rat(1, 8), 1, DEFAULT_DEGREE_CAP, 0, 64).unwrap();
        assert_eq!((b.bound, b.observed_max), (1, Some(1)));
        let m1 = PolyMap::parse("X^2 + 1").unwrap();
        let b = padic_degree_bound(&m1, &rat(1, 8), 2, DEFAULT_DEGREE_CAP, 0, 64).unwrap();
        assert_eq!(b.bound, 2);
        assert_eq!(b.consistent, Some(true));
        assert!(padic_degree_bound(&m, &rat(3, 1), 2, DEFAULT_DEGREE_CAP, 0, 64).is_err());
    }
}
