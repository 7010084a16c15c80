//! Smallest degree parameter `T` satisfying
//! `(AZ)^T > (4T)^(96d²/T)·(M+1)^(16d)·H^(48d²)` with `T ≥ √(8d)`.
//!
//! In log form the gap is `F(T) = T·log AZ − (96d²/T)·log 4T − 16d·log(M+1) − 48d²·log H`,
//! and `F'(T) = log AZ + 96d²(log 4T − 1)/T² > 0` once `4T > e`, so `F` is
//! increasing on `T ≥ √8`. Bisection from `√(8d)` therefore finds the minimum.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Ball, Dyadic, Rational, Round};

#[derive(Clone, Debug, Serialize)]
pub struct MasserT {
    #[serde(with = "crate::exactnum::rational::as_string")]
    pub t: Rational,
    /// `F(t)`, certified positive.
    pub gap: Ball,
    /// Whether the floor `√(8d)` already satisfies the inequality.
    pub at_floor: bool,
}

/// `F(T)` in ball arithmetic.
pub fn masser_gap(az: &Ball, m: &Ball, h: &Ball, d: u32, t: &Rational, prec: u32) -> Result<Ball> {
    let d = d as i64;
    let tb = Ball::from_rational(t, prec);
    let lhs = &tb * &az.with_prec(prec).log()?;
    let four_t = tb.mul_pow2(2);
    let r1 = (&four_t.log()? * &Ball::from_int(96 * d * d, prec)).div(&tb)?;
    let r2 = &(&m.with_prec(prec) + &Ball::one(prec)).log()? * &Ball::from_int(16 * d, prec);
    let r3 = &h.with_prec(prec).log()? * &Ball::from_int(48 * d * d, prec);
    Ok(&(&(&lhs - &r1) - &r2) - &r3)
}

/// Whether `T` meets the floor and the inequality, when decidable at `prec`.
pub fn masser_holds(az: &Ball, m: &Ball, h: &Ball, d: u32, t: &Rational, prec: u32) -> Result<Option<bool>> {
    if t * t < Rational::from_integer(BigInt::from(8 * d)) {
        return Ok(Some(false));
    }
    let g = masser_gap(az, m, h, d, t, prec)?;
    Ok(if g.gt(&Ball::zero(prec)) {
        Some(true)
    } else if !g.upper().is_positive() {
        Some(false)
    } else {
        None
    })
}

fn sign(az: &Ball, m: &Ball, h: &Ball, d: u32, t: &Rational) -> Result<bool> {
    let mut prec = 128;
    loop {
        if let Some(s) = masser_holds(az, m, h, d, t, prec)? {
            return Ok(s);
        }
        if prec > 4096 {
            return Err(Error::uncertified("sign of the Masser gap undecided"));
        }
        prec *= 2;
    }
}

/// Minimal `T` up to relative `10⁻⁷`: the returned `T` satisfies the
/// inequality and `T·(1 − 10⁻⁶)` does not.
pub fn masser_t_threshold(az: &Ball, m: &Ball, h: &Ball, d: u32) -> Result<MasserT> {
    if d == 0 {
        return Err(Error::domain("d must be at least 1"));
    }
    if !az.gt(&Ball::one(az.prec())) {
        return Err(Error::domain("requires AZ > 1"));
    }
    if h.lt(&Ball::one(h.prec())) || !m.gt(&Ball::zero(m.prec())) {
        return Err(Error::domain("requires H ≥ 1 and M > 0"));
    }
    // smallest dyadic at or above √(8d) with 64 fractional bits
    let floor = Dyadic::from_int(8 * d as i64).sqrt(80, Round::Up).to_rational();
    let final_prec = 256;
    if sign(az, m, h, d, &floor)? {
        let gap = masser_gap(az, m, h, d, &floor, final_prec)?;
        return Ok(MasserT { t: floor, gap, at_floor: true });
    }
    let mut lo = floor.clone();
    let mut hi = &floor * Rational::from_integer(2.into());
    let mut doublings = 0;
    while !sign(az, m, h, d, &hi)? {
        lo = hi.clone();
        hi = &hi * Rational::from_integer(2.into());
        doublings += 1;
        if doublings > 200 {
            return Err(Error::guard("T exceeds 2^200 times the floor"));
        }
    }
    let tol = Rational::new(BigInt::one(), BigInt::from(10_000_000));
    while &hi - &lo > &hi * &tol {
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        // keep the midpoint dyadic and short
        let mid = Dyadic::from_rational(&mid, 96, Round::Nearest).to_rational();
        if sign(az, m, h, d, &mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let gap = masser_gap(az, m, h, d, &hi, final_prec)?;
    Ok(MasserT { t: hi, gap, at_floor: false })
}
