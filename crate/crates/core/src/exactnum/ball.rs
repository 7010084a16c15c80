//! Midpoint–radius enclosures over dyadic numbers.
//!
//! A [`Ball`] stands for the closed interval `[mid − rad, mid + rad]`. Every
//! operation returns a ball containing all exact results for inputs taken
//! from its operands: the exact midpoint result is computed in dyadic
//! arithmetic, rounded to the working precision, and the rounding error is
//! added to the (upward-rounded) radius.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::dyadic::{Dyadic, Round};
use super::poly::RatPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Mantissa bits kept in radii.
const RAD_BITS: u32 = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    mid: Dyadic,
    rad: Dyadic,
    prec: u32,
}

fn rad_up(r: Dyadic) -> Dyadic {
    r.round(RAD_BITS, Round::Up)
}

impl Ball {
    /// Rounds an exact midpoint to `prec` bits, moving the error into the radius.
    fn settle(exact_mid: Dyadic, rad: Dyadic, prec: u32) -> Ball {
        let mid = exact_mid.round(prec, Round::Nearest);
        let err = (&exact_mid - &mid).abs();
        Ball { mid, rad: rad_up(&rad + &err), prec }
    }

    pub fn new(mid: Dyadic, rad: Dyadic, prec: u32) -> Ball {
        assert!(!rad.is_negative(), "negative ball radius");
        Ball::settle(mid, rad, prec)
    }

    pub fn exact(mid: Dyadic, prec: u32) -> Ball {
        Ball::settle(mid, Dyadic::zero(), prec)
    }

    pub fn zero(prec: u32) -> Ball {
        Ball { mid: Dyadic::zero(), rad: Dyadic::zero(), prec }
    }

    pub fn one(prec: u32) -> Ball {
        Ball::from_int(1, prec)
    }

    pub fn from_int(n: i64, prec: u32) -> Ball {
        Ball::exact(Dyadic::from_int(n), prec)
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Ball {
        Ball::exact(Dyadic::from_int(n.clone()), prec)
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Ball {
        let lo = Dyadic::from_rational(q, prec + 2, Round::Down);
        let hi = Dyadic::from_rational(q, prec + 2, Round::Up);
        Ball::from_endpoints(&lo, &hi, prec)
    }

    /// Smallest ball (up to rounding) containing `[lo, hi]`.
    pub fn from_endpoints(lo: &Dyadic, hi: &Dyadic, prec: u32) -> Ball {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let mid = (lo + hi).mul_pow2(-1).round(prec, Round::Nearest);
        let rad = Dyadic::max(&(hi - &mid), &(&mid - lo));
        Ball { mid, rad: rad_up(rad), prec }
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> &Dyadic {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Ball {
        Ball::settle(self.mid.clone(), self.rad.clone(), prec)
    }

    /// Enlarges the radius by `extra ≥ 0`.
    pub fn add_error(&self, extra: &Dyadic) -> Ball {
        Ball { mid: self.mid.clone(), rad: rad_up(&self.rad + &extra.abs()), prec: self.prec }
    }

    pub fn lower(&self) -> Dyadic {
        &self.mid - &self.rad
    }

    pub fn upper(&self) -> Dyadic {
        &self.mid + &self.rad
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn rad_f64(&self) -> f64 {
        self.rad.to_f64()
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.lower().is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.upper().is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    pub fn contains_dyadic(&self, x: &Dyadic) -> bool {
        (&self.mid - x).abs() <= self.rad
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        let d = (self.mid.to_rational() - q).abs();
        d <= self.rad.to_rational()
    }

    /// Whether `other` lies entirely inside `self`.
    pub fn contains(&self, other: &Ball) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn overlaps(&self, other: &Ball) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    /// Certainly `self < other`.
    pub fn lt(&self, other: &Ball) -> bool {
        self.upper() < other.lower()
    }

    /// Certainly `self > other`.
    pub fn gt(&self, other: &Ball) -> bool {
        other.lt(self)
    }

    pub fn hull(&self, other: &Ball) -> Ball {
        let lo = Dyadic::min(&self.lower(), &other.lower());
        let hi = Dyadic::max(&self.upper(), &other.upper());
        Ball::from_endpoints(&lo, &hi, self.prec.max(other.prec))
    }

    pub fn abs(&self) -> Ball {
        if self.is_negative() {
            -self
        } else if self.is_positive() {
            self.clone()
        } else {
            let hi = Dyadic::max(&self.upper(), &-self.lower());
            Ball::from_endpoints(&Dyadic::zero(), &hi, self.prec)
        }
    }

    pub fn max(&self, other: &Ball) -> Ball {
        let lo = Dyadic::max(&self.lower(), &other.lower());
        let hi = Dyadic::max(&self.upper(), &other.upper());
        Ball::from_endpoints(&lo, &hi, self.prec.max(other.prec))
    }

    pub fn min(&self, other: &Ball) -> Ball {
        let lo = Dyadic::min(&self.lower(), &other.lower());
        let hi = Dyadic::min(&self.upper(), &other.upper());
        Ball::from_endpoints(&lo, &hi, self.prec.max(other.prec))
    }

    pub fn mul_pow2(&self, k: i64) -> Ball {
        Ball { mid: self.mid.mul_pow2(k), rad: self.rad.mul_pow2(k), prec: self.prec }
    }

    pub fn sqr(&self) -> Ball {
        if self.contains_zero() {
            let m = Dyadic::max(&self.upper(), &-self.lower());
            let hi = (&m * &m).round(self.prec + 2, Round::Up);
            return Ball::from_endpoints(&Dyadic::zero(), &hi, self.prec);
        }
        self * self
    }

    pub fn pow_u(&self, mut e: u32) -> Ball {
        let mut acc = Ball::one(self.prec);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    /// `1 / self`; fails when the ball contains zero.
    pub fn inv(&self) -> Result<Ball> {
        Ball::one(self.prec).div(self)
    }

    pub fn div(&self, other: &Ball) -> Result<Ball> {
        if other.contains_zero() {
            return Err(Error::uncertified("division by a ball containing zero"));
        }
        let prec = self.prec.max(other.prec);
        let bm = &other.mid;
        let qd = Dyadic::div(&self.mid, bm, prec + 4, Round::Down);
        let qu = Dyadic::div(&self.mid, bm, prec + 4, Round::Up);
        let mid_err = &qu - &qd;
        let bm_abs = bm.abs();
        // |x/y − am/bm| ≤ (ra·|bm| + |am|·rb) / (|bm|·(|bm| − rb))
        let num = &(&self.rad * &bm_abs) + &(&self.mid.abs() * &other.rad);
        let den = &bm_abs * &(&bm_abs - &other.rad);
        let prop = if num.is_zero() {
            Dyadic::zero()
        } else {
            Dyadic::div(&num, &den, RAD_BITS, Round::Up)
        };
        Ok(Ball::settle(qd, &mid_err + &prop, prec))
    }

    pub fn div_int(&self, n: i64) -> Ball {
        self.div(&Ball::from_int(n, self.prec)).expect("nonzero integer divisor")
    }

    pub fn mul_rational(&self, q: &Rational) -> Ball {
        self * &Ball::from_rational(q, self.prec)
    }

    pub fn sqrt(&self) -> Result<Ball> {
        let lo = self.lower();
        if lo.is_negative() {
            if self.upper().is_negative() {
                return Err(Error::domain("square root of a negative ball"));
            }
            return Err(Error::uncertified("square root of a ball straddling zero"));
        }
        let wp = self.prec + 4;
        let l = lo.sqrt(wp, Round::Down);
        let h = self.upper().sqrt(wp, Round::Up);
        Ok(Ball::from_endpoints(&l, &h, self.prec))
    }

    pub fn exp(&self) -> Ball {
        if self.is_exact() {
            return exp_point(&self.mid, self.prec);
        }
        let lo = exp_point(&self.lower(), self.prec).lower();
        let hi = exp_point(&self.upper(), self.prec).upper();
        Ball::from_endpoints(&lo, &hi, self.prec)
    }

    pub fn log(&self) -> Result<Ball> {
        if !self.is_positive() {
            return Err(if self.upper().is_positive() {
                Error::uncertified("logarithm of a ball touching zero")
            } else {
                Error::domain("logarithm of a nonpositive value")
            });
        }
        if self.is_exact() {
            return Ok(log_point(&self.mid, self.prec));
        }
        let lo = log_point(&self.lower(), self.prec).lower();
        let hi = log_point(&self.upper(), self.prec).upper();
        Ok(Ball::from_endpoints(&lo, &hi, self.prec))
    }

    /// `self^y` for `self > 0`.
    pub fn pow(&self, y: &Ball) -> Result<Ball> {
        Ok((&self.log()? * y).exp())
    }

    pub fn cos(&self) -> Ball {
        let (c, _) = cos_sin_point(&self.mid, self.prec);
        c.add_error(&self.rad)
    }

    pub fn sin(&self) -> Ball {
        let (_, s) = cos_sin_point(&self.mid, self.prec);
        s.add_error(&self.rad)
    }

    pub fn pi(prec: u32) -> Ball {
        let wp = prec + 16;
        let a = atan_inv(5, wp);
        let b = atan_inv(239, wp);
        (&a.mul_pow2(4) - &b.mul_pow2(2)).with_prec(prec)
    }

    pub fn ln2(prec: u32) -> Ball {
        let wp = prec + 16;
        let t = Ball::from_rational(&Rational::new(BigInt::one(), BigInt::from(3)), wp);
        atanh_series(&t, wp).mul_pow2(1).with_prec(prec)
    }

    /// Euler's number.
    pub fn e(prec: u32) -> Ball {
        exp_point(&Dyadic::one(), prec)
    }

    /// Decimal rendering `(mid, rad)` whose printed interval contains this ball.
    pub fn to_decimal(&self) -> (String, String) {
        decimal_pair(self)
    }
}

impl Add for &Ball {
    type Output = Ball;
    fn add(self, rhs: &Ball) -> Ball {
        Ball::settle(&self.mid + &rhs.mid, &self.rad + &rhs.rad, self.prec.max(rhs.prec))
    }
}

impl Sub for &Ball {
    type Output = Ball;
    fn sub(self, rhs: &Ball) -> Ball {
        Ball::settle(&self.mid - &rhs.mid, &self.rad + &rhs.rad, self.prec.max(rhs.prec))
    }
}

impl Mul for &Ball {
    type Output = Ball;
    fn mul(self, rhs: &Ball) -> Ball {
        let rad = &(&(&self.mid.abs() * &rhs.rad) + &(&rhs.mid.abs() * &self.rad)) + &(&self.rad * &rhs.rad);
        Ball::settle(&self.mid * &rhs.mid, rad, self.prec.max(rhs.prec))
    }
}

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball { mid: -&self.mid, rad: self.rad.clone(), prec: self.prec }
    }
}

impl Add for Ball {
    type Output = Ball;
    fn add(self, rhs: Ball) -> Ball {
        &self + &rhs
    }
}

impl Sub for Ball {
    type Output = Ball;
    fn sub(self, rhs: Ball) -> Ball {
        &self - &rhs
    }
}

impl Mul for Ball {
    type Output = Ball;
    fn mul(self, rhs: Ball) -> Ball {
        &self * &rhs
    }
}

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        -&self
    }
}

/// `exp(x)` at an exact point: Taylor series on `x / 2^k`, then `k` squarings.
fn exp_point(x: &Dyadic, prec: u32) -> Ball {
    if x.is_zero() {
        return Ball::one(prec);
    }
    let k = (x.mag_exp() + 10).max(0);
    let wp = prec + k as u32 + 24;
    let r = Ball::exact(x.mul_pow2(-k), wp);
    let eps = Dyadic::pow2(-(wp as i64) - 8);
    let mut sum = Ball::one(wp);
    let mut term = Ball::one(wp);
    let mut n = 1i64;
    loop {
        term = (&term * &r).div_int(n);
        sum = &sum + &term;
        if term.abs().upper() < eps {
            break;
        }
        n += 1;
    }
    // remaining terms are dominated by a geometric series with ratio |r| < 1/2
    let tail = term.abs().upper().mul_pow2(1);
    let mut acc = sum.add_error(&tail);
    for _ in 0..k {
        acc = acc.sqr();
    }
    acc.with_prec(prec)
}

/// `Σ t^(2j+1)/(2j+1)` for `|t| ≤ 1/3`.
fn atanh_series(t: &Ball, wp: u32) -> Ball {
    let t2 = t.sqr();
    let eps = Dyadic::pow2(-(wp as i64) - 8);
    let mut pw = t.clone();
    let mut sum = t.clone();
    let mut j = 1i64;
    loop {
        pw = &pw * &t2;
        let term = pw.div_int(2 * j + 1);
        sum = &sum + &term;
        if pw.abs().upper() < eps {
            break;
        }
        j += 1;
    }
    // tail ≤ |t|^(2j+3) / (1 − t²) ≤ 2 |pw|
    sum.add_error(&pw.abs().upper().mul_pow2(1))
}

/// `atan(1/k)` by its alternating series.
fn atan_inv(k: i64, wp: u32) -> Ball {
    let t = Ball::from_rational(&Rational::new(BigInt::one(), BigInt::from(k)), wp);
    let t2 = t.sqr();
    let eps = Dyadic::pow2(-(wp as i64) - 8);
    let mut pw = t.clone();
    let mut sum = t.clone();
    let mut j = 1i64;
    loop {
        pw = &pw * &t2;
        let term = pw.div_int(2 * j + 1);
        sum = if j % 2 == 1 { &sum - &term } else { &sum + &term };
        if pw.abs().upper() < eps {
            break;
        }
        j += 1;
    }
    sum.add_error(&pw.abs().upper())
}

/// `log(x)` for exact `x > 0`: `x = m · 2^e` with `m ∈ [2/3, 4/3]`.
fn log_point(x: &Dyadic, prec: u32) -> Ball {
    assert!(x.is_positive());
    let wp = prec + 24;
    let mut e = x.mag_exp();
    let mut m = x.mul_pow2(-e);
    if m > Dyadic::from_rational(&Rational::new(BigInt::from(4), BigInt::from(3)), 8, Round::Down) {
        m = m.mul_pow2(-1);
        e += 1;
    }
    let mb = Ball::exact(m, wp);
    let one = Ball::one(wp);
    let t = (&mb - &one).div(&(&mb + &one)).expect("m + 1 > 0");
    let log_m = atanh_series(&t, wp).mul_pow2(1);
    let res = if e == 0 {
        log_m
    } else {
        &log_m + &(&Ball::ln2(wp) * &Ball::from_int(e, wp))
    };
    res.with_prec(prec)
}

/// `(cos x, sin x)` at an exact point by halving and the double-angle formulas.
fn cos_sin_point(x: &Dyadic, prec: u32) -> (Ball, Ball) {
    if x.is_zero() {
        return (Ball::one(prec), Ball::zero(prec));
    }
    let k = (x.mag_exp() + 6).max(0);
    let wp = prec + 2 * k as u32 + 24;
    let r = Ball::exact(x.mul_pow2(-k), wp);
    let r2 = r.sqr();
    let eps = Dyadic::pow2(-(wp as i64) - 8);
    let mut c = Ball::one(wp);
    let mut s = r.clone();
    let mut term_c = Ball::one(wp);
    let mut term_s = r.clone();
    let mut j = 1i64;
    loop {
        term_c = (&term_c * &r2).div_int((2 * j - 1) * (2 * j));
        term_s = (&term_s * &r2).div_int((2 * j) * (2 * j + 1));
        if j % 2 == 1 {
            c = &c - &term_c;
            s = &s - &term_s;
        } else {
            c = &c + &term_c;
            s = &s + &term_s;
        }
        if term_c.abs().upper() < eps && term_s.abs().upper() < eps {
            break;
        }
        j += 1;
    }
    let tail = Dyadic::max(&term_c.abs().upper(), &term_s.abs().upper());
    c = c.add_error(&tail);
    s = s.add_error(&tail);
    let one = Ball::one(wp);
    for _ in 0..k {
        let s2 = (&s * &c).mul_pow2(1);
        let c2 = &c.sqr().mul_pow2(1) - &one;
        s = s2;
        c = c2;
    }
    (c.with_prec(prec), s.with_prec(prec))
}

/// Horner evaluation of a rational polynomial on a real ball.
pub fn ball_eval_poly(p: &RatPoly, z: &Ball) -> Ball {
    let prec = z.prec();
    let mut acc = Ball::zero(prec);
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * z) + &Ball::from_rational(c, prec);
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: Ball,
    pub im: Ball,
}

impl ComplexBall {
    pub fn new(re: Ball, im: Ball) -> Self {
        ComplexBall { re, im }
    }

    pub fn from_real(re: Ball) -> Self {
        let prec = re.prec();
        ComplexBall { re, im: Ball::zero(prec) }
    }

    pub fn zero(prec: u32) -> Self {
        ComplexBall::from_real(Ball::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        ComplexBall::from_real(Ball::one(prec))
    }

    pub fn i(prec: u32) -> Self {
        ComplexBall { re: Ball::zero(prec), im: Ball::one(prec) }
    }

    pub fn from_rationals(re: &Rational, im: &Rational, prec: u32) -> Self {
        ComplexBall { re: Ball::from_rational(re, prec), im: Ball::from_rational(im, prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn conj(&self) -> Self {
        ComplexBall { re: self.re.clone(), im: -&self.im }
    }

    pub fn scale(&self, s: &Ball) -> Self {
        ComplexBall { re: &self.re * s, im: &self.im * s }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        ComplexBall { re: self.re.mul_pow2(k), im: self.im.mul_pow2(k) }
    }

    pub fn abs2(&self) -> Ball {
        &self.re.sqr() + &self.im.sqr()
    }

    pub fn abs(&self) -> Ball {
        let a2 = self.abs2();
        match a2.sqrt() {
            Ok(b) => b,
            Err(_) => {
                // ball straddles zero only when the radius dominates; clamp the lower end
                let hi = a2.upper().sqrt(a2.prec() + 4, Round::Up);
                Ball::from_endpoints(&Dyadic::zero(), &hi, a2.prec())
            }
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        let d = self.abs2();
        Ok(ComplexBall { re: self.re.div(&d)?, im: (-&self.im).div(&d)? })
    }

    pub fn div(&self, other: &ComplexBall) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow_u(&self, mut e: u32) -> Self {
        let mut acc = ComplexBall::one(self.prec());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn exp(&self) -> Self {
        let m = self.re.exp();
        ComplexBall { re: &m * &self.im.cos(), im: &m * &self.im.sin() }
    }

    /// Whether the rectangle contains the exact point `re + i·im`.
    pub fn contains_rationals(&self, re: &Rational, im: &Rational) -> bool {
        self.re.contains_rational(re) && self.im.contains_rational(im)
    }

    /// Radius of a disk around the midpoint containing the rectangle.
    pub fn disk_radius(&self) -> Dyadic {
        let r = &self.re.rad().clone() + self.im.rad();
        rad_up(r)
    }
}

impl Add for &ComplexBall {
    type Output = ComplexBall;
    fn add(self, rhs: &ComplexBall) -> ComplexBall {
        ComplexBall { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &ComplexBall {
    type Output = ComplexBall;
    fn sub(self, rhs: &ComplexBall) -> ComplexBall {
        ComplexBall { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &ComplexBall {
    type Output = ComplexBall;
    fn mul(self, rhs: &ComplexBall) -> ComplexBall {
        ComplexBall {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Neg for &ComplexBall {
    type Output = ComplexBall;
    fn neg(self) -> ComplexBall {
        ComplexBall { re: -&self.re, im: -&self.im }
    }
}

/// Horner evaluation of a rational polynomial on a complex ball.
pub fn ball_eval_poly_complex(p: &RatPoly, z: &ComplexBall) -> ComplexBall {
    let prec = z.prec();
    let mut acc = ComplexBall::zero(prec);
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * z) + &ComplexBall::from_real(Ball::from_rational(c, prec));
    }
    acc
}

// ---------------------------------------------------------------------------
// decimal output

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

/// Rounds `v > 0` to `sig` significant decimal digits: returns `(digits, e10)` with
/// `v ≈ digits · 10^(e10 − sig + 1)`.
fn sci_round(v: &Rational, sig: u32, dir: Round) -> (BigInt, i64) {
    let approx = v.numer().bits() as f64 - v.denom().bits() as f64;
    let mut e10 = (approx * std::f64::consts::LOG10_2).floor() as i64;
    // fix the estimate so that 10^e10 ≤ v < 10^(e10+1)
    let ten_pow = |e: i64| -> Rational {
        if e >= 0 {
            Rational::from_integer(pow10(e as u32))
        } else {
            Rational::new(BigInt::one(), pow10((-e) as u32))
        }
    };
    while &ten_pow(e10) > v {
        e10 -= 1;
    }
    while &ten_pow(e10 + 1) <= v {
        e10 += 1;
    }
    let scaled = v / ten_pow(e10 - sig as i64 + 1);
    let fl = scaled.floor().to_integer();
    let frac = &scaled - Rational::from_integer(fl.clone());
    let mut digits = match dir {
        Round::Down => fl,
        Round::Up => {
            if frac.is_zero() {
                fl
            } else {
                fl + 1
            }
        }
        Round::Nearest => {
            if frac * Rational::from_integer(BigInt::from(2)) >= Rational::one() {
                fl + 1
            } else {
                fl
            }
        }
    };
    if digits >= pow10(sig) {
        digits /= 10;
        e10 += 1;
    }
    (digits, e10)
}

fn fmt_sci(neg: bool, digits: &BigInt, e10: i64) -> String {
    let s = digits.to_string();
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{e10}")
    } else {
        format!("{sign}{head}.{tail}e{e10}")
    }
}

fn sci_value(digits: &BigInt, e10: i64, sig: u32) -> Rational {
    let e = e10 - sig as i64 + 1;
    if e >= 0 {
        Rational::from_integer(digits * pow10(e as u32))
    } else {
        Rational::new(digits.clone(), pow10((-e) as u32))
    }
}

fn decimal_pair(b: &Ball) -> (String, String) {
    let mid = b.mid.to_rational();
    let rad = b.rad.to_rational();
    let max_sig = ((b.prec as f64) * std::f64::consts::LOG10_2).ceil() as u32 + 1;
    if mid.is_zero() {
        return ("0".to_string(), fmt_rad(&rad));
    }
    let mag = mid.abs();
    let sig = if rad.is_zero() {
        max_sig
    } else {
        let rel = (mag.numer().bits() as f64 - mag.denom().bits() as f64)
            - (rad.numer().bits() as f64 - rad.denom().bits() as f64);
        ((rel * std::f64::consts::LOG10_2).floor() as i64 + 3).clamp(3, max_sig as i64) as u32
    };
    let (digits, e10) = sci_round(&mag, sig, Round::Nearest);
    let printed = sci_value(&digits, e10, sig);
    let err = (&printed - &mag).abs();
    let total = &rad + &err;
    (fmt_sci(mid.is_negative(), &digits, e10), fmt_rad(&total))
}

fn fmt_rad(r: &Rational) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let (digits, e10) = sci_round(r, 3, Round::Up);
    fmt_sci(false, &digits, e10)
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, r) = self.to_decimal();
        write!(f, "{m} +/- {r}")
    }
}

impl Serialize for Ball {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let (m, r) = self.to_decimal();
        let mut st = s.serialize_struct("Ball", 3)?;
        st.serialize_field("mid", &m)?;
        st.serialize_field("rad", &r)?;
        st.serialize_field("prec", &self.prec)?;
        st.end()
    }
}

impl Serialize for ComplexBall {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ComplexBall", 2)?;
        st.serialize_field("re", &self.re)?;
        st.serialize_field("im", &self.im)?;
        st.end()
    }
}
