//! Truncated q-expansions of the modular lambda function and the discriminant
//! on `Im τ ≥ 1`, with certified tails.
//!
//! With `r = exp(πiτ/4)` and `ρ = |r|`,
//! `λ(τ) = (2 Σ_{n≥0} r^((2n+1)²))⁴ / (1 + 2 Σ_{n≥1} r^(4n²))⁴`.
//! Keeping `n < N` in the numerator leaves a tail of at most `2ρ^((2N+1)²)/(1−ρ)`,
//! and keeping `n ≤ N` in the denominator leaves at most `2ρ^(4(N+1)²)/(1−ρ)`.
//!
//! `Δ(τ) = (2π)¹² q ∏_{n≥1} (1 − qⁿ)²⁴` with `q = exp(2πiτ)`. Dropping the
//! factors `n > N` changes the logarithm by at most `t = 24|q|^(N+1)/(1−|q|)²`,
//! so for `t ≤ 1` the relative error is at most `2t`.

use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Ball, ComplexBall, Dyadic};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModularFn {
    Lambda,
    Delta,
}

impl FromStr for ModularFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda" => Ok(ModularFn::Lambda),
            "delta" => Ok(ModularFn::Delta),
            _ => Err(Error::parse(format!("unknown modular function '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModularValue {
    pub value: ComplexBall,
    /// Absolute error added for the truncated tail.
    pub tail: Ball,
    pub terms: u32,
}

fn widen(z: &ComplexBall, err: &Dyadic) -> ComplexBall {
    ComplexBall::new(z.re.add_error(err), z.im.add_error(err))
}

fn check_region(tau: &ComplexBall, prec: u32) -> Result<()> {
    if tau.im.lower() < Dyadic::one() {
        return Err(Error::domain(format!("requires Im τ ≥ 1, got {}", tau.im.with_prec(prec.min(64)))));
    }
    Ok(())
}

/// `exp(πiτ·k)` for rational `k`.
fn exp_pi_i(tau: &ComplexBall, k: &Ball) -> ComplexBall {
    let pi = Ball::pi(k.prec());
    // πiτk = πk(−Im τ + i·Re τ)
    let s = &pi * k;
    ComplexBall::new(-(&s * &tau.im), &s * &tau.re).exp()
}

fn check_tolerance(tail: &Ball, tol: Option<&Ball>, n: u32) -> Result<()> {
    if let Some(t) = tol {
        if !tail.lt(t) {
            return Err(Error::uncertified(format!("tail bound {tail} exceeds tolerance at N = {n}; increase N")));
        }
    }
    Ok(())
}

pub fn lambda_eval(tau: &ComplexBall, n_terms: u32, tol: Option<&Ball>) -> Result<ModularValue> {
    let prec = tau.prec();
    check_region(tau, prec)?;
    if n_terms == 0 {
        return Err(Error::domain("N must be at least 1"));
    }
    let wp = prec + 32;
    let tau = ComplexBall::new(tau.re.with_prec(wp), tau.im.with_prec(wp));
    // ρ = exp(−π·Im τ/4), bounded above through the lower end of Im τ
    let im_lo = Ball::exact(tau.im.lower(), wp);
    let rho = (-(&Ball::pi(wp) * &im_lo).mul_pow2(-2)).exp();
    let rho = Ball::exact(rho.upper(), wp);
    let one_minus = &Ball::one(wp) - &rho;
    let n = n_terms as i64;
    let num_tail = rho.pow_u(((2 * n + 1) * (2 * n + 1)) as u32).div(&one_minus)?.mul_pow2(1);
    let den_tail = rho.pow_u((4 * (n + 1) * (n + 1)) as u32).div(&one_minus)?.mul_pow2(1);
    let mut num = ComplexBall::zero(wp);
    for k in 0..n {
        let e = Ball::from_int((2 * k + 1) * (2 * k + 1), wp).mul_pow2(-2);
        num = &num + &exp_pi_i(&tau, &e);
    }
    let num = widen(&num.mul_pow2(1), &num_tail.upper());
    let mut den = ComplexBall::zero(wp);
    for k in 1..=n {
        den = &den + &exp_pi_i(&tau, &Ball::from_int(k * k, wp));
    }
    let den = widen(&(&ComplexBall::one(wp) + &den.mul_pow2(1)), &den_tail.upper());
    let value = num.div(&den)?.pow_u(4);
    let tail = (&num_tail + &den_tail).with_prec(prec);
    check_tolerance(&tail, tol, n_terms)?;
    Ok(ModularValue {
        value: ComplexBall::new(value.re.with_prec(prec), value.im.with_prec(prec)),
        tail,
        terms: n_terms,
    })
}

pub fn delta_eval(tau: &ComplexBall, n_terms: u32, tol: Option<&Ball>) -> Result<ModularValue> {
    let prec = tau.prec();
    check_region(tau, prec)?;
    let wp = prec + 32;
    let tau = ComplexBall::new(tau.re.with_prec(wp), tau.im.with_prec(wp));
    let im_lo = Ball::exact(tau.im.lower(), wp);
    let aq = (-(&Ball::pi(wp) * &im_lo).mul_pow2(1)).exp();
    let aq = Ball::exact(aq.upper(), wp);
    let one_minus = &Ball::one(wp) - &aq;
    let t = (&aq.pow_u(n_terms + 1) * &Ball::from_int(24, wp)).div(&one_minus.sqr())?;
    if !t.lt(&Ball::one(wp)) {
        return Err(Error::uncertified("product tail too large; increase N"));
    }
    let rel = t.mul_pow2(1);
    let q = exp_pi_i(&tau, &Ball::from_int(2, wp));
    let mut prod = ComplexBall::one(wp);
    let mut qn = q.clone();
    for _ in 1..=n_terms {
        prod = &prod * &(&ComplexBall::one(wp) - &qn);
        qn = &qn * &q;
    }
    let prod = prod.pow_u(24);
    let err = &prod.abs() * &rel;
    let prod = widen(&prod, &err.upper());
    let scale = Ball::pi(wp).mul_pow2(1).pow_u(12);
    let value = (&q * &prod).scale(&scale);
    let tail = (&(&q.abs() * &scale) * &err).with_prec(prec);
    check_tolerance(&rel.with_prec(prec), tol, n_terms)?;
    Ok(ModularValue {
        value: ComplexBall::new(value.re.with_prec(prec), value.im.with_prec(prec)),
        tail,
        terms: n_terms,
    })
}

pub fn modular_eval(which: ModularFn, tau: &ComplexBall, n_terms: u32, tol: Option<&Ball>) -> Result<ModularValue> {
    match which {
        ModularFn::Lambda => lambda_eval(tau, n_terms, tol),
        ModularFn::Delta => delta_eval(tau, n_terms, tol),
    }
}

/// Smallest term count whose tail is below `2^(−prec − 16)` relative to the
/// size of the leading term; uses the worst case `Im τ = 1`.
pub fn auto_terms(which: ModularFn, tau: &ComplexBall) -> u32 {
    let bits = tau.prec() as f64 + 16.0;
    let im = tau.im.lower().to_f64().max(1.0);
    let per = std::f64::consts::PI * im / std::f64::consts::LN_2;
    match which {
        // ρ^((2N+1)² − 1) relative to the leading r
        ModularFn::Lambda => {
            let mut n = 1u32;
            while per / 4.0 * (((2 * n + 1) * (2 * n + 1) - 1) as f64) < bits + 4.0 {
                n += 1;
            }
            n
        }
        ModularFn::Delta => {
            let mut n = 1u32;
            while 2.0 * per * (n as f64) < bits + 8.0 {
                n += 1;
            }
            n
        }
    }
}

pub fn modular_eval_auto(which: ModularFn, tau: &ComplexBall) -> Result<ModularValue> {
    modular_eval(which, tau, auto_terms(which, tau), None)
}
