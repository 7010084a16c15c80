//! Certified isolation of the complex roots of a squarefree integer polynomial.
//!
//! Approximations come from Aberth iteration in rounded dyadic arithmetic.
//! Each approximation `z_k` gets the disk of radius `n·|W_k|`, where
//! `W_k = p(z_k) / (lc · ∏_{j≠k} (z_k − z_j))` is the Weierstrass correction,
//! evaluated in ball arithmetic. When these disks are pairwise disjoint each
//! holds exactly one root. Roots that are rational are detected and returned
//! with radius zero.

use num_traits::{Signed, ToPrimitive, Zero};

use super::ball::{Ball, ComplexBall};
use super::dyadic::{Dyadic, Round};
use super::poly::IntPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Cx {
    re: Dyadic,
    im: Dyadic,
}

impl Cx {
    fn zero() -> Self {
        Cx { re: Dyadic::zero(), im: Dyadic::zero() }
    }

    fn from_f64(re: f64, im: f64) -> Self {
        Cx { re: Dyadic::from_f64(re), im: Dyadic::from_f64(im) }
    }

    fn add(&self, o: &Cx, wp: u32) -> Cx {
        Cx { re: (&self.re + &o.re).round(wp, Round::Nearest), im: (&self.im + &o.im).round(wp, Round::Nearest) }
    }

    fn sub(&self, o: &Cx, wp: u32) -> Cx {
        Cx { re: (&self.re - &o.re).round(wp, Round::Nearest), im: (&self.im - &o.im).round(wp, Round::Nearest) }
    }

    fn mul(&self, o: &Cx, wp: u32) -> Cx {
        let re = &(&self.re * &o.re) - &(&self.im * &o.im);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        Cx { re: re.round(wp, Round::Nearest), im: im.round(wp, Round::Nearest) }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn div(&self, o: &Cx, wp: u32) -> Option<Cx> {
        let den = &(&o.re * &o.re) + &(&o.im * &o.im);
        if den.is_zero() {
            return None;
        }
        let re = &(&self.re * &o.re) + &(&self.im * &o.im);
        let im = &(&self.im * &o.re) - &(&self.re * &o.im);
        Some(Cx {
            re: Dyadic::div(&re, &den, wp, Round::Nearest),
            im: Dyadic::div(&im, &den, wp, Round::Nearest),
        })
    }

    fn mag_exp(&self) -> i64 {
        self.re.mag_exp().max(self.im.mag_exp())
    }

    fn ball(&self, prec: u32) -> ComplexBall {
        ComplexBall::new(Ball::exact(self.re.clone(), prec), Ball::exact(self.im.clone(), prec))
    }
}

/// `(p(z), p'(z))` by Horner.
fn eval_with_derivative(p: &IntPoly, z: &Cx, wp: u32) -> (Cx, Cx) {
    let mut v = Cx::zero();
    let mut dv = Cx::zero();
    for c in p.coeffs().iter().rev() {
        dv = dv.mul(z, wp).add(&v, wp);
        v = v.mul(z, wp);
        v = Cx { re: &v.re + &Dyadic::from_int(c.clone()), im: v.im };
    }
    (v, dv)
}

fn cauchy_bound(p: &IntPoly) -> f64 {
    let lc = p.lc().and_then(|c| c.abs().to_f64()).unwrap_or(1.0);
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs().to_f64().unwrap_or(f64::MAX) / lc)
        .fold(0.0, f64::max);
    1.0 + m.min(1e300)
}

fn initial_points(p: &IntPoly) -> Vec<Cx> {
    let n = p.degree().unwrap_or(0);
    let r = cauchy_bound(p);
    (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            // slightly different moduli break symmetric stalls
            let rk = r * (1.0 - 0.05 * (k % 3) as f64 / 3.0);
            Cx::from_f64(rk * t.cos(), rk * t.sin())
        })
        .collect()
}

/// Aberth sweeps until the corrections fall below `2^-(wp-8)` relative size.
fn aberth(p: &IntPoly, zs: &mut [Cx], wp: u32, max_iter: usize) -> bool {
    let n = zs.len();
    for _ in 0..max_iter {
        let mut converged = true;
        for k in 0..n {
            let (v, dv) = eval_with_derivative(p, &zs[k], wp);
            if v.is_zero() {
                continue;
            }
            let Some(newton) = v.div(&dv, wp) else {
                zs[k] = zs[k].add(&Cx::from_f64(1e-3, 1e-3), wp);
                converged = false;
                continue;
            };
            let mut s = Cx::zero();
            for j in 0..n {
                if j != k {
                    let diff = zs[k].sub(&zs[j], wp);
                    if let Some(inv) = Cx::from_f64(1.0, 0.0).div(&diff, wp) {
                        s = s.add(&inv, wp);
                    }
                }
            }
            let one = Cx::from_f64(1.0, 0.0);
            let den = one.sub(&newton.mul(&s, wp), wp);
            let w = newton.div(&den, wp).unwrap_or(newton);
            let scale = zs[k].mag_exp().max(0);
            if w.mag_exp() > scale - wp as i64 + 8 {
                converged = false;
            }
            zs[k] = zs[k].sub(&w, wp);
        }
        if converged {
            return true;
        }
    }
    false
}

/// Inclusion radius `n·|W_k|` (upper bound) for every approximation.
fn inclusion_radii(p: &IntPoly, zs: &[Cx], wp: u32) -> Option<Vec<Dyadic>> {
    let n = zs.len();
    let lc = Ball::from_bigint(p.lc()?, wp);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let zk = zs[k].ball(wp);
        let mut val = ComplexBall::zero(wp);
        for c in p.coeffs().iter().rev() {
            val = &(&val * &zk) + &ComplexBall::from_real(Ball::from_bigint(c, wp));
        }
        let mut den = ComplexBall::from_real(lc.clone());
        for j in 0..n {
            if j != k {
                den = &den * &(&zk - &zs[j].ball(wp));
            }
        }
        let w = val.div(&den).ok()?;
        let r = w.abs().upper();
        out.push((&r * &Dyadic::from_int(n as i64)).round(30, Round::Up));
    }
    Some(out)
}

fn disjoint(zs: &[Cx], radii: &[Dyadic], wp: u32) -> bool {
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            let d = (&zs[i].ball(wp) - &zs[j].ball(wp)).abs();
            if d.lower() <= &radii[i] + &radii[j] {
                return false;
            }
        }
    }
    true
}

/// Simplest rational strictly inside `(lo, hi)` or equal to an endpoint (Stern–Brocot).
pub fn simplest_rational_in(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi);
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_rational_in(&-hi, &-lo);
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if fl.clone() + Rational::from_integer(1.into()) <= *hi {
        return fl + Rational::from_integer(1.into());
    }
    // both in (fl, fl + 1): recurse on reciprocals of the fractional parts
    let a = lo - &fl;
    let b = hi - &fl;
    let inner = simplest_rational_in(&b.recip(), &a.recip());
    fl + inner.recip()
}

/// Certified disks around all complex roots of a squarefree `p`, sorted by
/// real then imaginary midpoint. Radii are at most `2^-prec`; rational roots
/// come back exact.
pub fn complex_roots_with_radii(p: &IntPoly, prec: u32) -> Result<Vec<ComplexBall>> {
    let n = match p.degree() {
        None => return Err(Error::domain("roots of the zero polynomial")),
        Some(0) => return Ok(Vec::new()),
        Some(n) => n,
    };
    if p.gcd(&p.derivative()).degree().unwrap_or(0) > 0 {
        return Err(Error::domain("polynomial is not squarefree"));
    }
    if n == 1 {
        let q = Rational::new(-p.coeff(0), p.coeff(1));
        return Ok(vec![ComplexBall::from_real(Ball::from_rational(&q, prec))]);
    }
    let target = Dyadic::pow2(-(prec as i64));
    let mut zs = initial_points(p);
    let mut wp = 64u32;
    let cap = 16 * prec + 4096;
    loop {
        aberth(p, &mut zs, wp, 60 + 10 * n);
        if let Some(radii) = inclusion_radii(p, &zs, wp) {
            if disjoint(&zs, &radii, wp) && radii.iter().all(|r| r <= &target) {
                return Ok(finish(p, &zs, &radii, prec));
            }
        }
        if wp >= cap {
            return Err(Error::uncertified(format!(
                "root isolation did not certify at {prec} bits (working precision {wp})"
            )));
        }
        wp = (wp * 2).min(cap);
    }
}

fn finish(p: &IntPoly, zs: &[Cx], radii: &[Dyadic], prec: u32) -> Vec<ComplexBall> {
    let rp = p.to_rat();
    let mut out: Vec<ComplexBall> = zs
        .iter()
        .zip(radii)
        .map(|(z, r)| {
            let re = Ball::new(z.re.clone(), r.clone(), prec.max(64));
            let im = Ball::new(z.im.clone(), r.clone(), prec.max(64));
            if im.contains_zero() {
                let q = simplest_rational_in(&re.lower().to_rational(), &re.upper().to_rational());
                if rp.eval(&q).is_zero() {
                    return ComplexBall::from_real(Ball::from_rational(&q, prec.max(64)));
                }
            }
            ComplexBall::new(re, im)
        })
        .collect();
    out.sort_by(|a, b| a.re.mid().cmp(b.re.mid()).then(a.im.mid().cmp(b.im.mid())));
    out
}
