//! Covering a closed disk by closed disks of a smaller radius.

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Ball, Rational};

/// Rational lower approximation of `√2` (140² ≤ 2·99²).
fn sqrt2_below() -> Rational {
    Rational::new(140.into(), 99.into())
}

#[derive(Clone, Debug, Serialize)]
pub struct Cover {
    #[serde(with = "crate::exactnum::rational::vec_as_strings")]
    pub xs: Vec<Rational>,
    #[serde(with = "crate::exactnum::rational::vec_as_strings")]
    pub ys: Vec<Rational>,
    /// `4(1 + (√2/2)·R/r)²`.
    pub bound: Ball,
    #[serde(with = "crate::exactnum::rational::as_string")]
    pub spacing: Rational,
}

impl Cover {
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn centers(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.xs.iter().zip(&self.ys)
    }

    /// Whether `(x, y)` lies in one of the closed disks of radius `r`.
    pub fn covers(&self, x: f64, y: f64, r: f64) -> bool {
        self.centers().any(|(cx, cy)| {
            let dx = x - cx.to_f64().unwrap_or(f64::NAN);
            let dy = y - cy.to_f64().unwrap_or(f64::NAN);
            dx * dx + dy * dy <= r * r * (1.0 + 1e-12)
        })
    }
}

/// Squared distance from the origin to the square `[a, b] × [c, d]`.
fn dist2_to_cell(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Rational {
    let axis = |lo: &Rational, hi: &Rational| {
        if lo.is_positive() {
            lo.clone()
        } else if hi.is_negative() {
            -hi.clone()
        } else {
            Rational::zero()
        }
    };
    let x = axis(a, b);
    let y = axis(c, d);
    &x * &x + &y * &y
}

/// Centers of closed radius-`r` disks covering the closed radius-`R` disk at
/// the origin: the cells of a square grid with side `s ≤ r√2` centred at the
/// origin, kept when they meet the disk. Each cell lies in the disk of radius
/// `s/√2 ≤ r` around its center.
pub fn disk_cover(big_r: &Rational, r: &Rational, prec: u32) -> Result<Cover> {
    if !big_r.is_positive() || !r.is_positive() {
        return Err(Error::domain("radii must be positive"));
    }
    let ratio = Ball::from_rational(&(big_r / r), prec);
    let half_sqrt2 = Ball::from_int(2, prec).sqrt()?.mul_pow2(-1);
    let bound = (&Ball::one(prec) + &(&half_sqrt2 * &ratio)).sqr().mul_pow2(2);
    let s = r * sqrt2_below();
    if big_r <= r {
        return Ok(Cover { xs: vec![Rational::zero()], ys: vec![Rational::zero()], bound, spacing: s });
    }
    // cells [(i − 1/2)s, (i + 1/2)s] for |i| ≤ k with (k + 1/2)s ≥ R
    let half = Rational::new(1.into(), 2.into());
    let k = ((big_r / &s) - &half).ceil().to_integer().to_i64().ok_or_else(|| Error::guard("cover too large"))?;
    if k > 2000 {
        return Err(Error::guard("cover would exceed 16 million disks"));
    }
    let r2 = big_r * big_r;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in -k..=k {
        let ci = &s * Rational::from_integer(i.into());
        let (a, b) = (&ci - &s * &half, &ci + &s * &half);
        for j in -k..=k {
            let cj = &s * Rational::from_integer(j.into());
            let (c, d) = (&cj - &s * &half, &cj + &s * &half);
            if dist2_to_cell(&a, &b, &c, &d) <= r2 {
                xs.push(ci.clone());
                ys.push(cj);
            }
        }
    }
    Ok(Cover { xs, ys, bound, spacing: s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    fn sample_covered(c: &Cover, big_r: f64, r: f64) -> bool {
        let n = 100;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let x = -big_r + 2.0 * big_r * i as f64 / (n - 1) as f64;
                let y = -big_r + 2.0 * big_r * j as f64 / (n - 1) as f64;
                x * x + y * y > big_r * big_r || c.covers(x, y, r)
            })
        })
    }

    #[test]
    fn examples() {
        assert_eq!(disk_cover(&int(1), &int(1), 64).unwrap().len(), 1);
        let c = disk_cover(&int(2), &int(1), 64).unwrap();
        assert_eq!(c.len(), 9);
        assert!((c.len() as f64) <= c.bound.upper().to_f64());
        assert!(sample_covered(&c, 2.0, 1.0));
        let c = disk_cover(&int(1), &rat(1, 4), 64).unwrap();
        assert!(c.len() <= 58);
        assert!(sample_covered(&c, 1.0, 0.25));
    }

    #[test]
    fn bound_holds_on_grid_of_ratios() {
        for (a, b) in [(3, 1), (5, 2), (7, 3), (10, 1), (1, 3)] {
            let c = disk_cover(&rat(a, 1), &rat(b, 1), 64).unwrap();
            assert!((c.len() as f64) <= c.bound.upper().to_f64(), "R = {a}, r = {b}");
            assert!(sample_covered(&c, a as f64, b as f64));
        }
    }
}
