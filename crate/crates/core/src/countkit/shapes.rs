//! Evaluators for the growth shapes of the counting bounds. The constants in
//! front are unknown, so every shape takes the caller's `c` (default 1).

use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Ball, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeTag {
    /// `c·d⁹(log d)²(log H)⁹`
    Disk,
    /// `c·l⁶(log l)³·d⁹(log d)²(log H)⁹`
    Decay,
    /// `c·(log H)¹⁸`
    Growth,
    /// `c·l¹⁷(log l)⁹·d¹⁸(log d)⁹(log H)¹⁷(log log H)⁶`
    DecayGrowth,
    /// `c·l·log l·d⁴(log d)²(log H)⁴`
    CompactDisk,
    /// `c·D^(n/4 − εn)`
    General,
    /// `c·D^(3n/4 + εn)`
    Irreducible,
    /// `c·l³·log l·d⁴·log d·(log H)³·log log H`
    DiskPolynomialT,
}

impl ShapeTag {
    pub const ALL: [ShapeTag; 8] = [
        ShapeTag::Disk,
        ShapeTag::Decay,
        ShapeTag::Growth,
        ShapeTag::DecayGrowth,
        ShapeTag::CompactDisk,
        ShapeTag::General,
        ShapeTag::Irreducible,
        ShapeTag::DiskPolynomialT,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ShapeTag::Disk => "disk",
            ShapeTag::Decay => "decay",
            ShapeTag::Growth => "growth",
            ShapeTag::DecayGrowth => "decay-growth",
            ShapeTag::CompactDisk => "compact-disk",
            ShapeTag::General => "general",
            ShapeTag::Irreducible => "irreducible",
            ShapeTag::DiskPolynomialT => "disk-polynomial-t",
        }
    }
}

impl FromStr for ShapeTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ShapeTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::parse(format!("unknown bound shape '{s}'")))
    }
}

/// A function decaying like `a^(−…)` against growth base `b`, with `l = log a / log b`.
#[derive(Clone, Debug, Serialize)]
pub struct DecayProfile {
    pub a: Ball,
    pub b: Ball,
    pub l: Ball,
    pub region: String,
}

impl DecayProfile {
    pub fn new(a: Ball, b: Ball, region: impl Into<String>) -> Result<Self> {
        let one = Ball::one(b.prec());
        if !b.gt(&one) {
            return Err(Error::domain("b must exceed 1"));
        }
        if !a.gt(&Ball::zero(a.prec())) {
            return Err(Error::domain("a must be positive"));
        }
        let l = a.log()?.div(&b.log()?)?;
        Ok(DecayProfile { a, b, l, region: region.into() })
    }

    /// Checks `a ≥ b^e`, i.e. `l ≥ e`.
    pub fn normalized(self) -> Result<Self> {
        if self.l.lt(&Ball::e(self.l.prec())) {
            return Err(Error::domain("requires a ≥ b^e"));
        }
        Ok(self)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ShapeParams {
    pub c: Option<Ball>,
    pub d: Option<u32>,
    pub h: Option<Ball>,
    pub l: Option<Ball>,
    pub big_d: Option<u32>,
    pub n: Option<u32>,
    pub eps: Option<Rational>,
}

fn need<T: Clone>(v: &Option<T>, name: &str) -> Result<T> {
    v.clone().ok_or_else(|| Error::domain(format!("shape needs parameter {name}")))
}

pub fn bound_shape(tag: ShapeTag, p: &ShapeParams, prec: u32) -> Result<Ball> {
    let c = p.c.clone().unwrap_or_else(|| Ball::one(prec)).with_prec(prec);
    let d_part = |deg_pow: u32, log_pow: u32| -> Result<Ball> {
        let d = need(&p.d, "d")?;
        if d < 2 {
            return Err(Error::domain("d must be at least 2"));
        }
        let db = Ball::from_int(d as i64, prec);
        Ok(&db.pow_u(deg_pow) * &db.log()?.pow_u(log_pow))
    };
    let log_h = || -> Result<Ball> {
        let h = need(&p.h, "H")?.with_prec(prec);
        if h.lt(&Ball::e(prec)) {
            return Err(Error::domain("H must be at least e"));
        }
        h.log()
    };
    let l_part = |pow: u32, log_pow: u32| -> Result<Ball> {
        let l = need(&p.l, "l")?.with_prec(prec);
        if l.lt(&Ball::one(prec)) {
            return Err(Error::domain("l must be at least 1"));
        }
        Ok(&l.pow_u(pow) * &l.log()?.pow_u(log_pow))
    };
    let dyn_exp = |lead: Rational, sign: i64| -> Result<Ball> {
        let big_d = need(&p.big_d, "D")?;
        let n = need(&p.n, "n")?;
        let eps = p.eps.clone().unwrap_or_default();
        if big_d < 2 {
            return Err(Error::domain("D must be at least 2"));
        }
        let nr = Rational::from_integer(n.into());
        let e = &lead * &nr + Rational::from_integer(sign.into()) * &eps * &nr;
        Ball::from_int(big_d as i64, prec).pow(&Ball::from_rational(&e, prec))
    };
    let core = match tag {
        ShapeTag::Disk => &d_part(9, 2)? * &log_h()?.pow_u(9),
        ShapeTag::Decay => &(&l_part(6, 3)? * &d_part(9, 2)?) * &log_h()?.pow_u(9),
        ShapeTag::Growth => log_h()?.pow_u(18),
        ShapeTag::DecayGrowth => {
            let lh = log_h()?;
            let llh = lh.log()?;
            &(&(&l_part(17, 9)? * &d_part(18, 9)?) * &lh.pow_u(17)) * &llh.pow_u(6)
        }
        ShapeTag::CompactDisk => &(&l_part(1, 1)? * &d_part(4, 2)?) * &log_h()?.pow_u(4),
        ShapeTag::General => dyn_exp(Rational::new(1.into(), 4.into()), -1)?,
        ShapeTag::Irreducible => dyn_exp(Rational::new(3.into(), 4.into()), 1)?,
        ShapeTag::DiskPolynomialT => {
            let lh = log_h()?;
            let llh = lh.log()?;
            &(&(&l_part(3, 1)? * &d_part(4, 1)?) * &lh.pow_u(3)) * &llh
        }
    };
    Ok(&c * &core)
}
