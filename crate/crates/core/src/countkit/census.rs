//! Bounded-height scan of rationals `q ∈ (0, 1)` whose image under a function
//! might again be rational.
//!
//! An enclosure `[lo, hi]` rules out every rational of height `≤ H` when the
//! simplest rational in it (least denominator and least numerator) already has
//! height `> H`. Two distinct rationals of height `≤ H` are at least `1/H²`
//! apart, so a narrower enclosure holds at most one candidate.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::boettcher::FStar;
use crate::dynamics::PolyMap;
use crate::error::{Error, Result};
use crate::exactnum::rational::rational_height;
use crate::exactnum::roots::simplest_rational_in;
use crate::exactnum::{Ball, ComplexBall, Rational};
use crate::exec::{map_collect, Execution};

use super::modular::{modular_eval_auto, ModularFn};

/// Number of precision doublings tried before a point is left undecided.
pub const ESCALATIONS: u32 = 2;

pub trait CensusFunction: Send + Sync {
    fn name(&self) -> String;
    fn eval(&self, q: &Rational, prec: u32) -> Result<ComplexBall>;
}

pub struct Square;

impl CensusFunction for Square {
    fn name(&self) -> String {
        "square".into()
    }

    fn eval(&self, q: &Rational, prec: u32) -> Result<ComplexBall> {
        Ok(ComplexBall::from_real(Ball::from_rational(&(q * q), prec)))
    }
}

pub struct Constant(pub Rational);

impl CensusFunction for Constant {
    fn name(&self) -> String {
        format!("const({})", self.0)
    }

    fn eval(&self, _q: &Rational, prec: u32) -> Result<ComplexBall> {
        Ok(ComplexBall::from_real(Ball::from_rational(&self.0, prec)))
    }
}

/// `τ = 2i/(1 − q)`, mapping the unit disk into `Im τ > 1`.
fn strip_point(q: &Rational, prec: u32) -> ComplexBall {
    let im = Rational::from_integer(2.into()) / (Rational::one() - q);
    ComplexBall::from_rationals(&Rational::zero(), &im, prec)
}

/// A modular function pulled back to the disk by `q ↦ 2i/(1 − q)`.
pub struct Modular(pub ModularFn);

impl CensusFunction for Modular {
    fn name(&self) -> String {
        match self.0 {
            ModularFn::Lambda => "lambda".into(),
            ModularFn::Delta => "delta".into(),
        }
    }

    fn eval(&self, q: &Rational, prec: u32) -> Result<ComplexBall> {
        Ok(modular_eval_auto(self.0, &strip_point(q, prec))?.value)
    }
}

/// `f*` pulled back by `q ↦ i(1 + q)/(1 − q)`.
pub struct FStarFn {
    map: PolyMap,
    alpha: Rational,
    order: usize,
    cache: Mutex<HashMap<u32, Arc<FStar>>>,
}

impl FStarFn {
    pub fn new(map: PolyMap, alpha: Rational, order: usize) -> Result<Self> {
        let f = FStarFn { map, alpha, order, cache: Mutex::new(HashMap::new()) };
        f.evaluator(64)?;
        Ok(f)
    }

    fn evaluator(&self, prec: u32) -> Result<Arc<FStar>> {
        if let Some(e) = self.cache.lock().expect("cache lock").get(&prec) {
            return Ok(e.clone());
        }
        let e = Arc::new(FStar::new(&self.map, &self.alpha, self.order, prec)?);
        self.cache.lock().expect("cache lock").insert(prec, e.clone());
        Ok(e)
    }
}

impl CensusFunction for FStarFn {
    fn name(&self) -> String {
        format!("fstar({}, {})", self.map, self.alpha)
    }

    fn eval(&self, q: &Rational, prec: u32) -> Result<ComplexBall> {
        let im = (Rational::one() + q) / (Rational::one() - q);
        let tau = ComplexBall::from_rationals(&Rational::zero(), &im, prec);
        Ok(self.evaluator(prec)?.eval(&tau)?.value)
    }
}

/// All `p/q` in lowest terms with `0 < p < q ≤ H`, by denominator, then numerator.
pub fn enumerate_rationals(h: u64) -> Vec<Rational> {
    let mut out = Vec::new();
    for q in 2..=h {
        for p in 1..q {
            if p.gcd(&q) == 1 {
                out.push(Rational::new(p.into(), q.into()));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    CertifiedNoRational,
    CandidateRational(Rational),
    Undecided,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::CertifiedNoRational => "certified-no-rational",
            Verdict::CandidateRational(_) => "candidate-rational",
            Verdict::Undecided => "undecided",
        }
    }

    pub fn candidate(&self) -> Option<&Rational> {
        match self {
            Verdict::CandidateRational(c) => Some(c),
            _ => None,
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusRecord {
    #[serde(with = "crate::exactnum::rational::as_string")]
    pub q: Rational,
    pub value: Ball,
    pub verdict: Verdict,
    #[serde(serialize_with = "opt_rational")]
    pub candidate: Option<Rational>,
    /// Precision at which the verdict was reached.
    pub precision: u32,
    /// Why the point stayed undecided, or why the value is not real.
    pub note: Option<String>,
}

fn opt_rational<S: serde::Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub function: String,
    pub height: u64,
    pub precision: u32,
    /// Candidate points with a nonzero candidate value.
    pub count: usize,
    pub undecided: usize,
    pub records: Vec<CensusRecord>,
}

/// Classifies one enclosure against the height bound.
pub fn classify(value: &ComplexBall, h: u64) -> Verdict {
    if !value.im.contains_zero() {
        return Verdict::CertifiedNoRational;
    }
    let lo = value.re.lower().to_rational();
    let hi = value.re.upper().to_rational();
    let simplest = simplest_rational_in(&lo, &hi);
    let hb = BigInt::from(h);
    if rational_height(&simplest) > hb {
        return Verdict::CertifiedNoRational;
    }
    let gap = Rational::new(BigInt::one(), &hb * &hb);
    if &hi - &lo < gap && value.im.rad().to_rational() < gap {
        Verdict::CandidateRational(simplest)
    } else {
        Verdict::Undecided
    }
}

fn census_point(f: &dyn CensusFunction, q: &Rational, h: u64, prec: u32) -> CensusRecord {
    let mut p = prec;
    let mut note = None;
    let mut last = None;
    for step in 0..=ESCALATIONS {
        match f.eval(q, p) {
            Ok(v) => {
                let verdict = classify(&v, h);
                if verdict != Verdict::Undecided || step == ESCALATIONS {
                    if verdict == Verdict::CertifiedNoRational && !v.im.contains_zero() {
                        note = Some("value is not real".to_string());
                    }
                    if verdict == Verdict::Undecided {
                        note = Some(format!("enclosure too wide at {p} bits"));
                    }
                    return CensusRecord {
                        q: q.clone(),
                        value: v.re,
                        candidate: verdict.candidate().cloned(),
                        verdict,
                        precision: p,
                        note,
                    };
                }
                last = Some(v.re);
            }
            Err(e) => note = Some(e.to_string()),
        }
        p *= 2;
    }
    CensusRecord {
        q: q.clone(),
        value: last.unwrap_or_else(|| Ball::zero(prec)),
        verdict: Verdict::Undecided,
        candidate: None,
        precision: p / 2,
        note,
    }
}

/// Runs the scan over every rational of height `≤ h` in `(0, 1)`. Zero
/// candidates are kept in the records but not counted.
pub fn census(f: &dyn CensusFunction, h: u64, prec: u32, exec: Execution) -> Result<CensusReport> {
    if h < 3 {
        return Err(Error::domain("height bound must be at least e"));
    }
    let qs = enumerate_rationals(h);
    let records = map_collect(exec, &qs, |q| census_point(f, q, h, prec));
    let count = records.iter().filter(|r| r.candidate.as_ref().is_some_and(|c| !c.is_zero())).count();
    let undecided = records.iter().filter(|r| r.verdict == Verdict::Undecided).count();
    Ok(CensusReport { function: f.name(), height: h, precision: prec, count, undecided, records })
}

#[derive(Clone, Debug, Serialize)]
pub struct Reverification {
    #[serde(with = "crate::exactnum::rational::as_string")]
    pub q: Rational,
    pub before: Verdict,
    pub after: Verdict,
    pub consistent: bool,
}

/// Re-evaluates every decided record at four times its precision. A record
/// stays consistent when a certified exclusion stays certified and a candidate
/// either stays the same candidate or becomes excluded.
pub fn reverify(f: &dyn CensusFunction, report: &CensusReport, exec: Execution) -> Vec<Reverification> {
    map_collect(exec, &report.records, |r| {
        let after = match f.eval(&r.q, r.precision * 4) {
            Ok(v) => classify(&v, report.height),
            Err(_) => Verdict::Undecided,
        };
        let consistent = match (&r.verdict, &after) {
            (Verdict::CertifiedNoRational, a) => *a == Verdict::CertifiedNoRational,
            (Verdict::CandidateRational(c), Verdict::CandidateRational(d)) => c == d,
            (Verdict::CandidateRational(_), Verdict::CertifiedNoRational) => true,
            (Verdict::CandidateRational(_), Verdict::Undecided) => false,
            (Verdict::Undecided, _) => true,
        };
        Reverification { q: r.q.clone(), before: r.verdict.clone(), after, consistent }
    })
}
