//! Böttcher coordinates at infinity as exact series, the `f*` evaluator and
//! the p-adic escape thresholds.
//!
//! The series is `φ(z) = z + b₀ + b₁z⁻¹ + b₂z⁻² + …` with `φ(P(z)) = φ(z)^D`;
//! `b₀ = a_(D−1)/D` vanishes exactly when the subleading coefficient does.
//!
//! Tail bounds. Let `A = Σ_(i<D)|a_i|`, `R = 1 + A`, `ρ = 2R`. For `|w| ≥ ρ`
//! one has `|P(w)/w^D − 1| ≤ A/|w| ≤ 1/2` and `|P(w)| ≥ |w|`, so the product
//! formula `φ(z) = z·∏ (P(z_n)/z_n^D)^(1/D^(n+1))` gives `|log(φ(z)/z)| ≤ L`
//! with `L = A/(R(D−1))`. Hence `φ(z) − z` is bounded by `K = ρ(e^L − 1)` on
//! `|z| ≥ ρ`, and its coefficient of `z^(−j)` by `Kρ^j`. By Rouché, `ψ = φ⁻¹`
//! exists on `|w| > ρ + K` with `|ψ(w) − w| ≤ K`, so the same estimate holds
//! for `ψ` with `ρ_ψ = ρ + K`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::dynamics::PolyMap;
use crate::error::{Error, Result};
use crate::exactnum::rational::fmt_rational;
use crate::exactnum::series::compose_to;
use crate::exactnum::{series_inverse, series_power, Ball, ComplexBall, Dyadic, Rational, TruncSeries};
use crate::nt::{prime_divisors, valuation};

#[derive(Clone, Debug, Serialize)]
pub struct BoettcherSeries {
    pub phi: TruncSeries,
    #[serde(skip)]
    pub map: PolyMap,
    /// Highest negative power retained.
    pub order: usize,
}

impl BoettcherSeries {
    /// Coefficient of `z^(−k)`.
    pub fn b(&self, k: usize) -> &Rational {
        &self.phi.coeffs()[k + 1]
    }

    pub fn constant_term(&self) -> &Rational {
        &self.phi.coeffs()[1]
    }

    /// `φ(P(z)) − φ(z)^D` over the coefficients both sides determine.
    pub fn residual(&self) -> Result<TruncSeries> {
        let n = self.phi.order();
        let lhs = compose_to(&self.phi, self.map.poly(), n)?;
        let rhs = series_power(&self.phi, self.map.degree());
        Ok(lhs.sub(&rhs))
    }
}

/// Solves `φ(P) = φ^D` coefficient by coefficient. At relative index `k ≥ 1`
/// the unknown coefficient enters `φ^D` as `D·c_k` and `φ(P)` not at all.
pub fn boettcher_series(map: &PolyMap, order: usize) -> Result<BoettcherSeries> {
    if order == 0 {
        return Err(Error::domain("series order must be at least 1"));
    }
    let d = map.degree();
    let total = order + 2;
    let mut coeffs = vec![Rational::zero(); total];
    coeffs[0] = Rational::one();
    let dq = Rational::from_integer(d.into());
    for idx in 1..total {
        let trial = TruncSeries::new(1, coeffs[..=idx].to_vec());
        let lhs = compose_to(&trial, map.poly(), idx + 1)?;
        let rhs = series_power(&trial, d);
        coeffs[idx] = (&lhs.coeffs()[idx] - &rhs.coeffs()[idx]) / &dq;
    }
    Ok(BoettcherSeries { phi: TruncSeries::new(1, coeffs), map: map.clone(), order })
}

/// Compositional inverse `ψ` of `φ`, to the same order.
pub fn inverse_series(series: &BoettcherSeries) -> Result<TruncSeries> {
    series_inverse(&series.phi)
}

#[derive(Clone, Debug, Serialize)]
pub struct EscapeRadius {
    /// `R = 1 + Σ|a_i|` over the non-leading coefficients.
    #[serde(with = "crate::exactnum::rational::as_string")]
    pub radius: Rational,
    /// `2R`, the radius beyond which the series are evaluated.
    #[serde(with = "crate::exactnum::rational::as_string")]
    pub safety: Rational,
}

impl EscapeRadius {
    pub fn ball(&self, prec: u32) -> Ball {
        Ball::from_rational(&self.radius, prec)
    }
}

pub fn escape_domain_radius(map: &PolyMap) -> EscapeRadius {
    let a: Rational = map.lower_coeffs().iter().map(|c| c.abs()).sum();
    let radius = a + Rational::one();
    let safety = &radius * Rational::from_integer(2.into());
    EscapeRadius { radius, safety }
}

/// Constants of the tail estimate: `(ρ, K)`.
fn tail_constants(map: &PolyMap, prec: u32) -> (Rational, Ball) {
    let esc = escape_domain_radius(map);
    let a = &esc.radius - Rational::one();
    if a.is_zero() {
        return (esc.safety, Ball::zero(prec));
    }
    let l = &a / (&esc.radius * Rational::from_integer((map.degree() - 1).into()));
    let k = (&Ball::from_rational(&l, prec).exp() - &Ball::one(prec)).mul_rational(&esc.safety);
    (esc.safety, k)
}

/// Bound `K·q^(m)/(1 − q)` with `q = ρ/|z|` for the omitted part of a series
/// whose first missing power is `z^(−m)`.
fn series_tail(k: &Ball, rho: &Ball, abs_z: &Ball, m: u32) -> Result<Dyadic> {
    if k.is_exact() && k.mid().is_zero() {
        return Ok(Dyadic::zero());
    }
    let q = rho.div(abs_z)?;
    if !q.lt(&Ball::one(q.prec())) {
        return Err(Error::uncertified("evaluation point too close to the escape radius"));
    }
    let t = (k * &q.pow_u(m)).div(&(&Ball::one(q.prec()) - &q))?;
    Ok(t.upper())
}

fn eval_series_complex(s: &TruncSeries, z: &ComplexBall) -> Result<ComplexBall> {
    let t = z.inv()?;
    let prec = z.prec();
    let mut acc = ComplexBall::zero(prec);
    for c in s.coeffs().iter().rev() {
        acc = &(&acc * &t) + &ComplexBall::from_real(Ball::from_rational(c, prec));
    }
    Ok(&acc * z)
}

/// Evaluator for `f*(τ) = 1/ψ(φ(α)·exp(−2πi(τ − i/24)))`, the reciprocal of
/// `Φ⁻¹(exp(2πi(τ − i/24))·Φ(α))` with `Φ = 1/φ`.
#[derive(Clone, Debug)]
pub struct FStar {
    psi: TruncSeries,
    phi_alpha: Ball,
    rho_psi: Ball,
    k: Ball,
    prec: u32,
    pub phi_tail: Dyadic,
}

#[derive(Clone, Debug, Serialize)]
pub struct FStarValue {
    pub value: ComplexBall,
    /// Truncation bound used for `φ(α)`.
    pub phi_tail: Ball,
    /// Truncation bound used for `ψ`.
    pub psi_tail: Ball,
}

impl FStar {
    pub fn new(map: &PolyMap, alpha: &Rational, order: usize, prec: u32) -> Result<Self> {
        let wp = prec + 32;
        let (rho, k) = tail_constants(map, wp);
        if alpha.abs() <= rho {
            return Err(Error::domain(format!(
                "|α| must exceed 2R = {} for the series to converge",
                fmt_rational(&rho)
            )));
        }
        let series = boettcher_series(map, order)?;
        let psi = inverse_series(&series)?;
        let phi = &series.phi;
        let a = Ball::from_rational(alpha, wp);
        let t = Ball::from_rational(&alpha.recip(), wp);
        let mut acc = Ball::zero(wp);
        for c in phi.coeffs().iter().rev() {
            acc = &(&acc * &t) + &Ball::from_rational(c, wp);
        }
        let m = (1 - phi.last_exponent()) as u32;
        let rho_b = Ball::from_rational(&rho, wp);
        let phi_tail = series_tail(&k, &rho_b, &a.abs(), m)?;
        let phi_alpha = (&acc * &a).add_error(&phi_tail);
        let rho_psi = &rho_b + &k;
        Ok(FStar { psi, phi_alpha, rho_psi, k, prec: wp, phi_tail })
    }

    pub fn phi_alpha(&self) -> &Ball {
        &self.phi_alpha
    }

    pub fn eval(&self, tau: &ComplexBall) -> Result<FStarValue> {
        let wp = self.prec;
        if tau.im.lt(&Ball::from_rational(&Rational::new(1.into(), 24.into()), wp)) {
            return Err(Error::domain("f* needs Im τ ≥ 1/24"));
        }
        let two_pi = Ball::pi(wp).mul_pow2(1);
        let pi_12 = Ball::pi(wp).div_int(12);
        // −2πi(τ − i/24) = (2π·Im τ − π/12) − 2πi·Re τ
        let re = &(&two_pi * &tau.im.with_prec(wp)) - &pi_12;
        let im = -(&two_pi * &tau.re.with_prec(wp));
        let e = ComplexBall::new(re, im).exp();
        let w = e.scale(&self.phi_alpha);
        let abs_w = w.abs();
        if !abs_w.gt(&self.rho_psi) {
            return Err(Error::uncertified("ψ evaluated too close to its convergence radius"));
        }
        let m = (1 - self.psi.last_exponent()) as u32;
        let psi_tail = series_tail(&self.k, &self.rho_psi, &abs_w, m)?;
        let psi_w = eval_series_complex(&self.psi, &w)?;
        let psi_w = ComplexBall::new(psi_w.re.add_error(&psi_tail), psi_w.im.add_error(&psi_tail));
        let value = psi_w.inv()?;
        Ok(FStarValue {
            value: ComplexBall::new(value.re.with_prec(self.prec - 32), value.im.with_prec(self.prec - 32)),
            phi_tail: Ball::new(Dyadic::zero(), self.phi_tail.clone(), self.prec - 32),
            psi_tail: Ball::new(Dyadic::zero(), psi_tail, self.prec - 32),
        })
    }

    /// Smallest `c` with `|f*(it)| ≤ c·exp(−2πt)` at the sample points (upper enclosure).
    pub fn fit_decay(&self, ts: &[Rational]) -> Result<Ball> {
        let wp = self.prec;
        let mut best: Option<Ball> = None;
        for t in ts {
            let tau = ComplexBall::from_rationals(&Rational::zero(), t, wp);
            let v = self.eval(&tau)?.value.abs();
            let scale = Ball::pi(wp).mul_pow2(1).mul_rational(t).exp();
            let c = &v * &scale;
            best = Some(match best {
                None => c,
                Some(b) => b.max(&c),
            });
        }
        best.ok_or_else(|| Error::domain("no sample points"))
    }
}

pub fn fstar_eval(map: &PolyMap, alpha: &Rational, tau: &ComplexBall, order: usize, prec: u32) -> Result<FStarValue> {
    FStar::new(map, alpha, order, prec)?.eval(tau)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Prime(u64),
    Archimedean,
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Place::Prime(p) => s.serialize_str(&p.to_string()),
            Place::Archimedean => s.serialize_str("inf"),
        }
    }
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Archimedean => write!(f, "inf"),
        }
    }
}

/// `δ_v^exponent` stored exactly; `exponent = p − 1` when `p | D`, else 1.
#[derive(Clone, Debug, Serialize)]
pub struct DeltaV {
    pub place: Place,
    #[serde(with = "crate::exactnum::rational::as_string")]
    pub value_power: Rational,
    pub exponent: u32,
}

impl DeltaV {
    pub fn exceeds_one(&self) -> bool {
        self.value_power > Rational::one()
    }

    /// `δ_v` itself.
    pub fn value(&self, prec: u32) -> Result<Ball> {
        let b = Ball::from_rational(&self.value_power, prec);
        if self.exponent == 1 {
            return Ok(b);
        }
        b.pow(&Ball::from_rational(&Rational::new(1.into(), self.exponent.into()), prec))
    }
}

fn prime_u64(p: &num_bigint::BigUint) -> Result<u64> {
    p.to_u64().ok_or_else(|| Error::domain("prime exceeds 64 bits"))
}

/// `|q|_p = p^(−v_p(q))`.
pub fn abs_p(q: &Rational, p: u64) -> Rational {
    if q.is_zero() {
        return Rational::zero();
    }
    let pb = num_bigint::BigUint::from(p);
    let vn = valuation(q.numer(), &pb) as usize;
    let vd = valuation(q.denom(), &pb) as usize;
    let pi = BigInt::from(p);
    Rational::new(num_traits::pow(pi.clone(), vd), num_traits::pow(pi, vn))
}

pub fn delta_v(map: &PolyMap, p: u64) -> Result<DeltaV> {
    if !crate::nt::is_prime_u64(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let m = map
        .poly()
        .coeffs()
        .iter()
        .map(|c| abs_p(c, p))
        .fold(Rational::one(), |acc, x| if x > acc { x } else { acc });
    let d = map.degree() as u64;
    if !d.is_multiple_of(p) {
        return Ok(DeltaV { place: Place::Prime(p), value_power: m, exponent: 1 });
    }
    // (m·p^(1/(p−1))/|D|_p)^(p−1) = m^(p−1)·p·|D|_p^(−(p−1))
    let e = (p - 1) as usize;
    let inv_abs_d = abs_p(&Rational::from_integer(d.into()), p).recip();
    let value_power = num_traits::pow(m, e) * Rational::from_integer(p.into()) * num_traits::pow(inv_abs_d, e);
    Ok(DeltaV { place: Place::Prime(p), value_power, exponent: p as u32 - 1 })
}

pub fn delta_archimedean(map: &PolyMap) -> DeltaV {
    DeltaV { place: Place::Archimedean, value_power: escape_domain_radius(map).radius, exponent: 1 }
}

/// Primes with `δ_p > 1`: divisors of `D` and of coefficient denominators.
pub fn exceptional_primes(map: &PolyMap) -> Vec<u64> {
    let mut acc = BigInt::from(map.degree());
    for c in map.poly().coeffs() {
        acc = acc.lcm(c.denom());
    }
    prime_divisors(&acc).iter().filter_map(|p| p.to_u64()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaceReport {
    pub place: Place,
    #[serde(with = "crate::exactnum::rational::as_string")]
    pub abs_alpha: Rational,
    pub delta: DeltaV,
    /// `|α|_v / δ_v`.
    pub margin: Ball,
}

/// Every place with `|α|_v > δ_v`, primes ascending then the archimedean one.
pub fn good_places(map: &PolyMap, alpha: &Rational, prec: u32) -> Result<Vec<PlaceReport>> {
    let mut out = Vec::new();
    for p in prime_divisors(alpha.denom()) {
        let p = prime_u64(&p)?;
        let dv = delta_v(map, p)?;
        let a = abs_p(alpha, p);
        if num_traits::pow(a.clone(), dv.exponent as usize) > dv.value_power {
            let margin = Ball::from_rational(&a, prec).div(&dv.value(prec)?)?;
            out.push(PlaceReport { place: Place::Prime(p), abs_alpha: a, delta: dv, margin });
        }
    }
    let arch = delta_archimedean(map);
    let a = alpha.abs();
    if a > arch.value_power {
        let margin = Ball::from_rational(&(&a / &arch.value_power), prec);
        out.push(PlaceReport { place: Place::Archimedean, abs_alpha: a, delta: arch, margin });
    }
    Ok(out)
}

pub fn good_place(map: &PolyMap, alpha: &Rational, prec: u32) -> Result<Option<PlaceReport>> {
    Ok(good_places(map, alpha, prec)?.into_iter().next())
}

/// First nonarchimedean place with `|α|_p > δ_p`.
pub fn good_prime(map: &PolyMap, alpha: &Rational, prec: u32) -> Result<Option<PlaceReport>> {
    Ok(good_places(map, alpha, prec)?.into_iter().find(|r| matches!(r.place, Place::Prime(_))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};
    use crate::exactnum::series_compose;

    fn map(s: &str) -> PolyMap {
        PolyMap::parse(s).unwrap()
    }

    /// Hand matching for z² + c: z^0 gives 2b₁ = c, z^-1 gives b₂ = 0,
    /// z^-2 gives 2b₃ + b₁² = −c·b₁·... i.e. b₃ = c(2 − c)/8.
    fn hand_coeffs(c: &Rational) -> (Rational, Rational, Rational) {
        (c / int(2), int(0), c * (int(2) - c) / int(8))
    }

    #[test]
    fn power_map_is_identity() {
        for s in ["X^2", "X^3"] {
            let b = boettcher_series(&map(s), 8).unwrap();
            assert_eq!(b.phi, TruncSeries::identity(10));
        }
    }

    #[test]
    fn quadratic_family_coefficients() {
        for c in [int(1), int(-1), rat(1, 2), rat(-3, 7)] {
            let m = PolyMap::new(crate::exactnum::RatPoly::new(vec![c.clone(), int(0), int(1)])).unwrap();
            let b = boettcher_series(&m, 6).unwrap();
            let (b1, b2, b3) = hand_coeffs(&c);
            assert_eq!(b.constant_term(), &int(0));
            assert_eq!(b.b(1), &b1);
            assert_eq!(b.b(2), &b2);
            assert_eq!(b.b(3), &b3);
            assert!(b.residual().unwrap().is_zero());
        }
    }

    #[test]
    fn subleading_term_gives_constant() {
        let b = boettcher_series(&map("X^2 - 3*X + 1"), 5).unwrap();
        assert_eq!(b.constant_term(), &rat(-3, 2));
        assert!(b.residual().unwrap().is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let b = boettcher_series(&map("X^2 + 1"), 8).unwrap();
        let psi = inverse_series(&b).unwrap();
        let id = series_compose(&psi, &b.phi).unwrap();
        assert_eq!(id, TruncSeries::identity(10));
        assert_eq!(psi.coeff_of(-1), Some(&rat(-1, 2)));
    }

    #[test]
    fn escape_radii() {
        assert_eq!(escape_domain_radius(&map("X^2")).radius, int(1));
        assert_eq!(escape_domain_radius(&map("X^2 + 1")).radius, int(2));
        assert_eq!(escape_domain_radius(&map("X^2 - 3*X + 1")).radius, int(5));
    }

    #[test]
    fn fstar_power_map() {
        let f = FStar::new(&map("X^2"), &int(4), 4, 96).unwrap();
        let v = f.eval(&ComplexBall::from_rationals(&int(0), &rat(1, 24), 96)).unwrap();
        assert!(v.value.contains_rationals(&rat(1, 4), &int(0)));
        for (k, expect) in [(0, int(4)), (1, int(-4))] {
            let tau = ComplexBall::from_rationals(&rat(k, 2), &rat(1, 24), 96);
            let inv = f.eval(&tau).unwrap().value.inv().unwrap();
            assert!(inv.contains_rationals(&expect, &int(0)));
            assert!(inv.re.rad_f64() < 1e-20);
        }
    }

    #[test]
    fn fstar_decays() {
        let f = FStar::new(&map("X^2 + 1"), &int(10), 12, 96).unwrap();
        let c = f.fit_decay(&[int(1), int(2), int(3)]).unwrap();
        // f* ≈ e^(π/12)/φ(α) · e^(−2πt)
        let approx = (std::f64::consts::PI / 12.0).exp() / f.phi_alpha().mid_f64();
        assert!((c.mid_f64() - approx).abs() < 1e-3);
        assert!(FStar::new(&map("X^2 + 1"), &int(3), 12, 96).is_err());
    }

    #[test]
    fn fstar_tail_encloses_longer_series() {
        let m = map("X^2 + 1");
        let tau = ComplexBall::from_rationals(&rat(1, 3), &rat(1, 10), 96);
        let short = fstar_eval(&m, &int(12), &tau, 6, 96).unwrap();
        let long = fstar_eval(&m, &int(12), &tau, 20, 96).unwrap();
        assert!(short.value.re.overlaps(&long.value.re));
        assert!(short.value.im.overlaps(&long.value.im));
        assert!(long.value.re.rad() < short.value.re.rad());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_v(&map("X^2 + 1"), 3).unwrap().value_power, int(1));
        let d2 = delta_v(&map("X^2 + 1"), 2).unwrap();
        assert_eq!((d2.value_power.clone(), d2.exponent), (int(4), 1));
        assert_eq!(delta_v(&map("X^2 + 1/3"), 3).unwrap().value_power, int(3));
        let d3 = delta_v(&map("X^3"), 3).unwrap();
        // (1·3^(1/2)·3)^2 = 27
        assert_eq!((d3.value_power, d3.exponent), (int(27), 2));
        assert_eq!(exceptional_primes(&map("X^2 + 1/3")), vec![2, 3]);
    }

    #[test]
    fn good_place_examples() {
        let r = good_place(&map("X^2"), &rat(1, 8), 64).unwrap().unwrap();
        assert_eq!(r.place, Place::Prime(2));
        assert_eq!(r.abs_alpha, int(8));
        assert!(r.margin.gt(&Ball::one(64)));
        let r = good_place(&map("X^2"), &int(3), 64).unwrap().unwrap();
        assert_eq!(r.place, Place::Archimedean);
        assert!(good_place(&map("X^2 + 1"), &int(0), 64).unwrap().is_none());
    }
}
