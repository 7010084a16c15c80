//! Iteration of monic polynomial maps over the rationals, canonical heights
//! and factor statistics of `P^n(X) − P^n(α)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::boettcher::{self, PlaceReport};
use crate::error::{Error, Result};
use crate::exactnum::linalg::{determinant, solve, Matrix};
use crate::exactnum::rational::rational_height;
use crate::exactnum::{Ball, Dyadic, RatPoly, Rational, Round};
use crate::factorint::{factor_rational, FactorReport};

pub const DEFAULT_DEGREE_CAP: u64 = 4096;

/// A monic polynomial of degree at least 2 with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    poly: RatPoly,
}

impl Serialize for PolyMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.poly.serialize(s)
    }
}

impl std::fmt::Display for PolyMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.poly.fmt(f)
    }
}

impl PolyMap {
    pub fn new(poly: RatPoly) -> Result<Self> {
        match poly.degree() {
            Some(d) if d >= 2 => {}
            _ => return Err(Error::domain("map must have degree at least 2")),
        }
        if !poly.is_monic() {
            return Err(Error::domain("map must be monic (conjugate with PolyMap::conjugated first)"));
        }
        Ok(PolyMap { poly })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(RatPoly::parse(s)?)
    }

    /// `γ⁻¹·P(γX)`, which has leading coefficient `lc(P)·γ^(D−1)`.
    pub fn conjugated(poly: &RatPoly, gamma: &Rational) -> Result<Self> {
        if gamma.is_zero() {
            return Err(Error::domain("conjugating scalar must be nonzero"));
        }
        let inner = RatPoly::monomial(gamma.clone(), 1);
        let conj = poly.compose(&inner).scale(&gamma.recip());
        Self::new(conj)
    }

    pub fn poly(&self) -> &RatPoly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree().expect("nonzero") as u32
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.poly.eval(x)
    }

    /// The non-leading coefficients.
    pub fn lower_coeffs(&self) -> &[Rational] {
        let c = self.poly.coeffs();
        &c[..c.len() - 1]
    }
}

fn check_cap(d: u32, n: u32, cap: u64) -> Result<()> {
    let deg = (d as u64).checked_pow(n);
    match deg {
        Some(k) if k <= cap => Ok(()),
        _ => Err(Error::guard(format!("degree {d}^{n} exceeds the degree cap {cap}"))),
    }
}

/// The expanded iterate `P^n`.
pub fn iterate(map: &PolyMap, n: u32, cap: u64) -> Result<RatPoly> {
    check_cap(map.degree(), n, cap)?;
    let mut acc = RatPoly::x();
    for _ in 0..n {
        acc = map.poly.compose(&acc);
    }
    Ok(acc)
}

/// `α, P(α), …, P^n(α)`.
pub fn orbit(map: &PolyMap, alpha: &Rational, n: u32) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut x = alpha.clone();
    out.push(x.clone());
    for _ in 0..n {
        x = map.eval(&x);
        out.push(x.clone());
    }
    out
}

/// Constants with `|h(P(x)) − D·h(x)| ≤ one_step` for all rational `x`, and
/// `|ĥ(x) − h(x)| ≤ gap = one_step/(D−1)`.
#[derive(Clone, Debug, Serialize)]
pub struct GapConstant {
    /// `exp(one_step)`, an integer.
    #[serde(serialize_with = "ser_big")]
    pub one_step_exp: BigInt,
    /// Bound for the upper inequality, `Σ|g_i|` of the integral homogenization.
    #[serde(serialize_with = "ser_big")]
    pub upper_length: BigInt,
    /// Bound for the lower inequality, from the Bezout identities.
    #[serde(serialize_with = "ser_big")]
    pub lower_length: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub resultant: BigInt,
    pub one_step: Ball,
    pub gap: Ball,
}

fn ser_big<S: serde::Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

/// Write `P(u/v) = G(u,v) / (L·v^D)` with `G` integral of degree `D` and
/// `F = L·Y^D`. The Sylvester system gives integral forms with
/// `U₁G + V₁F = ρX^(2D−1)` and `U₂G + V₂F = ρY^(2D−1)`, so any common factor
/// of `G(u,v)` and `F(u,v)` divides `ρ`, and
/// `max(|G(u,v)|, |F(u,v)|) ≥ |ρ|·M^D / max_j(‖U_j‖₁ + ‖V_j‖₁)` with `M = max(|u|,|v|)`.
pub fn height_gap_constant(map: &PolyMap, prec: u32) -> GapConstant {
    let d = map.degree() as usize;
    let coeffs = map.poly.coeffs();
    let l = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    // g[i] is the coefficient of X^i Y^(D−i)
    let g: Vec<BigInt> = coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let mut f = vec![BigInt::zero(); d + 1];
    f[0] = l.clone();
    let upper: BigInt = g.iter().map(|c| c.abs()).sum();

    // unknowns: U (X^i Y^(D−1−i), i < D) then V; equations: coefficient of X^k Y^(2D−1−k)
    let n = 2 * d;
    let mut m: Matrix = vec![vec![Rational::zero(); n]; n];
    for i in 0..d {
        for j in 0..=d {
            m[i + j][i] += Rational::from_integer(g[j].clone());
            m[i + j][d + i] += Rational::from_integer(f[j].clone());
        }
    }
    let res = determinant(&m).abs();
    let mut lower = BigInt::zero();
    for target in [n - 1, 0] {
        let mut rhs = vec![Rational::zero(); n];
        rhs[target] = res.clone();
        let sol = solve(&m, &rhs).expect("Sylvester matrix of coprime forms is invertible");
        let len: BigInt = sol
            .iter()
            .map(|x| {
                debug_assert!(x.is_integer());
                x.to_integer().abs()
            })
            .sum();
        lower = lower.max(len);
    }
    let one_step_exp = upper.clone().max(lower.clone());
    let one_step = Ball::from_bigint(&one_step_exp, prec).log().expect("positive");
    let gap = one_step.div_int(d as i64 - 1);
    GapConstant {
        one_step_exp,
        upper_length: upper,
        lower_length: lower,
        resultant: res.to_integer(),
        one_step,
        gap,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CanonicalHeight {
    pub value: Ball,
    /// Iterations used.
    pub n: u32,
    pub gap: Ball,
    /// Truncation part of the radius.
    pub tail: Ball,
}

/// Enclosure of `ĥ_P(α)` with radius at most `eps`, from `h(P^n(α))/D^n`
/// with `n` minimal such that `gap·D/((D−1)·D^n) ≤ eps`.
pub fn canonical_height(map: &PolyMap, alpha: &Rational, eps: &Rational, cap: u64) -> Result<CanonicalHeight> {
    if !eps.is_positive() {
        return Err(Error::domain("eps must be positive"));
    }
    let d = map.degree() as i64;
    let eps_bits = {
        let e = eps.recip().ceil().to_integer();
        e.bits() as u32 + 8
    };
    let mut prec = 64u32.max(eps_bits + 32);
    let gc = height_gap_constant(map, prec);
    let eps_d = Dyadic::from_rational(eps, 64, Round::Down);
    let factor = Rational::new(BigInt::from(d), BigInt::from(d - 1));
    let tail_at = |n: u32, prec: u32| -> Dyadic {
        let dn = Rational::from_integer(num_traits::pow(BigInt::from(d), n as usize));
        gc.gap.with_prec(prec).mul_rational(&(&factor / &dn)).upper()
    };
    let mut n = 0u32;
    while tail_at(n, 64) > eps_d {
        n += 1;
        check_cap(map.degree(), n, cap)?;
    }
    let target = orbit(map, alpha, n).pop().expect("nonempty");
    let hn = rational_height(&target);
    let dn = Rational::from_integer(num_traits::pow(BigInt::from(d), n as usize));
    loop {
        let log = Ball::from_bigint(&hn, prec).log()?;
        let scaled = log.mul_rational(&dn.recip());
        let tail = tail_at(n, prec);
        let value = scaled.add_error(&tail);
        if value.rad() <= &eps_d || prec > eps_bits + 4096 {
            return Ok(CanonicalHeight {
                value,
                n,
                gap: gc.gap.clone(),
                tail: Ball::new(Dyadic::zero(), tail, prec),
            });
        }
        prec *= 2;
    }
}

/// Degrees of the roots of `P^n(X) − P^n(α)`, one entry per root with
/// multiplicity, ascending.
#[derive(Clone, Debug, Serialize)]
pub struct SnapReport {
    pub degrees: Vec<usize>,
    pub squarefree: bool,
    #[serde(with = "crate::exactnum::rational::as_string")]
    pub target: Rational,
    pub factors: FactorReport,
}

impl SnapReport {
    pub fn max_degree(&self) -> usize {
        self.degrees.last().copied().unwrap_or(0)
    }
}

pub fn snap_degree_multiset(map: &PolyMap, alpha: &Rational, n: u32, cap: u64, seed: u64) -> Result<SnapReport> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    let it = iterate(map, n, cap)?;
    let target = it.eval(alpha);
    let poly = &it - &RatPoly::constant(target.clone());
    let (_, factors) = factor_rational(&poly, seed)?;
    let mut degrees = Vec::new();
    for f in &factors.factors {
        let deg = f.coeffs.degree().unwrap_or(0);
        degrees.extend(std::iter::repeat_n(deg, deg * f.mult as usize));
    }
    degrees.sort_unstable();
    Ok(SnapReport { degrees, squarefree: factors.is_squarefree(), target, factors })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IrreducibleCount {
    pub r: usize,
    pub with_multiplicity: u32,
    pub squarefree: bool,
}

pub fn irreducible_count(map: &PolyMap, alpha: &Rational, n: u32, cap: u64, seed: u64) -> Result<IrreducibleCount> {
    let snap = snap_degree_multiset(map, alpha, n, cap, seed)?;
    Ok(count_from(&snap))
}

pub fn count_from(snap: &SnapReport) -> IrreducibleCount {
    IrreducibleCount {
        r: snap.factors.distinct_count(),
        with_multiplicity: snap.factors.count_with_multiplicity(),
        squarefree: snap.squarefree,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Proportion {
    #[serde(with = "crate::exactnum::rational::as_string")]
    pub proportion: Rational,
    pub count: usize,
    pub total: usize,
    /// `D^(δn)`.
    pub threshold: Ball,
    pub squarefree: bool,
}

/// Whether `k ≤ D^(δn)`, decided exactly via `k^den ≤ D^(num·n)`.
pub fn within_threshold(k: usize, d: u32, delta: &Rational, n: u32) -> bool {
    let num = delta.numer();
    let den = delta.denom().to_u32().expect("small denominator");
    let lhs = num_traits::pow(BigInt::from(k), den as usize);
    if num.is_negative() {
        return k == 0;
    }
    let e = (num * BigInt::from(n)).to_usize().expect("small exponent");
    lhs <= num_traits::pow(BigInt::from(d), e)
}

/// Fraction of roots with degree at most `D^(δn)`.
pub fn low_degree_proportion_from(snap: &SnapReport, d: u32, n: u32, delta: &Rational, prec: u32) -> Result<Proportion> {
    if !delta.is_positive() {
        return Err(Error::domain("delta must be positive"));
    }
    if delta.denom() > &BigInt::from(1u32 << 16) || delta.numer() * BigInt::from(n) > BigInt::from(1u32 << 20) {
        return Err(Error::domain("delta must be a rational with small numerator and denominator"));
    }
    let count = snap.degrees.iter().filter(|&&k| within_threshold(k, d, delta, n)).count();
    let total = snap.degrees.len();
    let threshold = Ball::from_int(d as i64, prec)
        .log()?
        .mul_rational(&(delta * Rational::from_integer(n.into())))
        .exp();
    Ok(Proportion {
        proportion: Rational::new(BigInt::from(count), BigInt::from(total)),
        count,
        total,
        threshold,
        squarefree: snap.squarefree,
    })
}

pub fn low_degree_proportion(
    map: &PolyMap,
    alpha: &Rational,
    n: u32,
    delta: &Rational,
    cap: u64,
    seed: u64,
) -> Result<Proportion> {
    let snap = snap_degree_multiset(map, alpha, n, cap, seed)?;
    low_degree_proportion_from(&snap, map.degree(), n, delta, 64)
}

#[derive(Clone, Debug, Serialize)]
pub struct RegionReport {
    #[serde(with = "crate::exactnum::rational::as_string")]
    pub height: Rational,
    /// `∏ δ_v` over places with `δ_v > 1`, archimedean surrogate included.
    pub product: Ball,
    pub places: Vec<boettcher::DeltaV>,
    /// `Some(true)` when `H(α)` certainly exceeds the product.
    pub exceeds_product: Option<bool>,
    /// First place with `|α|_v > δ_v`.
    pub witness: Option<PlaceReport>,
    pub inside: bool,
}

pub fn bounded_height_region_check(map: &PolyMap, alpha: &Rational, prec: u32) -> Result<RegionReport> {
    let height = Rational::from_integer(rational_height(alpha));
    let mut places = Vec::new();
    let mut product = Ball::one(prec);
    for p in boettcher::exceptional_primes(map) {
        let dv = boettcher::delta_v(map, p)?;
        if dv.exceeds_one() {
            product = &product * &dv.value(prec)?;
            places.push(dv);
        }
    }
    let arch = boettcher::delta_archimedean(map);
    if arch.exceeds_one() {
        product = &product * &arch.value(prec)?;
    }
    places.push(arch);
    let hb = Ball::from_rational(&height, prec);
    let exceeds_product = if hb.gt(&product) {
        Some(true)
    } else if !hb.overlaps(&product) || hb.lt(&product) {
        Some(false)
    } else {
        None
    };
    let witness = boettcher::good_place(map, alpha, prec)?;
    let inside = witness.is_none();
    Ok(RegionReport { height, product, places, exceeds_product, witness, inside })
}
