//! Absolute heights of rationals, algebraic numbers and rational tuples.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::rational::{fmt_rational, rational_height};
use crate::exactnum::{complex_roots_with_radii, Ball, ComplexBall, IntPoly, Rational};
use crate::factorint::factor_over_z;
use crate::nt::prime_divisors;

/// An algebraic number given by its minimal polynomial and, optionally, an
/// isolating ball for the particular root.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    min_poly: IntPoly,
    root_selector: Option<ComplexBall>,
}

impl AlgebraicNumber {
    /// Checks that `min_poly` is primitive with positive leading coefficient and irreducible.
    pub fn new(min_poly: IntPoly, root_selector: Option<ComplexBall>) -> Result<Self> {
        let deg = min_poly.degree().unwrap_or(0);
        if deg == 0 {
            return Err(Error::domain("minimal polynomial must have positive degree"));
        }
        if !min_poly.content().is_one() || min_poly.lc().is_some_and(|c| c.is_negative()) {
            return Err(Error::domain("minimal polynomial must be primitive with positive leading coefficient"));
        }
        let report = factor_over_z(&min_poly)?;
        if report.factors.len() != 1 || report.factors[0].mult != 1 {
            return Err(Error::domain("minimal polynomial is reducible"));
        }
        Ok(AlgebraicNumber { min_poly, root_selector })
    }

    pub fn rational(q: &Rational) -> Self {
        let min_poly = IntPoly::new(vec![-q.numer().clone(), q.denom().clone()]);
        AlgebraicNumber { min_poly, root_selector: None }
    }

    pub fn min_poly(&self) -> &IntPoly {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree().unwrap_or(0)
    }

    pub fn root_selector(&self) -> Option<&ComplexBall> {
        self.root_selector.as_ref()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        (self.degree() == 1).then(|| Rational::new(-self.min_poly.coeff(0), self.min_poly.coeff(1)))
    }

    pub fn is_zero(&self) -> bool {
        self.degree() == 1 && self.min_poly.coeff(0).is_zero()
    }
}

/// Multiplicative height with its logarithm. `exact` holds the multiplicative
/// value when it is a known rational.
#[derive(Clone, Debug)]
pub struct HeightValue {
    pub mult: Ball,
    pub log: Ball,
    pub exact: Option<Rational>,
}

impl HeightValue {
    fn from_exact(q: Rational, prec: u32) -> Self {
        let mult = Ball::from_rational(&q, prec);
        let log = mult.log().expect("heights are at least 1");
        HeightValue { mult, log, exact: Some(q) }
    }
}

impl Serialize for HeightValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("HeightValue", 3)?;
        st.serialize_field("height_mult", &self.mult)?;
        st.serialize_field("height_log", &self.log)?;
        st.serialize_field("exact", &self.exact.as_ref().map(fmt_rational))?;
        st.end()
    }
}

pub const DEFAULT_PREC: u32 = 128;

pub fn height_rational(q: &Rational) -> HeightValue {
    height_rational_prec(q, DEFAULT_PREC)
}

pub fn height_rational_prec(q: &Rational, prec: u32) -> HeightValue {
    HeightValue::from_exact(Rational::from_integer(rational_height(q)), prec)
}

/// `(a · ∏ max(1, |z_i|))^(1/deg)` over the complex roots of the minimal polynomial.
pub fn height_algebraic(alpha: &AlgebraicNumber, prec: u32) -> Result<HeightValue> {
    if let Some(q) = alpha.as_rational() {
        return Ok(height_rational_prec(&q, prec));
    }
    let wp = prec + 32;
    let roots = complex_roots_with_radii(alpha.min_poly(), wp)?;
    let one = Ball::one(wp);
    let mut mahler = Ball::from_bigint(alpha.min_poly().lc().expect("nonzero"), wp);
    for z in &roots {
        mahler = &mahler * &z.abs().max(&one);
    }
    let deg = alpha.degree() as i64;
    let log = mahler.log()?.div_int(deg);
    let mult = log.exp();
    Ok(HeightValue { mult: mult.with_prec(prec), log: log.with_prec(prec), exact: None })
}

/// Local factors `max_i(1, |t_i|_v)` of a rational tuple: the archimedean one
/// first (`None`), then one per prime dividing a denominator.
pub fn weil_local_factors(t: &[Rational]) -> Vec<(Option<BigInt>, Rational)> {
    let mut out = Vec::new();
    let arch = t
        .iter()
        .map(|x| x.abs())
        .fold(Rational::one(), |acc, x| if x > acc { x } else { acc });
    out.push((None, arch));
    let den_lcm = t.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    for p in prime_divisors(&den_lcm) {
        let p = BigInt::from(p);
        // |t_i|_p = p^(−v_p(t_i)); the maximum comes from the largest denominator valuation
        let v = t
            .iter()
            .map(|x| crate::nt::valuation(x.denom(), p.magnitude()))
            .max()
            .unwrap_or(0);
        out.push((Some(p.clone()), Rational::from_integer(num_traits::pow(p, v as usize))));
    }
    out
}

/// Logarithmic Weil height of a tuple of rationals. `exact` is the rational `R`
/// with `h = log R`.
pub fn weil_height_tuple(t: &[Rational], prec: u32) -> Result<HeightValue> {
    if t.is_empty() {
        return Err(Error::domain("Weil height of an empty tuple"));
    }
    let r: Rational = weil_local_factors(t).into_iter().map(|(_, f)| f).product();
    Ok(HeightValue::from_exact(r, prec))
}

#[derive(Clone, Debug, Serialize)]
pub struct ModulusBound {
    pub bound: Ball,
    #[serde(serialize_with = "ser_opt_rat")]
    pub exact: Option<Rational>,
    /// Whether the bound was checked against the root selector (and held).
    pub selector_check: Option<bool>,
}

fn ser_opt_rat<S: Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_some(&fmt_rational(q)),
        None => s.serialize_none(),
    }
}

/// `H(α)^(−d)`, a lower bound for `|α|` when `α ≠ 0` has degree at most `d`.
pub fn modulus_lower_bound(alpha: &AlgebraicNumber, d: u32, prec: u32) -> Result<ModulusBound> {
    if alpha.is_zero() {
        return Err(Error::domain("modulus lower bound of zero"));
    }
    if alpha.degree() > d as usize {
        return Err(Error::domain(format!("degree {} exceeds the bound d = {d}", alpha.degree())));
    }
    let (bound, exact) = if let Some(q) = alpha.as_rational() {
        let h = Rational::from_integer(rational_height(&q));
        let e = num_traits::pow(h, d as usize).recip();
        (Ball::from_rational(&e, prec), Some(e))
    } else {
        let h = height_algebraic(alpha, prec + 16)?;
        let b = (-&h.log.mul_rational(&Rational::from_integer(d.into()))).exp();
        (b.with_prec(prec), None)
    };
    let selector_check = match (alpha.root_selector(), alpha.as_rational()) {
        (Some(sel), _) => Some(!sel.abs().lt(&bound)),
        (None, Some(q)) => Some(!Ball::from_rational(&q.abs(), prec).lt(&bound)),
        _ => None,
    };
    Ok(ModulusBound { bound, exact, selector_check })
}

/// `1 − 1/(2·l·d·log H)` with `l = log a / log b`. Rejects parameters that
/// certainly violate `a ≥ b^e > 1`, `a ≥ e`, `d ≥ 2`, `H ≥ e`.
pub fn alpha_radius_cap(a: &Ball, b: &Ball, d: u32, h: &Ball) -> Result<Ball> {
    let prec = a.prec().max(b.prec()).max(h.prec());
    let e = Ball::e(prec);
    let one = Ball::one(prec);
    if d < 2 {
        return Err(Error::domain("degree bound must be at least 2"));
    }
    if !b.gt(&Ball::zero(prec)) && !b.overlaps(&Ball::zero(prec)) {
        return Err(Error::domain("b must be positive"));
    }
    if !b.gt(&one) {
        // need b > 1 certainly for log b > 0
        return Err(Error::domain("b must exceed 1"));
    }
    let b_pow_e = b.pow(&e)?;
    if a.lt(&b_pow_e) {
        return Err(Error::domain("requires a ≥ b^e"));
    }
    if a.lt(&e) {
        return Err(Error::domain("requires a ≥ e"));
    }
    if h.lt(&e) {
        return Err(Error::domain("requires H ≥ e"));
    }
    let l = a.log()?.div(&b.log()?)?;
    let denom = &(&l * &Ball::from_int(2 * d as i64, prec)) * &h.log()?;
    Ok(&one - &denom.inv()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    #[test]
    fn rational_heights() {
        assert_eq!(height_rational(&rat(1, 2)).exact, Some(int(2)));
        assert_eq!(height_rational(&int(0)).exact, Some(int(1)));
        assert_eq!(height_rational(&rat(7, 3)).exact, Some(int(7)));
        assert!(height_rational(&int(0)).log.contains_rational(&int(0)));
    }

    #[test]
    fn algebraic_heights() {
        let sqrt2 = AlgebraicNumber::new(IntPoly::from_i64s(&[-2, 0, 1]), None).unwrap();
        let h = height_algebraic(&sqrt2, 96).unwrap();
        assert!((h.mult.mid_f64() - std::f64::consts::SQRT_2).abs() < 1e-14);
        assert!(h.mult.sqr().contains_rational(&int(2)));
        let two_i = AlgebraicNumber::new(IntPoly::from_i64s(&[4, 0, 1]), None).unwrap();
        let h = height_algebraic(&two_i, 96).unwrap();
        assert!(h.mult.contains_rational(&int(2)));
        let lin = AlgebraicNumber::new(IntPoly::from_i64s(&[-2, 1]), None).unwrap();
        assert_eq!(height_algebraic(&lin, 64).unwrap().exact, Some(int(2)));
        assert!(AlgebraicNumber::new(IntPoly::from_i64s(&[-1, 0, 1]), None).is_err());
    }

    #[test]
    fn weil_examples() {
        assert_eq!(weil_height_tuple(&[int(2), int(3)], 64).unwrap().exact, Some(int(3)));
        assert_eq!(weil_height_tuple(&[rat(1, 2)], 64).unwrap().exact, Some(int(2)));
        assert_eq!(weil_height_tuple(&[int(1)], 64).unwrap().exact, Some(int(1)));
        assert!(weil_height_tuple(&[], 64).is_err());
    }

    #[test]
    fn modulus_bounds() {
        let half = AlgebraicNumber::rational(&rat(1, 2));
        let b = modulus_lower_bound(&half, 1, 64).unwrap();
        assert_eq!(b.exact, Some(rat(1, 2)));
        assert_eq!(b.selector_check, Some(true));
        let third = AlgebraicNumber::rational(&rat(1, 3));
        assert_eq!(modulus_lower_bound(&third, 2, 64).unwrap().exact, Some(rat(1, 9)));
        let sqrt2 = AlgebraicNumber::new(IntPoly::from_i64s(&[-2, 0, 1]), None).unwrap();
        let b = modulus_lower_bound(&sqrt2, 2, 64).unwrap();
        assert!(b.bound.contains_rational(&rat(1, 2)));
        assert_eq!(b.selector_check, None);
        assert!(modulus_lower_bound(&AlgebraicNumber::rational(&int(0)), 1, 64).is_err());
    }

    #[test]
    fn radius_cap() {
        let e = Ball::e(128);
        let e3 = Ball::from_int(3, 128).exp();
        let cap = alpha_radius_cap(&e3, &e, 2, &e).unwrap();
        assert!(cap.contains_rational(&rat(11, 12)));
        let e2 = Ball::from_int(2, 128).exp();
        let cap = alpha_radius_cap(&e3, &e, 2, &e2).unwrap();
        assert!(cap.contains_rational(&rat(23, 24)));
        assert!(alpha_radius_cap(&e, &e, 2, &e).is_err());
    }
}
