//! Truncated Laurent series in descending powers of `z`.
//!
//! A [`TruncSeries`] with leading exponent `lead` and `n` retained
//! coefficients stands for `Σ_{j<n} c_j z^(lead − j) + O(z^(lead − n))`.
//! Every retained coefficient is exact; everything below is unknown.
//!
//! Bookkeeping rules:
//! * `series_power(s, D)` keeps the length of `s` (a missing coefficient of
//!   `s` at relative index `n` first affects `s^D` at relative index `n`).
//! * `series_compose_poly(s, P)` with `deg P = D` turns `n` retained terms
//!   into `D·n`: an unknown term `c z^(1−n)` of `s` becomes
//!   `c P(z)^(1−n) = O(z^(D − Dn))`.

use std::fmt;

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::poly::RatPoly;
use super::rational::{fmt_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    lead: i64,
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    /// `coeffs[j]` is the coefficient of `z^(lead − j)`.
    pub fn new(lead: i64, coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one retained coefficient");
        TruncSeries { lead, coeffs }
    }

    /// `z` with `n` retained coefficients.
    pub fn identity(n: usize) -> Self {
        let mut c = vec![Rational::zero(); n.max(1)];
        c[0] = Rational::one();
        TruncSeries { lead: 1, coeffs: c }
    }

    pub fn lead(&self) -> i64 {
        self.lead
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Number of retained coefficients.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `z^e`, or `None` when `e` is outside the retained window.
    pub fn coeff_of(&self, e: i64) -> Option<&Rational> {
        let j = self.lead - e;
        if j < 0 {
            return Some(zero_ref());
        }
        self.coeffs.get(j as usize)
    }

    /// Lowest exponent whose coefficient is still exact.
    pub fn last_exponent(&self) -> i64 {
        self.lead - self.coeffs.len() as i64 + 1
    }

    pub fn truncate(&self, n: usize) -> Self {
        let n = n.clamp(1, self.coeffs.len());
        TruncSeries { lead: self.lead, coeffs: self.coeffs[..n].to_vec() }
    }

    /// Termwise difference over the window both series certify.
    pub fn sub(&self, other: &TruncSeries) -> TruncSeries {
        let lead = self.lead.max(other.lead);
        let last = self.last_exponent().max(other.last_exponent());
        let coeffs = (0..=(lead - last))
            .map(|j| {
                let e = lead - j;
                self.coeff_of(e).cloned().unwrap_or_default() - other.coeff_of(e).cloned().unwrap_or_default()
            })
            .collect();
        TruncSeries { lead, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

fn zero_ref() -> &'static Rational {
    static ZERO: std::sync::OnceLock<Rational> = std::sync::OnceLock::new();
    ZERO.get_or_init(Rational::zero)
}

// Ascending power series helpers: a[i] is the coefficient of w^i.

pub(crate) fn ps_mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `u^m` to `n` terms for `u_0 = 1` and any rational exponent `m`.
pub(crate) fn ps_pow(u: &[Rational], m: &Rational, n: usize) -> Vec<Rational> {
    assert!(u.first().is_some_and(|c| c.is_one()), "ps_pow needs unit constant term");
    let mut v = vec![Rational::zero(); n];
    if n == 0 {
        return v;
    }
    v[0] = Rational::one();
    let mp1 = m + Rational::one();
    // n·v_n = Σ_{k=1..n} ((m + 1)·k − n) u_k v_{n−k}
    for k in 1..n {
        let mut acc = Rational::zero();
        for i in 1..=k.min(u.len() - 1) {
            if u[i].is_zero() {
                continue;
            }
            let w = &mp1 * Rational::from_integer(i.into()) - Rational::from_integer(k.into());
            acc += w * &u[i] * &v[k - i];
        }
        v[k] = acc / Rational::from_integer(k.into());
    }
    v
}

/// `s^d` with the length of `s` preserved.
pub fn series_power(s: &TruncSeries, d: u32) -> TruncSeries {
    if d == 1 {
        return s.clone();
    }
    let n = s.coeffs.len();
    let c0 = s.coeffs[0].clone();
    if c0.is_zero() {
        // leading coefficient unknown to be nonzero: fall back to repeated products
        let mut acc = vec![Rational::one()];
        for _ in 0..d {
            acc = ps_mul(&acc, &s.coeffs, n);
        }
        return TruncSeries { lead: s.lead * d as i64, coeffs: acc };
    }
    let inv = c0.recip();
    let u: Vec<Rational> = s.coeffs.iter().map(|c| c * &inv).collect();
    let scale = num_traits::pow(c0, d as usize);
    let v = ps_pow(&u, &Rational::from_integer(d.into()), n);
    TruncSeries { lead: s.lead * d as i64, coeffs: v.into_iter().map(|c| c * &scale).collect() }
}

/// `s(P(z))` for monic `P` of degree `D ≥ 2` and `s` with leading exponent 1.
pub fn series_compose_poly(s: &TruncSeries, p: &RatPoly) -> Result<TruncSeries> {
    let d = check_map(p)?;
    compose_to(s, p, d * s.coeffs.len())
}

fn check_map(p: &RatPoly) -> Result<usize> {
    let d = p.degree().unwrap_or(0);
    if d < 2 {
        return Err(Error::domain("composition needs a polynomial of degree at least 2"));
    }
    if !p.is_monic() {
        return Err(Error::domain("composition needs a monic polynomial"));
    }
    Ok(d)
}

/// First `n_terms` coefficients of `s(P(z))`; requires `n_terms ≤ D · order(s)`.
pub(crate) fn compose_to(s: &TruncSeries, p: &RatPoly, n_terms: usize) -> Result<TruncSeries> {
    let d = check_map(p)?;
    if s.lead != 1 {
        return Err(Error::domain("composition needs a series with leading term z"));
    }
    debug_assert!(n_terms <= d * s.coeffs.len());
    let n = n_terms;
    // P(z) = z^D · Q(w), w = 1/z, Q(w) = Σ a_(D−i) w^i
    let q: Vec<Rational> = (0..=d).map(|i| p.coeff(d - i)).collect();
    let q_inv = ps_pow(&q, &-Rational::one(), n);
    let mut out = vec![Rational::zero(); n];
    // j = 0: c_0 · Q
    for (i, qi) in q.iter().enumerate().take(n) {
        out[i] += &s.coeffs[0] * qi;
    }
    // j ≥ 1: c_j · w^(Dj) · Q^(1−j)
    let mut pw: Vec<Rational> = vec![Rational::one()];
    for (j, c) in s.coeffs.iter().enumerate().skip(1) {
        let shift = d * j;
        if shift >= n {
            break;
        }
        if j >= 2 {
            pw = ps_mul(&pw, &q_inv, n - shift);
        }
        if c.is_zero() {
            continue;
        }
        for (i, x) in pw.iter().enumerate().take(n - shift) {
            out[shift + i] += c * x;
        }
    }
    Ok(TruncSeries { lead: d as i64, coeffs: out })
}

/// Compositional inverse `ψ` of `φ = z + …` (leading coefficient 1), to the same order.
pub fn series_inverse(phi: &TruncSeries) -> Result<TruncSeries> {
    if phi.lead != 1 || !phi.coeffs[0].is_one() {
        return Err(Error::domain("inversion needs a series of the form z + lower terms"));
    }
    let n = phi.coeffs.len();
    // ψ(φ(z)) = Σ_j d_j φ^(1−j); with φ = z·u(w), φ^(1−j) = z^(1−j)·u^(1−j)
    let u = &phi.coeffs;
    let mut pows: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut d: Vec<Rational> = vec![Rational::zero(); n];
    d[0] = Rational::one();
    pows.push(ps_pow(u, &Rational::one(), n));
    for k in 1..n {
        pows.push(ps_pow(u, &Rational::from_integer((1 - k as i64).into()), n));
        let mut acc = Rational::zero();
        for j in 0..k {
            if !d[j].is_zero() {
                acc += &d[j] * &pows[j][k - j];
            }
        }
        d[k] = -acc;
    }
    Ok(TruncSeries { lead: 1, coeffs: d })
}

/// `outer(inner(z))` for two series with leading term `z`, to the shorter order.
pub fn series_compose(outer: &TruncSeries, inner: &TruncSeries) -> Result<TruncSeries> {
    if outer.lead != 1 || inner.lead != 1 || !inner.coeffs[0].is_one() {
        return Err(Error::domain("series composition needs z + lower terms"));
    }
    let n = outer.coeffs.len().min(inner.coeffs.len());
    let mut out = vec![Rational::zero(); n];
    for (j, c) in outer.coeffs.iter().enumerate().take(n) {
        if c.is_zero() {
            continue;
        }
        let pw = ps_pow(&inner.coeffs[..n], &Rational::from_integer((1 - j as i64).into()), n - j);
        for (i, x) in pw.iter().enumerate() {
            out[j + i] += c * x;
        }
    }
    Ok(TruncSeries { lead: 1, coeffs: out })
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.lead - j as i64;
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "z")?,
                _ if c.is_one() => write!(f, "z^{e}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.last_exponent() - 1)
    }
}

impl Serialize for TruncSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TruncSeries", 3)?;
        st.serialize_field("lead_exponent", &self.lead)?;
        st.serialize_field("coeffs", &self.coeffs.iter().map(fmt_rational).collect::<Vec<_>>())?;
        st.serialize_field("order", &self.coeffs.len())?;
        st.end()
    }
}
