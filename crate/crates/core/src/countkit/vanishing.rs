//! Integer polynomials in two variables vanishing on a finite point set.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::linalg::kernel_basis;
use crate::exactnum::Rational;

/// Exponent pairs `(i, j)` of `X^i Y^j` with `i + j ≤ t`, ordered by total
/// degree, then by decreasing power of `X`: `1, X, Y, X², XY, Y², …`.
pub fn monomials(t: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for total in 0..=t {
        for j in 0..=total {
            out.push((total - j, j));
        }
    }
    out
}

/// Number of monomials of total degree at most `t`.
pub fn monomial_count(t: u32) -> usize {
    ((t as usize + 1) * (t as usize + 2)) / 2
}

/// Smallest `t` with more monomials of degree `≤ t` than `n`.
pub fn minimal_degree(n: usize) -> u32 {
    let mut t = 0;
    while monomial_count(t) <= n {
        t += 1;
    }
    t
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BivariatePoly {
    /// `(i, j, c)` for the term `c·X^i Y^j`, in monomial order, zero terms omitted.
    #[serde(serialize_with = "terms_as_strings")]
    pub terms: Vec<(u32, u32, BigInt)>,
}

fn terms_as_strings<S: serde::Serializer>(t: &[(u32, u32, BigInt)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(t.len()))?;
    for (i, j, c) in t {
        seq.serialize_element(&(i, j, c.to_string()))?;
    }
    seq.end()
}

impl BivariatePoly {
    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(i, j, _)| i + j).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_coeff(&self) -> BigInt {
        self.terms.iter().map(|(_, _, c)| c.abs()).max().unwrap_or_default()
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(i, j, c)| Rational::from_integer(c.clone()) * pow(x, *i) * pow(y, *j))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

fn pow(x: &Rational, e: u32) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first
        for (k, (i, j, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts = Vec::new();
            if !a.is_one() || (*i == 0 && *j == 0) {
                parts.push(a.to_string());
            }
            for (v, e) in [("X", *i), ("Y", *j)] {
                match e {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// A nonzero integer polynomial of total degree `≤ t_max` vanishing at every
/// point: the kernel vector of the evaluation matrix belonging to its first
/// free column after reduction to echelon form, with denominators cleared and
/// content removed, sign fixed so the highest-order term is positive.
pub fn vanishing_polynomial(points: &[(Rational, Rational)], t_max: u32) -> Result<BivariatePoly> {
    for (a, pa) in points.iter().enumerate() {
        if points[..a].contains(pa) {
            return Err(Error::domain("points must be distinct"));
        }
    }
    let cols = monomial_count(t_max);
    if cols <= points.len() {
        return Err(Error::domain(format!(
            "{} points need degree at least {}, got {t_max}",
            points.len(),
            minimal_degree(points.len())
        )));
    }
    let mons = monomials(t_max);
    let matrix: Vec<Vec<Rational>> = points
        .iter()
        .map(|(x, y)| mons.iter().map(|&(i, j)| pow(x, i) * pow(y, j)).collect())
        .collect();
    let v = if points.is_empty() {
        let mut v = vec![Rational::zero(); cols];
        v[0] = Rational::one();
        v
    } else {
        kernel_basis(&matrix, cols).into_iter().next().expect("kernel is nonempty by dimension count")
    };
    let den = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut terms: Vec<(u32, u32, BigInt)> = mons
        .iter()
        .zip(ints)
        .filter(|(_, c)| !c.is_zero())
        .map(|(&(i, j), c)| (i, j, c / &content))
        .collect();
    if terms.last().is_some_and(|t| t.2.is_negative()) {
        for t in &mut terms {
            t.2 = -t.2.clone();
        }
    }
    Ok(BivariatePoly { terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::int;

    #[test]
    fn examples() {
        let p = vanishing_polynomial(&[], 0).unwrap();
        assert_eq!(p.to_string(), "1");
        let pts: Vec<_> = [(1, 1), (2, 4), (3, 9)].iter().map(|&(x, y)| (int(x), int(y))).collect();
        let p = vanishing_polynomial(&pts, 2).unwrap();
        assert_eq!(p.to_string(), "X^2 - Y");
        let p = vanishing_polynomial(&[(int(0), int(0))], 1).unwrap();
        assert_eq!(p.to_string(), "X");
        assert!(vanishing_polynomial(&pts, 1).is_err());
    }

    #[test]
    fn degree_count() {
        assert_eq!(minimal_degree(0), 0);
        assert_eq!(minimal_degree(1), 1);
        assert_eq!(minimal_degree(3), 2);
        assert_eq!(minimal_degree(12), 4);
        assert_eq!(monomials(2), vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]);
    }
}
