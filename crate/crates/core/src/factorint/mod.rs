//! Factorization of integer polynomials into irreducibles over the rationals.
//!
//! Pipeline: content and sign, squarefree decomposition (Yun), then for each
//! squarefree part a modular factorization at a small prime (distinct- then
//! equal-degree splitting), quadratic Hensel lifting past twice the
//! leading-coefficient-scaled Mignotte bound, and exhaustive subset
//! recombination. A subset search that runs to completion certifies the
//! irreducibility of whatever is left.

pub mod hensel;
pub mod zmodp;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{IntPoly, RatPoly, Rational};
use crate::nt::next_prime;

/// Candidate primes tried before picking the one with the fewest modular factors.
const PRIME_CANDIDATES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub coeffs: IntPoly,
    pub mult: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorReport {
    #[serde(serialize_with = "ser_bigint")]
    pub content: BigInt,
    pub unit: i8,
    pub factors: Vec<Factor>,
    /// Seed of the equal-degree splitting generator.
    pub seed: u64,
}

fn ser_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl FactorReport {
    /// `unit · content · ∏ factor^mult`.
    pub fn reconstruct(&self) -> IntPoly {
        let mut acc = IntPoly::constant(&self.content * BigInt::from(self.unit));
        for f in &self.factors {
            acc = &acc * &f.coeffs.pow(f.mult);
        }
        acc
    }

    pub fn distinct_count(&self) -> usize {
        self.factors.len()
    }

    pub fn count_with_multiplicity(&self) -> u32 {
        self.factors.iter().map(|f| f.mult).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|f| f.mult == 1)
    }

    /// `(degree, multiplicity)` per irreducible factor, in report order.
    pub fn degree_multiset(&self) -> Vec<(usize, u32)> {
        self.factors
            .iter()
            .map(|f| (f.coeffs.degree().unwrap_or(0), f.mult))
            .collect()
    }
}

pub fn factor_over_z(p: &IntPoly) -> Result<FactorReport> {
    factor_over_z_seeded(p, 0)
}

pub fn factor_over_z_seeded(p: &IntPoly, seed: u64) -> Result<FactorReport> {
    if p.is_zero() {
        return Err(Error::domain("cannot factor the zero polynomial"));
    }
    let unit: i8 = if p.lc().is_some_and(|c| c.is_negative()) { -1 } else { 1 };
    let content = p.content();
    let f = p.primitive_part();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors: Vec<Factor> = Vec::new();

    // powers of X first
    let vx = f.coeffs().iter().take_while(|c| c.is_zero()).count();
    let f = IntPoly::new(f.coeffs()[vx..].to_vec());
    if vx > 0 {
        factors.push(Factor { coeffs: IntPoly::x(), mult: vx as u32 });
    }

    for (mult, part) in squarefree_decomposition(&f) {
        for g in factor_squarefree(&part, &mut rng) {
            factors.push(Factor { coeffs: g, mult });
        }
    }
    factors.sort_by(|a, b| {
        a.coeffs
            .degree()
            .cmp(&b.coeffs.degree())
            .then_with(|| a.coeffs.coeffs().cmp(b.coeffs.coeffs()))
    });
    let report = FactorReport { content, unit, factors, seed };
    debug_assert_eq!(report.reconstruct(), *p);
    Ok(report)
}

/// Factors a rational polynomial after clearing denominators; returns the scalar
/// `s` with `p = s · reconstruct()/content`, together with the report of the
/// primitive integer polynomial.
pub fn factor_rational(p: &RatPoly, seed: u64) -> Result<(Rational, FactorReport)> {
    let (scalar, prim) = p.to_primitive_int();
    if prim.is_zero() {
        return Err(Error::domain("cannot factor the zero polynomial"));
    }
    Ok((scalar, factor_over_z_seeded(&prim, seed)?))
}

/// Degrees with multiplicities of the irreducible factors.
pub fn irreducible_degree_multiset(p: &IntPoly) -> Result<Vec<(usize, u32)>> {
    Ok(factor_over_z(p)?.degree_multiset())
}

/// Yun's algorithm over `Z` on a primitive polynomial with positive leading
/// coefficient: returns `(i, a_i)` with `f = ∏ a_i^i`, each `a_i` squarefree,
/// primitive and nonconstant.
pub fn squarefree_decomposition(f: &IntPoly) -> Vec<(u32, IntPoly)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let c = f.gcd(&df).primitive_part();
    let mut w = f.exact_div(&c).expect("gcd divides f");
    let mut y = df.exact_div(&c).expect("gcd divides f'");
    let mut z = &y - &w.derivative();
    let mut i = 1u32;
    while w.degree().unwrap_or(0) > 0 {
        let g = if z.is_zero() { w.clone() } else { w.gcd(&z).primitive_part() };
        if g.degree().unwrap_or(0) > 0 {
            out.push((i, g.clone()));
        }
        w = w.exact_div(&g).expect("exact");
        y = z.exact_div(&g).expect("exact");
        z = &y - &w.derivative();
        i += 1;
    }
    out
}

struct ModularData {
    p: u64,
    factors: Vec<zmodp::Fp>,
    allowed: BTreeSet<usize>,
}

fn subset_sums(degs: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0usize]);
    for &d in degs {
        let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
        sums.extend(next);
    }
    sums
}

fn modular_stage<R: rand::Rng>(f: &IntPoly, rng: &mut R) -> ModularData {
    let n = f.degree().unwrap_or(0);
    let lc = f.lc().expect("nonzero").clone();
    let mut candidates: Vec<(u64, Vec<(zmodp::Fp, usize)>, usize)> = Vec::new();
    let mut allowed: Option<BTreeSet<usize>> = None;
    let mut p = 3u64;
    let mut tried = 0;
    while candidates.len() < PRIME_CANDIDATES && tried < 5000 {
        tried += 1;
        let bp = BigInt::from(p);
        if !lc.is_multiple_of(&bp) {
            let fp = zmodp::reduce(f, p);
            if zmodp::is_squarefree(&fp, p) {
                let m = zmodp::monic(&fp, p);
                let dd = zmodp::ddf(&m, p);
                let degs = zmodp::factor_degrees(&dd);
                let sums = subset_sums(&degs);
                allowed = Some(match allowed {
                    None => sums,
                    Some(a) => a.intersection(&sums).copied().collect(),
                });
                let count = degs.len();
                candidates.push((p, dd, count));
                if count == 1 {
                    break;
                }
            }
        }
        p = next_prime(p + 1);
    }
    let allowed = allowed.unwrap_or_else(|| (0..=n).collect());
    let (p, dd, _) = candidates
        .into_iter()
        .min_by_key(|(p, _, count)| (*count, *p))
        .expect("some prime keeps a squarefree polynomial squarefree");
    let mut factors = Vec::new();
    for (g, d) in dd {
        let mut parts = zmodp::edf(&g, d, p, rng);
        parts.sort();
        factors.extend(parts);
    }
    factors.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    ModularData { p, factors, allowed }
}

/// Irreducible factors of a squarefree primitive polynomial with positive leading coefficient.
fn factor_squarefree<R: rand::Rng>(f: &IntPoly, rng: &mut R) -> Vec<IntPoly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![f.clone()];
    }
    let data = modular_stage(f, rng);
    if data.factors.len() == 1 || data.allowed.iter().all(|&d| d == 0 || d == n) {
        return vec![f.clone()];
    }
    let lc = f.lc().unwrap().clone();
    // any factor's coefficients are at most 2^n·‖f‖₂ in absolute value
    let norm = f.norm2_squared().sqrt() + BigInt::one();
    let mignotte = (BigInt::one() << n) * norm;
    let bound = BigInt::from(2) * lc.abs() * mignotte;
    let (lifted, modulus) = hensel::multifactor_lift(f, &data.factors, data.p, &bound);
    recombine(f, lifted, &modulus, &data.allowed)
}

fn recombine(f: &IntPoly, lifted: Vec<IntPoly>, m: &BigInt, allowed: &BTreeSet<usize>) -> Vec<IntPoly> {
    let mut found = Vec::new();
    let mut rest = f.clone();
    let mut pool: Vec<IntPoly> = lifted;
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut hit = None;
        let total = rest.degree().unwrap_or(0);
        for subset in Combinations::new(pool.len(), size) {
            let d: usize = subset.iter().map(|&i| pool[i].degree().unwrap_or(0)).sum();
            if !allowed.contains(&d) || d == total {
                continue;
            }
            if let Some(g) = try_subset(&rest, &pool, &subset, m) {
                hit = Some((subset, g));
                break;
            }
        }
        match hit {
            Some((subset, g)) => {
                rest = rest.exact_div(&g).expect("checked division");
                found.push(g);
                let mut idx = 0;
                pool.retain(|_| {
                    let keep = !subset.contains(&idx);
                    idx += 1;
                    keep
                });
            }
            None => size += 1,
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        found.push(rest.primitive_part());
    }
    found
}

fn try_subset(rest: &IntPoly, pool: &[IntPoly], subset: &[usize], m: &BigInt) -> Option<IntPoly> {
    let lc = rest.lc()?.clone();
    let f0 = rest.coeff(0);
    if !f0.is_zero() {
        let mut c = lc.clone();
        for &i in subset {
            c = (c * pool[i].coeff(0)).mod_floor(m);
        }
        let c = symmetric(&c, m);
        if c.is_zero() || !(&lc * &f0).is_multiple_of(&c) {
            return None;
        }
    }
    let mut g = IntPoly::constant(lc);
    for &i in subset {
        g = hensel::mod_poly(&(&g * &pool[i]), m);
    }
    let g = hensel::sym_mod(&g, m).primitive_part();
    rest.exact_div(&g).map(|_| g)
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if r > (m >> 1usize) {
        r - m
    } else {
        r
    }
}

/// Lexicographic `k`-subsets of `0..n`.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { n, idx: (0..k).collect(), done: k > n || k == 0 }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(v: &[i64]) -> IntPoly {
        IntPoly::from_i64s(v)
    }

    #[test]
    fn difference_of_squares() {
        let r = factor_over_z(&ip(&[-1, 0, 1])).unwrap();
        assert_eq!(r.factors.len(), 2);
        assert_eq!(r.factors[0].coeffs, ip(&[-1, 1]));
        assert_eq!(r.factors[1].coeffs, ip(&[1, 1]));
    }

    #[test]
    fn x4_plus_16_irreducible() {
        let r = factor_over_z(&ip(&[16, 0, 0, 0, 1])).unwrap();
        assert_eq!(r.factors.len(), 1);
        assert_eq!(r.factors[0].mult, 1);
    }

    #[test]
    fn x8_minus_256() {
        let mut v = vec![0i64; 9];
        v[0] = -256;
        v[8] = 1;
        let r = factor_over_z(&ip(&v)).unwrap();
        let got: Vec<IntPoly> = r.factors.iter().map(|f| f.coeffs.clone()).collect();
        assert_eq!(got, vec![ip(&[-2, 1]), ip(&[2, 1]), ip(&[4, 0, 1]), ip(&[16, 0, 0, 0, 1])]);
    }

    #[test]
    fn multiplicities_and_content() {
        // −6 · x^3 · (x + 1)^2 · (x^2 + 1)
        let base = &(&ip(&[0, 0, 0, 1]) * &ip(&[1, 1]).pow(2)) * &ip(&[1, 0, 1]);
        let p = base.scale(&BigInt::from(-6));
        let r = factor_over_z(&p).unwrap();
        assert_eq!(r.unit, -1);
        assert_eq!(r.content, BigInt::from(6));
        assert_eq!(r.reconstruct(), p);
        assert_eq!(r.degree_multiset(), vec![(1, 3), (1, 2), (2, 1)]);
    }

    #[test]
    fn non_monic_factors() {
        let p = &(&ip(&[1, 3]) * &ip(&[-5, 0, 2])) * &ip(&[7, 1, 4]);
        let r = factor_over_z(&p).unwrap();
        assert_eq!(r.reconstruct(), p);
        assert_eq!(r.factors.len(), 3);
    }

    #[test]
    fn combinations_enumerate() {
        let all: Vec<Vec<usize>> = Combinations::new(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
    }
}
