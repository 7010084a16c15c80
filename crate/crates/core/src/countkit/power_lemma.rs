//! Partitions of `X` into parts `d₁ ≤ … ≤ d_M` whose small parts are sparse:
//! `Σ_{dᵢ ≤ R} dᵢ ≤ c·R^θ` for every `R > 0`.
//!
//! The left side is a step function of `R` that only jumps at integers and is
//! constant on `[k, k + 1)`, while the right side increases, so checking every
//! integer `R ≥ 1` is enough.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Ball, Rational};
use crate::exec::{map_collect, Execution};

/// Largest `X` the exhaustive search accepts.
pub const ORACLE_MAX_X: u64 = 40;

#[derive(Clone, Debug, Serialize)]
pub struct PowerSystem {
    #[serde(with = "crate::exactnum::rational::as_string")]
    pub c: Rational,
    #[serde(with = "crate::exactnum::rational::as_string")]
    pub theta: Rational,
}

impl PowerSystem {
    pub fn new(c: Rational, theta: Rational) -> Result<Self> {
        if c < Rational::from_integer(1.into()) {
            return Err(Error::domain("c must be at least 1"));
        }
        if theta < Rational::from_integer(2.into()) {
            return Err(Error::domain("θ must be at least 2"));
        }
        Ok(PowerSystem { c, theta })
    }

    /// Exact test of `s ≤ c·r^θ` for `θ = p/q`: `(s/c)^q ≤ r^p`.
    pub fn allows(&self, s: u64, r: u64) -> bool {
        let p = self.theta.numer().to_u32().expect("θ numerator fits u32");
        let q = self.theta.denom().to_u32().expect("θ denominator fits u32");
        let lhs = num_traits::pow(Rational::from_integer(s.into()) / &self.c, q as usize);
        let rhs = Rational::from_integer(num_traits::pow(BigInt::from(r), p as usize));
        lhs <= rhs
    }

    /// Whether `parts` satisfies the condition at every integer `R`.
    pub fn admits(&self, parts: &[u64]) -> bool {
        let mut sorted = parts.to_vec();
        sorted.sort_unstable();
        let mut sum = 0;
        for (k, &d) in sorted.iter().enumerate() {
            sum += d;
            if sorted.get(k + 1) != Some(&d) && !self.allows(sum, d) {
                return false;
            }
        }
        true
    }

    /// Greedy counts: `a_k` is the largest integer with `Σ_{i ≤ k} i·aᵢ ≤ c·k^θ`.
    pub fn greedy_counts(&self, k_max: u64) -> Vec<u64> {
        let mut counts = Vec::new();
        let mut used = 0u64;
        for k in 1..=k_max {
            let fits = |a: u64| self.allows(used + k * a, k);
            let mut hi = 1;
            while fits(hi) {
                hi *= 2;
            }
            let mut lo = 0;
            // fits(lo) holds, fits(hi) fails
            while hi - lo > 1 {
                let mid = (lo + hi) / 2;
                if fits(mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            counts.push(lo);
            used += k * lo;
        }
        counts
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PowerConstruction {
    pub m_parts: u64,
    /// `X₀ = Σ_{i ≤ m} i·aᵢ + n(m + 1)`.
    pub x0: u64,
    /// Greedy counts `a₁, …, a_{m+1}`.
    pub counts: Vec<u64>,
    pub m: u64,
    pub n: u64,
    /// The multiset realizing `X₀`, ascending.
    pub witness: Vec<u64>,
}

/// The extremal construction for `M` parts: all of the greedy parts of size
/// `≤ m`, topped up with `n < a_{m+1}` parts of size `m + 1`.
pub fn power_lemma_min_x(m_parts: u64, sys: &PowerSystem) -> Result<PowerConstruction> {
    if m_parts == 0 {
        return Err(Error::domain("M must be at least 1"));
    }
    let mut counts = Vec::new();
    let mut taken = 0u64;
    let mut x0 = 0u64;
    let mut witness = Vec::new();
    let mut k = 0u64;
    let step = 64;
    loop {
        if counts.len() as u64 <= k {
            let more = sys.greedy_counts(counts.len() as u64 + step);
            counts = more;
        }
        let a = counts[k as usize];
        let size = k + 1;
        if taken + a >= m_parts {
            let n = m_parts - taken;
            x0 += n * size;
            witness.extend(std::iter::repeat_n(size, n as usize));
            counts.truncate(k as usize + 1);
            return Ok(PowerConstruction { m_parts, x0, counts, m: k, n, witness });
        }
        taken += a;
        x0 += a * size;
        witness.extend(std::iter::repeat_n(size, a as usize));
        k += 1;
        if k > 1_000_000 {
            return Err(Error::guard("construction exceeds a million part sizes"));
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    pub x: u64,
    pub max_m: u64,
    pub witness: Vec<u64>,
}

/// Maximum number of parts over all admissible partitions of `x`, by
/// exhaustive search over nondecreasing part sequences.
pub fn power_lemma_oracle(x: u64, sys: &PowerSystem) -> Result<OracleResult> {
    if x == 0 {
        return Err(Error::domain("X must be positive"));
    }
    if x > ORACLE_MAX_X {
        return Err(Error::guard(format!("exhaustive search is capped at X = {ORACLE_MAX_X}")));
    }
    let mut best = Vec::new();
    let mut cur = Vec::new();
    search(x, 1, 0, sys, &mut cur, &mut best);
    Ok(OracleResult { x, max_m: best.len() as u64, witness: best })
}

fn search(remaining: u64, min_part: u64, sum: u64, sys: &PowerSystem, cur: &mut Vec<u64>, best: &mut Vec<u64>) {
    if remaining == 0 {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        return;
    }
    // every remaining part is at least min_part
    if cur.len() as u64 + remaining / min_part <= best.len() as u64 {
        return;
    }
    for d in min_part..=remaining {
        let rest = remaining - d;
        if rest != 0 && rest < d {
            continue;
        }
        // the parts of size ≤ d include the prefix and this one
        if !sys.allows(sum + d, d) {
            continue;
        }
        cur.push(d);
        search(rest, d, sum + d, sys, cur, best);
        cur.pop();
    }
}

/// Oracle results for `X = 1..=x_max`.
pub fn oracle_table(x_max: u64, sys: &PowerSystem, exec: Execution) -> Result<Vec<OracleResult>> {
    let xs: Vec<u64> = (1..=x_max).collect();
    map_collect(exec, &xs, |&x| power_lemma_oracle(x, sys)).into_iter().collect()
}

/// Smallest `X` admitting `M` parts, read from the oracle. Merging the two
/// largest parts keeps a partition admissible, so `M` parts are possible
/// exactly when `M ≤ oracle(X)`.
pub fn oracle_min_x(m_parts: u64, sys: &PowerSystem) -> Result<u64> {
    for x in 1..=ORACLE_MAX_X {
        if power_lemma_oracle(x, sys)?.max_m >= m_parts {
            return Ok(x);
        }
    }
    Err(Error::guard(format!("no admissible partition with M = {m_parts} and X ≤ {ORACLE_MAX_X}")))
}

/// `max_{M ≤ m_max} M / (c·X₀(M)^(1 − 1/θ))` over the construction.
pub fn power_constant(sys: &PowerSystem, m_max: u64, prec: u32) -> Result<Ball> {
    let expo = Ball::from_rational(&(Rational::from_integer(1.into()) - sys.theta.recip()), prec);
    let c = Ball::from_rational(&sys.c, prec);
    let mut best = Ball::zero(prec);
    for m in 1..=m_max {
        let x0 = power_lemma_min_x(m, sys)?.x0;
        let denom = &c * &Ball::from_int(x0 as i64, prec).pow(&expo)?;
        let ratio = Ball::from_int(m as i64, prec).div(&denom)?;
        best = best.max(&ratio);
    }
    Ok(best)
}

/// `c_θ·c·X^(1 − 1/θ)`.
pub fn power_bound(sys: &PowerSystem, c_theta: &Ball, x: u64) -> Result<Ball> {
    let prec = c_theta.prec();
    let expo = Ball::from_rational(&(Rational::from_integer(1.into()) - sys.theta.recip()), prec);
    let xb = Ball::from_int(x as i64, prec).pow(&expo)?;
    Ok(&(c_theta * &Ball::from_rational(&sys.c, prec)) * &xb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    fn sys() -> PowerSystem {
        PowerSystem::new(int(1), int(2)).unwrap()
    }

    #[test]
    fn greedy_counts_example() {
        assert_eq!(sys().greedy_counts(4), vec![1, 1, 2, 1]);
    }

    #[test]
    fn min_x_examples() {
        let c = power_lemma_min_x(4, &sys()).unwrap();
        assert_eq!(c.x0, 9);
        assert_eq!(c.witness, vec![1, 2, 3, 3]);
        assert!(sys().admits(&c.witness));
        let s = PowerSystem::new(rat(5, 2), rat(5, 2)).unwrap();
        assert_eq!(power_lemma_min_x(1, &s).unwrap().x0, 1);
        assert_eq!(power_lemma_min_x(1, &sys()).unwrap().x0, 1);
    }

    #[test]
    fn oracle_examples() {
        let s = sys();
        assert_eq!(power_lemma_oracle(9, &s).unwrap().max_m, 4);
        assert_eq!(power_lemma_oracle(1, &s).unwrap().max_m, 1);
        assert_eq!(power_lemma_oracle(3, &s).unwrap().max_m, 2);
        assert!(!s.admits(&[1, 1, 1]));
        assert!(s.admits(&[1, 2]));
        assert!(power_lemma_oracle(41, &s).is_err());
    }

    #[test]
    fn construction_matches_oracle() {
        let s = sys();
        for m in 1..=8 {
            assert_eq!(power_lemma_min_x(m, &s).unwrap().x0, oracle_min_x(m, &s).unwrap(), "M = {m}");
        }
    }

    #[test]
    fn rational_theta_comparison() {
        let s = PowerSystem::new(int(1), rat(5, 2)).unwrap();
        // 2^(5/2) ≈ 5.66
        assert!(s.allows(5, 2));
        assert!(!s.allows(6, 2));
    }
}
