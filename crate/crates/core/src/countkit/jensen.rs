//! Upper bound for the number of zeros of a bounded analytic function in a disk.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactnum::Ball;

/// `⌊(log M − log|g(0)|) / log(R/r)⌋`, rounded from the upper end of the enclosure.
pub fn jensen_zero_bound(m: &Ball, g0: &Ball, r: &Ball, big_r: &Ball) -> Result<u64> {
    let zero = Ball::zero(m.prec());
    if g0.contains_zero() {
        return Err(Error::domain("|g(0)| must be nonzero"));
    }
    if g0.lt(&zero) || m.lt(g0) {
        return Err(Error::domain("requires M ≥ |g(0)| > 0"));
    }
    if !r.gt(&zero) || !big_r.gt(r) {
        return Err(Error::domain("requires R > r > 0"));
    }
    let num = &m.log()? - &g0.log()?;
    let den = big_r.div(r)?.log()?;
    let q = num.div(&den)?;
    let up = q.upper();
    if up.is_negative() {
        return Ok(0);
    }
    up.floor_to_int().to_u64().ok_or_else(|| Error::guard("zero bound exceeds 64 bits"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    fn b(q: crate::exactnum::Rational) -> Ball {
        Ball::from_rational(&q, 128)
    }

    #[test]
    fn examples() {
        assert_eq!(jensen_zero_bound(&b(int(3)), &b(int(3)), &b(rat(1, 2)), &b(int(1))).unwrap(), 0);
        assert_eq!(jensen_zero_bound(&b(rat(5, 4)), &b(rat(1, 4)), &b(rat(1, 2)), &b(int(1))).unwrap(), 2);
        let e = Ball::e(128);
        assert_eq!(jensen_zero_bound(&e, &Ball::one(128), &Ball::one(128), &e).unwrap(), 1);
        assert!(jensen_zero_bound(&b(int(1)), &b(int(0)), &b(rat(1, 2)), &b(int(1))).is_err());
        assert!(jensen_zero_bound(&b(int(1)), &b(int(1)), &b(int(1)), &b(rat(1, 2))).is_err());
    }
}
