//! Shared oracles for the integration tests.
#![allow(dead_code)]

use num_rational::Ratio;
use num_traits::{One, Zero};

use dynheight::exactnum::IntPoly;

/// Kronecker's method on small integer polynomials, independent of the crate's factoring.
type Q = Ratio<i128>;

fn eval_i(p: &[i128], x: i128) -> i128 {
    p.iter().rev().fold(0, |acc, c| acc * x + c)
}

fn divisors(n: i128) -> Vec<i128> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.iter().flat_map(|&d| [d, -d]).collect()
}

fn interpolate(xs: &[i128], ys: &[i128]) -> Option<Vec<i128>> {
    let k = xs.len();
    let mut coeffs = vec![Q::zero(); k];
    for i in 0..k {
        let mut basis = vec![Q::one()];
        let mut denom = Q::one();
        for j in 0..k {
            if i == j {
                continue;
            }
            let mut next = vec![Q::zero(); basis.len() + 1];
            for (t, c) in basis.iter().enumerate() {
                next[t + 1] += c;
                next[t] -= c * Q::from(xs[j]);
            }
            basis = next;
            denom *= Q::from(xs[i] - xs[j]);
        }
        for (t, c) in basis.iter().enumerate() {
            coeffs[t] += c * Q::from(ys[i]) / denom;
        }
    }
    coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
}

fn divides(g: &[i128], f: &[i128]) -> bool {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    let lc = g[dg];
    while r.len() > dg && !r.is_empty() {
        let top = *r.last().unwrap();
        if top % lc != 0 {
            return false;
        }
        let q = top / lc;
        let shift = r.len() - 1 - dg;
        for (i, c) in g.iter().enumerate() {
            r[shift + i] -= q * c;
        }
        r.pop();
    }
    r.iter().all(|c| *c == 0)
}

pub fn kronecker_irreducible(f: &[i128]) -> bool {
    let n = f.len() - 1;
    if n <= 1 {
        return true;
    }
    for m in 1..=n / 2 {
        let mut xs = Vec::new();
        let mut x = 0i128;
        while xs.len() < m + 1 {
            if eval_i(f, x) != 0 {
                xs.push(x);
            }
            x = if x > 0 { -x } else { 1 - x };
        }
        let divs: Vec<Vec<i128>> = xs.iter().map(|&x| divisors(eval_i(f, x))).collect();
        let mut idx = vec![0usize; m + 1];
        loop {
            let ys: Vec<i128> = idx.iter().zip(&divs).map(|(&i, d)| d[i]).collect();
            if let Some(mut g) = interpolate(&xs, &ys) {
                while g.last() == Some(&0) {
                    g.pop();
                }
                if g.len() >= 2 && divides(&g, f) {
                    return false;
                }
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break;
                }
                idx[k] += 1;
                if idx[k] < divs[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    true
}

pub fn to_i128(p: &IntPoly) -> Vec<i128> {
    p.coeffs().iter().map(|c| i128::try_from(c).expect("small coefficient")).collect()
}

