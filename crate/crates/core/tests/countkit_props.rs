use num_traits::{Signed, Zero};
use proptest::prelude::*;

use dynheight::countkit::census::{census, reverify, Square, Verdict};
use dynheight::countkit::modular::{modular_eval, ModularFn};
use dynheight::countkit::power_lemma::{power_lemma_min_x, power_lemma_oracle, PowerSystem};
use dynheight::countkit::{disk_cover, jensen_zero_bound, minimal_degree, vanishing_polynomial};
use dynheight::exactnum::rational::{int, rat};
use dynheight::exactnum::{Ball, ComplexBall, Rational};
use dynheight::Execution;

fn ratio() -> impl Strategy<Value = (Rational, Rational)> {
    (1i64..=12, 1i64..=4, 1i64..=12, 1i64..=4).prop_map(|(a, b, c, d)| (rat(a, b), rat(c, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cover_covers_within_bound((big_r, r) in ratio()) {
        let c = disk_cover(&big_r, &r, 64).unwrap();
        prop_assert!(!Ball::from_int(c.len() as i64, 64).gt(&c.bound));
        let (rf, sf) = (Ball::from_rational(&big_r, 64).mid_f64(), Ball::from_rational(&r, 64).mid_f64());
        let n = 60;
        for i in 0..=n {
            for j in 0..=n {
                let x = -rf + 2.0 * rf * i as f64 / n as f64;
                let y = -rf + 2.0 * rf * j as f64 / n as f64;
                if x * x + y * y <= rf * rf {
                    prop_assert!(c.covers(x, y, sf), "({}, {}) uncovered", x, y);
                }
            }
        }
    }

    #[test]
    fn jensen_dominates_zero_count(roots in prop::collection::vec((1i64..=30, 1i64..=10, any::<bool>()), 1..8), r_num in 1i64..=8, k in 2i64..=5) {
        let roots: Vec<Rational> = roots.into_iter().map(|(n, d, neg)| rat(if neg { -n } else { n }, d)).collect();
        let r = rat(r_num, 4);
        let big_r = &r * int(k);
        let m: Rational = roots.iter().map(|z| &big_r + z.abs()).product();
        let g0: Rational = roots.iter().map(|z| z.abs()).product();
        let truth = roots.iter().filter(|z| z.abs() <= r).count() as u64;
        let b = |q: &Rational| Ball::from_rational(q, 128);
        prop_assert!(jensen_zero_bound(&b(&m), &b(&g0), &b(&r), &b(&big_r)).unwrap() >= truth);
    }

    #[test]
    fn vanishing_polynomial_vanishes(pts in prop::collection::btree_set((-6i64..=6, 1i64..=3, -6i64..=6, 1i64..=3), 0..12), extra in 0u32..2) {
        let pts: Vec<(Rational, Rational)> = pts.into_iter().map(|(a, b, c, d)| (rat(a, b), rat(c, d))).collect();
        let mut uniq: Vec<(Rational, Rational)> = Vec::new();
        for p in pts {
            if !uniq.contains(&p) {
                uniq.push(p);
            }
        }
        let t = minimal_degree(uniq.len()) + extra;
        let poly = vanishing_polynomial(&uniq, t).unwrap();
        prop_assert!(!poly.is_zero());
        prop_assert!(poly.total_degree() <= t);
        for (x, y) in &uniq {
            prop_assert!(poly.eval(x, y).is_zero());
        }
    }

    #[test]
    fn modular_doubling_stays_inside(re in -6i64..=6, im in 4i64..=12, n in 1u32..=4, lambda in any::<bool>()) {
        let tau = ComplexBall::from_rationals(&rat(re, 8), &rat(im, 4), 96);
        let which = if lambda { ModularFn::Lambda } else { ModularFn::Delta };
        let a = modular_eval(which, &tau, n, None).unwrap();
        let b = modular_eval(which, &tau, 2 * n, None).unwrap();
        prop_assert!(a.value.re.contains_dyadic(b.value.re.mid()));
        prop_assert!(a.value.im.contains_dyadic(b.value.im.mid()));
    }

    #[test]
    fn square_census_reverifies(h in 3u64..=14) {
        let rep = census(&Square, h, 64, Execution::best_available()).unwrap();
        let expected = (2..=h).filter(|q| q * q <= h).map(|q| dynheight::nt::euler_phi(q) as usize).sum::<usize>();
        prop_assert_eq!(rep.count, expected);
        for chk in reverify(&Square, &rep, Execution::Sequential) {
            prop_assert!(chk.consistent);
            prop_assert!(chk.after != Verdict::Undecided);
        }
    }
}

#[test]
fn power_lemma_oracle_against_construction() {
    let sys = PowerSystem::new(int(1), int(2)).unwrap();
    let constructions: Vec<_> = (1..=30).map(|m| power_lemma_min_x(m, &sys).unwrap()).collect();
    for c in &constructions {
        assert!(sys.admits(&c.witness), "M = {}", c.m_parts);
        assert_eq!(c.witness.iter().sum::<u64>(), c.x0);
        assert_eq!(c.witness.len() as u64, c.m_parts);
    }
    for x in 1..=30u64 {
        let oracle = power_lemma_oracle(x, &sys).unwrap();
        let predicted = constructions.iter().filter(|c| c.x0 <= x).map(|c| c.m_parts).max().unwrap_or(0);
        assert!(oracle.max_m <= predicted, "X = {x}: oracle {} above construction {predicted}", oracle.max_m);
        assert!(sys.admits(&oracle.witness));
    }
}
