use num_traits::One;
use proptest::prelude::*;

use dynheight::boettcher::{boettcher_series, delta_v, exceptional_primes, fstar_eval, good_places, inverse_series};
use dynheight::dynamics::PolyMap;
use dynheight::exactnum::rational::{int, rat};
use dynheight::exactnum::{series_compose, Ball, ComplexBall, RatPoly, Rational, TruncSeries};

fn monic_map() -> impl Strategy<Value = PolyMap> {
    (2usize..=3)
        .prop_flat_map(|d| prop::collection::vec((-9i64..=9, 1i64..=3).prop_map(|(n, d)| rat(n, d)), d))
        .prop_map(|mut c| {
            c.push(Rational::one());
            PolyMap::new(RatPoly::new(c)).unwrap()
        })
}

const PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn residual_vanishes(map in monic_map(), order in 1usize..=10) {
        let s = boettcher_series(&map, order).unwrap();
        prop_assert!(s.residual().unwrap().is_zero());
    }

    #[test]
    fn inverse_composes_to_identity(map in monic_map()) {
        let s = boettcher_series(&map, 8).unwrap();
        let psi = inverse_series(&s).unwrap();
        let id = series_compose(&psi, &s.phi).unwrap();
        let n = id.coeffs().len();
        prop_assert!(id.sub(&TruncSeries::identity(n)).is_zero());
    }

    #[test]
    fn exceptional_primes_are_exactly_the_large_deltas(map in monic_map()) {
        let exc = exceptional_primes(&map);
        for p in PRIMES {
            let d = delta_v(&map, p).unwrap();
            prop_assert_eq!(d.exceeds_one(), exc.contains(&p), "p = {}", p);
        }
    }

    #[test]
    fn good_places_have_margin(map in monic_map(), a in -400i64..400, b in 1i64..40) {
        let alpha = rat(a, b);
        if let Ok(places) = good_places(&map, &alpha, 64) {
            for pl in places {
                prop_assert!(pl.margin.gt(&Ball::one(64)));
            }
        }
    }
}

#[test]
fn fstar_values_invert_to_preimages() {
    let map = PolyMap::parse("X^2").unwrap();
    let alpha = int(4);
    let prec = 96;
    for n in 1..=3u32 {
        let dn = 1i64 << n;
        let target = Ball::from_rational(&num_traits::pow(alpha.clone(), dn as usize), prec);
        for k in 0..dn {
            let tau = ComplexBall::from_rationals(&rat(k, dn), &rat(1, 24), prec);
            let v = fstar_eval(&map, &alpha, &tau, 6, prec).unwrap().value;
            let beta = v.inv().unwrap();
            let powered = (0..n).fold(beta, |acc, _| &acc * &acc);
            assert!(powered.re.overlaps(&target) && powered.im.contains_zero(), "n = {n}, k = {k}");
        }
    }
}
