use num_bigint::BigInt;
use proptest::prelude::*;

use dynheight::exactnum::rational::rat;
use dynheight::exactnum::{Ball, ComplexBall, IntPoly, Rational};
use dynheight::heights::{height_algebraic, height_rational, height_rational_prec, modulus_lower_bound, weil_height_tuple, AlgebraicNumber};

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=30).prop_filter_map("nonzero", |(n, d)| (n != 0).then(|| rat(n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn height_of_powers(q in nonzero_rational(), k in 1usize..=5) {
        let h = height_rational(&q).exact.unwrap();
        let hk = height_rational(&num_traits::pow(q, k)).exact.unwrap();
        prop_assert_eq!(hk, num_traits::pow(h, k));
    }

    #[test]
    fn degree_one_matches_rational(q in nonzero_rational()) {
        let poly = IntPoly::new(vec![-q.numer().clone(), q.denom().clone()]);
        let alg = AlgebraicNumber::new(poly, None).unwrap();
        let a = height_algebraic(&alg, 128).unwrap();
        let r = height_rational(&q);
        prop_assert!(a.mult.contains_rational(r.exact.as_ref().unwrap()));
    }

    #[test]
    fn single_tuple_is_rational_height(q in nonzero_rational()) {
        let w = weil_height_tuple(std::slice::from_ref(&q), 128).unwrap();
        prop_assert_eq!(w.exact, height_rational(&q).exact);
    }

    #[test]
    fn modulus_bound_below_selected_root(n in 2i64..200) {
        let s = (n as f64).sqrt();
        prop_assume!(s.fract() != 0.0);
        let sel = ComplexBall::new(
            Ball::from_rational(&Rational::new(BigInt::from((s * 1e6) as i64), BigInt::from(1_000_000)), 64).add_error(&dynheight::exactnum::Dyadic::pow2(-10)),
            Ball::zero(64),
        );
        let alg = AlgebraicNumber::new(IntPoly::from_i64s(&[-n, 0, 1]), Some(sel.clone())).unwrap();
        let b = modulus_lower_bound(&alg, 2, 128).unwrap();
        prop_assert_eq!(b.selector_check, Some(true));
        prop_assert!(!sel.abs().lt(&b.bound));
    }

    #[test]
    fn radius_shrinks_with_precision(q in nonzero_rational(), n in 2i64..50) {
        let lo = height_rational_prec(&q, 64);
        let hi = height_rational_prec(&q, 256);
        prop_assert!(hi.log.rad() <= lo.log.rad());
        let alg = AlgebraicNumber::new(IntPoly::from_i64s(&[-n, 0, 0, 1]), None);
        if let Ok(alg) = alg {
            let a = height_algebraic(&alg, 64).unwrap();
            let b = height_algebraic(&alg, 256).unwrap();
            prop_assert!(b.log.rad() <= a.log.rad());
        }
    }
}
