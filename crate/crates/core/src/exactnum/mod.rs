//! Exact rationals, polynomials, truncated series, dyadic balls and
//! certified root isolation.

pub mod ball;
pub mod dyadic;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod series;

pub use ball::{ball_eval_poly, ball_eval_poly_complex, Ball, ComplexBall};
pub use dyadic::{Dyadic, Round};
pub use poly::{parse_poly, IntPoly, Poly, RatPoly};
pub use rational::{fmt_rational, parse_rational, rat, Rational};
pub use roots::complex_roots_with_radii;
pub use series::{series_compose, series_compose_poly, series_inverse, series_power, TruncSeries};
