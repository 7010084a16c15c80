//! Counting tools: disk covers, zero bounds, auxiliary polynomials, the
//! sparse-partition system, bound shapes, modular evaluators and the
//! rational-point census.

pub mod census;
pub mod cover;
pub mod jensen;
pub mod masser;
pub mod modular;
pub mod power_lemma;
pub mod shapes;
pub mod vanishing;

pub use census::{census, enumerate_rationals, reverify, CensusFunction, CensusRecord, CensusReport, Verdict};
pub use cover::{disk_cover, Cover};
pub use jensen::jensen_zero_bound;
pub use masser::{masser_gap, masser_holds, masser_t_threshold, MasserT};
pub use modular::{delta_eval, lambda_eval, modular_eval, modular_eval_auto, ModularFn, ModularValue};
pub use power_lemma::{power_constant, power_lemma_min_x, power_lemma_oracle, PowerConstruction, PowerSystem};
pub use shapes::{bound_shape, DecayProfile, ShapeParams, ShapeTag};
pub use vanishing::{minimal_degree, vanishing_polynomial, BivariatePoly};
