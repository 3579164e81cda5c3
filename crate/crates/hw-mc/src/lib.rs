//! Monte Carlo verification layer: Haar-unitary sampling with a counter-based
//! generator (deterministic per (seed, sample index) and across thread
//! counts), empirical word and entry-monomial estimates with z-scores against
//! exact values, and variance decay fits in the dimension.

pub mod estimate;
pub mod linalg;
pub mod rng;
pub mod sampler;

pub use estimate::{estimate_wg, estimate_word, variance_decay_fit, DecayFit, EstimateReport};
pub use linalg::{CMat, C64};
pub use sampler::{haar_unitary, SamplerConfig};
