//! Monte Carlo estimators used to cross-check the exact formulas.

mod chain;
pub mod dense;
mod diffusive;
pub mod rng;
pub mod samplers;
mod single_step;
pub mod stats;

pub use chain::{product_estimate, ChainConfig};
pub use diffusive::{diffusive_estimate, expm_taylor};
pub use rng::{GaussianRng, RngStream};
pub use samplers::{sample_complex_ginibre, sample_gue, sample_haar_unitary, sample_real_ginibre};
pub use single_step::{single_step_estimate, single_step_estimate_with, single_step_variance, SigmaFactor};
pub use stats::{EstimatorId, McEstimate, RunningStats};

/// Samples per independent block in i.i.d. estimators; block b uses
/// substream b.
pub const BLOCK_SAMPLES: u64 = 4096;

/// Chain steps per batch mean.
pub const CHAIN_BATCH: u64 = 1000;
