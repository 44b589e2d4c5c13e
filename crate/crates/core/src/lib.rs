//! Exact and Monte Carlo Lyapunov exponents for products of Gaussian random
//! matrices `A_i = Σ^{1/2} G_i` with real or complex Ginibre `G_i`.

pub mod cli;
pub mod error;
pub mod exact;
pub mod mc;
pub mod precision;
pub mod report;
pub mod special;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use precision::PrecisionContext;
pub use spectrum::{CovarianceSpectrum, DiffusionParams, Field, GlqPoint, LyapunovSpectrum, Provenance};
