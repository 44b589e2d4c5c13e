use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// Two covariance eigenvalues closer than the separation tolerance.
    #[error(
        "degenerate covariance spectrum: y[{i}] = {yi} and y[{j}] = {yj} have relative \
         separation {separation:e} below tolerance {tolerance:e}"
    )]
    Degenerate {
        i: usize,
        j: usize,
        yi: f64,
        yj: f64,
        separation: f64,
        tolerance: f64,
    },

    #[error(
        "precision exhausted: results at {last_digits} and {next_digits} digits still disagree \
         and the cap is max_digits = {max_digits}"
    )]
    PrecisionExhausted {
        last_digits: u32,
        next_digits: u32,
        max_digits: u32,
    },

    #[error(
        "frame rank collapse at step {step}: column volume underflowed between \
         renormalizations (renorm_every = {renorm_every}); use a smaller renorm_every"
    )]
    RankCollapse { step: u64, renorm_every: u64 },

    #[error("non-finite Monte Carlo sample in {estimator} at sample {index}")]
    NonFinite { estimator: &'static str, index: u64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::InvalidConfig(msg.into())
    }
}
