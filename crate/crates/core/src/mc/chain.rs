//! Product of random factors applied to a d×k frame with periodic
//! Gram–Schmidt renormalization.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectrum::{CovarianceSpectrum, Field};

use super::dense::{Mat, Scalar};
use super::rng::{GaussianRng, RngStream};
use super::samplers::{sample_complex_ginibre, sample_real_ginibre};
use super::stats::{EstimatorId, McEstimate, RunningStats};
use super::CHAIN_BATCH;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChainConfig {
    /// Number of factors multiplied.
    pub m: u64,
    /// Frame dimension.
    pub k: usize,
    /// Steps between re-orthonormalizations.
    pub renorm_every: u64,
    pub field: Field,
}

impl ChainConfig {
    pub fn new(m: u64, k: usize, field: Field) -> Self {
        ChainConfig {
            m,
            k,
            renorm_every: 1,
            field,
        }
    }

    pub fn with_renorm_every(mut self, r: u64) -> Self {
        self.renorm_every = r;
        self
    }

    pub fn validate(&self, d: usize) -> Result<()> {
        if self.k < 1 || self.k > d {
            return Err(Error::config(format!("k = {} must lie in 1..={d}", self.k)));
        }
        if self.m < 1 {
            return Err(Error::config("m must be at least 1"));
        }
        if self.renorm_every < 1 {
            return Err(Error::config("renorm_every must be at least 1"));
        }
        Ok(())
    }
}

/// (accumulated log volume)/m for A_i = diag(1/√y) G_i, estimating
/// μ_1 + … + μ_k. The stderr comes from means over batches of
/// [`CHAIN_BATCH`] steps (rounded to a multiple of `renorm_every`).
pub fn product_estimate(cfg: &ChainConfig, y: &CovarianceSpectrum, rng: &RngStream) -> Result<McEstimate> {
    let d = y.dim();
    cfg.validate(d)?;
    let batch = batch_len(cfg.m, cfg.renorm_every)?;
    let scale: Vec<f64> = y.y().iter().map(|v| 1.0 / v.sqrt()).collect();
    let run = match cfg.field {
        Field::Complex => run_chain::<Complex64>(d, cfg.k, cfg.m, cfg.renorm_every, batch, 1.0 / batch as f64, rng, |g| {
            let mut a = sample_complex_ginibre(d, d, g);
            a.scale_rows(&scale);
            a
        })?,
        Field::Real => run_chain::<f64>(d, cfg.k, cfg.m, cfg.renorm_every, batch, 1.0 / batch as f64, rng, |g| {
            let mut a = sample_real_ginibre(d, d, g);
            a.scale_rows(&scale);
            a
        })?,
    };
    Ok(McEstimate {
        mean: run.total / cfg.m as f64,
        stderr: run.batches.std_err(),
        samples: run.batches.count(),
        batch_size: batch,
        estimator: EstimatorId::ProductChain,
        seed: rng.seed,
        stream_id: rng.stream_id,
    })
}

/// Smallest multiple of `renorm_every` at or above [`CHAIN_BATCH`], halved
/// until at least two full batches fit in `m` steps.
fn batch_len(m: u64, renorm_every: u64) -> Result<u64> {
    let mut batch = CHAIN_BATCH.div_ceil(renorm_every) * renorm_every;
    while m / batch < 2 && batch > renorm_every {
        batch = ((batch / 2) / renorm_every).max(1) * renorm_every;
    }
    if m / batch < 2 {
        return Err(Error::config(format!(
            "m = {m} steps is too few for two batches of {batch} (renorm_every = {renorm_every})"
        )));
    }
    Ok(batch)
}

pub(crate) struct ChainRun {
    /// Σ log r_jj over the whole chain.
    pub total: f64,
    /// `obs_scale` · Σ log r_jj within each full batch.
    pub batches: RunningStats,
}

/// Multiplies the frame E_{d×k} by `steps` factors from `factor`.
/// Batch b (of `batch` steps) draws from substream b.
#[allow(clippy::too_many_arguments)]
pub(crate) fn run_chain<T: Scalar>(
    d: usize,
    k: usize,
    steps: u64,
    renorm_every: u64,
    batch: u64,
    obs_scale: f64,
    rng: &RngStream,
    mut factor: impl FnMut(&mut GaussianRng) -> Mat<T>,
) -> Result<ChainRun> {
    debug_assert!(batch.is_multiple_of(renorm_every));
    let mut frame = Mat::<T>::eye(d, k);
    let mut total = 0.0;
    let mut batches = RunningStats::new();
    let mut step = 0u64;
    let mut b = 0u64;
    while step < steps {
        let mut g = rng.substream(b);
        let len = batch.min(steps - step);
        let mut acc = 0.0;
        let mut since = 0u64;
        for i in 0..len {
            frame = factor(&mut g).matmul(&frame);
            since += 1;
            if since == renorm_every || i + 1 == len {
                acc += frame.orthonormalize().ok_or(Error::RankCollapse {
                    step: step + i + 1,
                    renorm_every,
                })?;
                since = 0;
            }
        }
        total += acc;
        if len == batch {
            batches.push(acc * obs_scale);
        }
        step += len;
        b += 1;
    }
    Ok(ChainRun { total, batches })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn batch_lengths() {
        assert_eq!(batch_len(1_000_000, 1).unwrap(), 1000);
        assert_eq!(batch_len(1_000_000, 7).unwrap(), 1001);
        assert_eq!(batch_len(1000, 1).unwrap(), 500);
        assert!(batch_len(3, 2).is_err());
    }

    #[test]
    fn rejects_bad_configs() {
        let y = CovarianceSpectrum::new(vec![1.0, 0.25]).unwrap();
        let rng = RngStream::new(0, 0);
        for cfg in [
            ChainConfig::new(10_000, 0, Field::Complex),
            ChainConfig::new(10_000, 3, Field::Complex),
            ChainConfig::new(0, 1, Field::Complex),
            ChainConfig::new(10_000, 1, Field::Complex).with_renorm_every(0),
        ] {
            assert!(matches!(product_estimate(&cfg, &y, &rng), Err(Error::InvalidConfig(_))));
        }
    }

    #[test]
    fn long_gaps_between_renormalizations_collapse() {
        let y = CovarianceSpectrum::new(vec![1.0, 1e4]).unwrap();
        let cfg = ChainConfig::new(10_000, 2, Field::Real).with_renorm_every(2000);
        let err = product_estimate(&cfg, &y, &RngStream::new(3, 0)).unwrap_err();
        assert!(matches!(err, Error::RankCollapse { renorm_every: 2000, .. }), "{err:?}");
    }
}
