//! i.i.d. averages of ½ log det(G_kᴴ Σ G_k) over one Gaussian factor.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::spectrum::{CovarianceSpectrum, Field};

use super::dense::{Mat, Scalar};
use super::rng::{GaussianRng, RngStream};
use super::samplers::{sample_complex_ginibre, sample_haar_unitary, sample_real_ginibre};
use super::stats::{EstimatorId, McEstimate, RunningStats};
use super::BLOCK_SAMPLES;

/// How Σ^{1/2} is applied to a sampled G.
#[derive(Debug, Clone)]
pub enum SigmaFactor {
    /// Σ = diag(1/y), so Σ^{1/2} G scales row i by 1/√y_i.
    Diagonal(Vec<f64>),
    /// Full Σ^{1/2}, used to check that only the spectrum matters.
    Dense(Mat<Complex64>),
}

impl SigmaFactor {
    pub fn diagonal(y: &CovarianceSpectrum) -> Self {
        SigmaFactor::Diagonal(y.y().iter().map(|v| 1.0 / v.sqrt()).collect())
    }

    /// U diag(1/√y) Uᴴ for a Haar unitary U drawn from `rng`.
    pub fn conjugated(y: &CovarianceSpectrum, rng: &RngStream) -> Self {
        let d = y.dim();
        let u = sample_haar_unitary(d, &mut rng.rng());
        let mut scaled = u.adjoint();
        let s: Vec<f64> = y.y().iter().map(|v| 1.0 / v.sqrt()).collect();
        scaled.scale_rows(&s);
        SigmaFactor::Dense(u.matmul(&scaled))
    }

    pub fn dim(&self) -> usize {
        match self {
            SigmaFactor::Diagonal(s) => s.len(),
            SigmaFactor::Dense(m) => m.rows(),
        }
    }
}

/// Sample mean of ½ log det(G_kᴴ Σ G_k), estimating μ_1 + … + μ_k.
pub fn single_step_estimate(
    k: usize,
    y: &CovarianceSpectrum,
    field: Field,
    n_samples: u64,
    rng: &RngStream,
) -> Result<McEstimate> {
    single_step_estimate_with(k, &SigmaFactor::diagonal(y), field, n_samples, rng)
}

pub fn single_step_estimate_with(
    k: usize,
    sigma: &SigmaFactor,
    field: Field,
    n_samples: u64,
    rng: &RngStream,
) -> Result<McEstimate> {
    let d = sigma.dim();
    if k < 1 || k > d {
        return Err(Error::config(format!("k = {k} must lie in 1..={d}")));
    }
    if matches!(sigma, SigmaFactor::Dense(_)) && field == Field::Real {
        return Err(Error::config("a dense Σ^{1/2} is only supported for the complex field"));
    }
    if n_samples < 2 {
        return Err(Error::config("at least two samples are required"));
    }
    let stats = sample_blocks(n_samples, rng, |g| match field {
        Field::Complex => {
            let mut a = sample_complex_ginibre(d, k, g);
            apply(sigma, &mut a);
            half_log_gram_det(&a)
        }
        Field::Real => {
            let mut a = sample_real_ginibre(d, k, g);
            if let SigmaFactor::Diagonal(s) = sigma {
                a.scale_rows(s);
            }
            half_log_gram_det(&a)
        }
    })?;
    Ok(McEstimate {
        mean: stats.mean(),
        stderr: stats.std_err(),
        samples: stats.count(),
        batch_size: 1,
        estimator: EstimatorId::SingleStep,
        seed: rng.seed,
        stream_id: rng.stream_id,
    })
}

/// Variance of ½ log det(gᴴ Σ g) for a single complex column (k = 1).
/// Divided by m it predicts the squared stderr of an m-step product chain.
pub fn single_step_variance(y: &CovarianceSpectrum, n_samples: u64, rng: &RngStream) -> Result<f64> {
    if n_samples < 2 {
        return Err(Error::config("at least two samples are required"));
    }
    let sigma = SigmaFactor::diagonal(y);
    let d = y.dim();
    let stats = sample_blocks(n_samples, rng, |g| {
        let mut a = sample_complex_ginibre(d, 1, g);
        apply(&sigma, &mut a);
        half_log_gram_det(&a)
    })?;
    Ok(stats.variance())
}

fn apply(sigma: &SigmaFactor, a: &mut Mat<Complex64>) {
    match sigma {
        SigmaFactor::Diagonal(s) => a.scale_rows(s),
        SigmaFactor::Dense(m) => *a = m.matmul(a),
    }
}

fn half_log_gram_det<T: Scalar>(a: &Mat<T>) -> Option<f64> {
    a.adjoint().matmul(a).half_log_det_hpd()
}

/// Runs `draw` `n` times split into fixed blocks of [`BLOCK_SAMPLES`].
/// Block b always uses substream b and blocks merge in index order, so the
/// result does not depend on the number of worker threads.
fn sample_blocks(
    n: u64,
    rng: &RngStream,
    draw: impl Fn(&mut GaussianRng) -> Option<f64> + Sync,
) -> Result<RunningStats> {
    let blocks = n.div_ceil(BLOCK_SAMPLES);
    let partial: Vec<Result<RunningStats>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut g = rng.substream(b);
            let start = b * BLOCK_SAMPLES;
            let len = BLOCK_SAMPLES.min(n - start);
            let mut stats = RunningStats::new();
            for i in 0..len {
                match draw(&mut g) {
                    Some(v) if v.is_finite() => stats.push(v),
                    _ => {
                        return Err(Error::NonFinite {
                            estimator: "single_step",
                            index: start + i,
                        })
                    }
                }
            }
            Ok(stats)
        })
        .collect();
    partial
        .into_iter()
        .try_fold(RunningStats::new(), |acc, s| Ok(acc.merge(&s?)))
}
