//! Products of exp((H1 + i H2)/√m) with independent GUE H1, H2.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectrum::DiffusionParams;

use super::chain::run_chain;
use super::dense::Mat;
use super::rng::RngStream;
use super::samplers::sample_gue;
use super::stats::{EstimatorId, McEstimate};

/// Relative truncation bound for the exponential series.
const EXPM_TOL: f64 = 1e-14;
/// Arguments above this norm are halved (and the result squared back).
const EXPM_MAX_NORM: f64 = 0.5;

/// e^A by truncated Taylor series.
///
/// With ν = ‖A‖_F the tail after the n-th term is at most
/// ν^(n+1)/(n+1)! · 1/(1 − ν/(n+2)), and ‖e^A‖ ≥ e^(−ν), so the series stops
/// once that bound is below 10⁻¹⁴ e^(−ν). Larger arguments are scaled by
/// 2^(−s) first and squared s times.
pub fn expm_taylor(a: &Mat<Complex64>) -> Mat<Complex64> {
    let n = a.rows();
    assert_eq!(n, a.cols(), "expm needs a square matrix");
    let norm = a.frobenius();
    let squarings = if norm > EXPM_MAX_NORM {
        (norm / EXPM_MAX_NORM).log2().ceil() as u32
    } else {
        0
    };
    let a = a.scaled(0.5f64.powi(squarings as i32));
    let nu = norm * 0.5f64.powi(squarings as i32);
    let floor = EXPM_TOL * (-nu).exp();

    let mut sum = Mat::eye(n, n);
    let mut term = Mat::eye(n, n);
    // ν^j / j!
    let mut scalar = 1.0;
    for j in 1.. {
        term = term.matmul(&a).scaled(1.0 / j as f64);
        sum = sum.add(&term);
        scalar *= nu / j as f64;
        let next = scalar * nu / (j + 1) as f64;
        let ratio = nu / (j + 2) as f64;
        if ratio < 1.0 && next / (1.0 - ratio) < floor {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum);
    }
    sum
}

/// Estimates μ_1 + … + μ_k of exp W(1) from `t_units` unit-time segments
/// of `m` substeps each. The frame is renormalized after every substep.
///
/// Each unit contributes one observation, log det of the frame Gram matrix
/// gained over that unit (twice the accumulated Σ log r_jj), which is the
/// normalization under which the diffusive spectrum is σ1²(d − 2k + 1).
pub fn diffusive_estimate(
    p: &DiffusionParams,
    k: usize,
    m: u64,
    t_units: u64,
    rng: &RngStream,
) -> Result<McEstimate> {
    let d = p.d;
    if k < 1 || k > d {
        return Err(Error::config(format!("k = {k} must lie in 1..={d}")));
    }
    if m < 100 {
        return Err(Error::config(format!("m = {m} substeps per unit time; at least 100 required")));
    }
    if t_units < 2 {
        return Err(Error::config("at least two unit-time segments are required"));
    }
    let inv_sqrt_m = 1.0 / (m as f64).sqrt();
    let i = Complex64::new(0.0, 1.0);
    let run = run_chain::<Complex64>(d, k, m * t_units, 1, m, 2.0, rng, |g| {
        let h1 = sample_gue(d, p.sigma1, g);
        let h2 = sample_gue(d, p.sigma2, g);
        let c = Mat::from_fn(d, d, |r, s| (h1[(r, s)] + i * h2[(r, s)]) * inv_sqrt_m);
        expm_taylor(&c)
    })?;
    Ok(McEstimate {
        mean: 2.0 * run.total / t_units as f64,
        stderr: run.batches.std_err(),
        samples: run.batches.count(),
        batch_size: m,
        estimator: EstimatorId::Diffusive,
        seed: rng.seed,
        stream_id: rng.stream_id,
    })
}
