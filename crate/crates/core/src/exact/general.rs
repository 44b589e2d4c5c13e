//! Exponents for general covariance Σ with distinct eigenvalues y_j of Σ⁻¹.
//!
//! Two independent routes are provided:
//!
//! * [`complex_exponent`] / [`complex_spectrum`] evaluate the determinant
//!   ratio det(M_k) / det(V), where V is the Vandermonde matrix
//!   `V[i][j] = y_j^i` and M_k is V with row k replaced by
//!   `(log y_j) y_j^(k−1)`. By Cramer's rule on Vᵀ this ratio is the k-th
//!   coefficient of the polynomial interpolating `y^(k−1) log y` at the
//!   nodes, which is what the pivoted LU solve computes.
//! * [`mu_max_closed`] / [`mu_min_closed`] expand the first and last rows
//!   into explicit Lagrange-weight sums.
//!
//! Both lose roughly log10 of the largest Lagrange weight in digits, so both
//! run under [`PrecisionContext::escalate`].

use rug::ops::Pow;
use rug::Float;

use crate::error::Result;
use crate::precision::{Escalated, PrecisionContext};
use crate::special::euler_gamma;
use crate::spectrum::{CovarianceSpectrum, LyapunovSpectrum, Provenance};

use super::bigmat::BigMatrix;
use super::isotropic::digamma_integers;
use super::{check_index, ln_exact, sub_exact, working_bits};

/// How a spectrum is evaluated.
enum Route {
    /// y = c·(1, …, 1): isotropic formula shifted by −½ log c.
    Isotropic(f64),
    General,
}

fn route(y: &CovarianceSpectrum, ctx: &PrecisionContext) -> Result<Route> {
    if y.all_equal() {
        return Ok(Route::Isotropic(y.y()[0]));
    }
    y.require_distinct(ctx.separation_tolerance())?;
    Ok(Route::General)
}

/// μ_k for Σ^{1/2} G with complex Ginibre G, k = 1 …= d.
pub fn complex_exponent(k: usize, y: &CovarianceSpectrum, ctx: &PrecisionContext) -> Result<Float> {
    let d = y.dim();
    check_index(k, d)?;
    let psi = digamma_integers(d, ctx);
    match route(y, ctx)? {
        Route::Isotropic(c) => Ok(isotropic_shifted(&psi, d, k, c, working_bits(ctx))),
        Route::General => {
            let ratios = determinant_ratios(y, &[k], ctx)?;
            Ok(exponent_from_ratio(&ratios.value[0], &psi[k - 1]))
        }
    }
}

/// All d exponents, μ_1 ≥ … ≥ μ_d.
pub fn complex_spectrum(y: &CovarianceSpectrum, ctx: &PrecisionContext) -> Result<LyapunovSpectrum> {
    let d = y.dim();
    let psi = digamma_integers(d, ctx);
    match route(y, ctx)? {
        Route::Isotropic(c) => {
            let bits = working_bits(ctx);
            Ok(LyapunovSpectrum {
                mu: (1..=d).map(|k| isotropic_shifted(&psi, d, k, c, bits)).collect(),
                provenance: if c == 1.0 {
                    Provenance::IsotropicComplex
                } else {
                    Provenance::ScaledIsotropicComplex
                },
                digits_used: ctx.digits,
            })
        }
        Route::General => {
            let ks: Vec<usize> = (1..=d).collect();
            let ratios = determinant_ratios(y, &ks, ctx)?;
            Ok(LyapunovSpectrum {
                mu: ratios
                    .value
                    .iter()
                    .zip(&psi)
                    .map(|(r, p)| exponent_from_ratio(r, p))
                    .collect(),
                provenance: Provenance::GeneralComplex,
                digits_used: ratios.digits_used,
            })
        }
    }
}

fn isotropic_shifted(psi: &[Float], d: usize, k: usize, c: f64, bits: u32) -> Float {
    let half_psi = Float::with_val(bits, &psi[d - k] / 2u32);
    half_psi - ln_exact(c, bits) / 2u32
}

/// μ_k = −½ ratio_k + ½ Ψ(k).
fn exponent_from_ratio(ratio: &Float, psi_k: &Float) -> Float {
    let prec = ratio.prec().max(psi_k.prec());
    Float::with_val(prec, psi_k - ratio) / 2u32
}

/// det(M_k) / det(V) for each requested k, escalating precision until stable.
pub fn determinant_ratios(
    y: &CovarianceSpectrum,
    ks: &[usize],
    ctx: &PrecisionContext,
) -> Result<Escalated<Vec<Float>>> {
    for &k in ks {
        check_index(k, y.dim())?;
    }
    let start = ctx.digits_for_cancellation(vandermonde_cancellation_log10(y.y()));
    ctx.escalate(start, |bits| determinant_ratios_at(y.y(), ks, bits))
}

fn determinant_ratios_at(y: &[f64], ks: &[usize], bits: u32) -> Result<Vec<Float>> {
    let nodes: Vec<Float> = y.iter().map(|v| Float::with_val(bits, *v)).collect();
    let logs: Vec<Float> = y.iter().map(|v| ln_exact(*v, bits)).collect();
    let v = BigMatrix::vandermonde(&nodes);
    // Row j of Vᵀ is (1, y_j, y_j², …); solving Vᵀ x = r gives x_k = det(V with row k := r) / det V.
    let lu = v.transpose().lu()?;
    Ok(ks
        .iter()
        .map(|&k| {
            let rhs: Vec<Float> = (0..y.len())
                .map(|j| Float::with_val(bits, v.get(k - 1, j) * &logs[j]))
                .collect();
            lu.solve(&rhs).swap_remove(k - 1)
        })
        .collect())
}

/// Crude float64 estimate of log10 of the cancellation in the Vandermonde solve.
fn vandermonde_cancellation_log10(y: &[f64]) -> f64 {
    let d = y.len();
    (0..d)
        .map(|j| {
            let mut acc = (d as f64 - 1.0) * y[j].max(1.0).log10() + y[j].ln().abs().max(1.0).log10();
            for l in (0..d).filter(|&l| l != j) {
                acc += (1.0 + y[l]).log10() - (y[l] - y[j]).abs().log10();
            }
            acc
        })
        .fold(0.0, f64::max)
}

/// Which end of the spectrum a Lagrange-weight sum targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Edge {
    /// w_j = 1 / Π_{l≠j} (1 − y_j / y_l)
    Max,
    /// w_j = 1 / Π_{l≠j} (1 − y_l / y_j)
    Min,
}

/// (Σ_j w_j log y_j, Σ_j w_j) at the given precision.
fn lagrange_sums(y: &[f64], edge: Edge, bits: u32) -> (Float, Float) {
    let d = y.len();
    let mut weighted = Float::with_val(bits, 0);
    let mut total = Float::with_val(bits, 0);
    let product: Float = y.iter().fold(Float::with_val(bits, 1), |acc, v| acc * *v);
    for j in 0..d {
        let mut den = Float::with_val(bits, 1);
        for l in (0..d).filter(|&l| l != j) {
            den *= sub_exact(y[l], y[j]);
        }
        let numer = match edge {
            Edge::Max => Float::with_val(bits, &product / y[j]),
            // y_j^(d−1) / Π (y_j − y_l) = y_j^(d−1) (−1)^(d−1) / Π (y_l − y_j)
            Edge::Min => {
                let p = Float::with_val(bits, y[j]).pow((d - 1) as u32);
                if (d - 1) % 2 == 1 {
                    -p
                } else {
                    p
                }
            }
        };
        let w = numer / den;
        weighted += Float::with_val(bits, &w * &ln_exact(y[j], bits));
        total += w;
    }
    (weighted, total)
}

fn lagrange_cancellation_log10(y: &[f64], edge: Edge) -> f64 {
    let d = y.len();
    (0..d)
        .map(|j| {
            let mut acc = y[j].ln().abs().max(1.0).log10();
            for l in (0..d).filter(|&l| l != j) {
                let numer = match edge {
                    Edge::Max => y[l],
                    Edge::Min => y[j],
                };
                acc += numer.log10() - (y[l] - y[j]).abs().log10();
            }
            acc
        })
        .fold(0.0, f64::max)
}

fn lagrange_weighted_log(y: &CovarianceSpectrum, edge: Edge, ctx: &PrecisionContext) -> Result<Escalated<Float>> {
    y.require_distinct(ctx.separation_tolerance())?;
    let start = ctx.digits_for_cancellation(lagrange_cancellation_log10(y.y(), edge));
    ctx.escalate_one(start, |bits| Ok(lagrange_sums(y.y(), edge, bits).0))
}

/// μ_1 = −½ Σ_j log y_j / Π_{l≠j}(1 − y_j/y_l) − γ/2.
pub fn mu_max_closed(y: &CovarianceSpectrum, ctx: &PrecisionContext) -> Result<Float> {
    Ok(mu_max_closed_escalated(y, ctx)?.value)
}

pub(crate) fn mu_max_closed_escalated(y: &CovarianceSpectrum, ctx: &PrecisionContext) -> Result<Escalated<Float>> {
    let s = lagrange_weighted_log(y, Edge::Max, ctx)?;
    let prec = s.value.prec();
    let gamma = euler_gamma(ctx);
    Ok(Escalated {
        value: -(Float::with_val(prec, &s.value + &gamma) / 2u32),
        digits_used: s.digits_used,
    })
}

/// μ_d = −½ Σ_j log y_j / Π_{l≠j}(1 − y_l/y_j) + ½ Ψ(d).
pub fn mu_min_closed(y: &CovarianceSpectrum, ctx: &PrecisionContext) -> Result<Float> {
    let s = lagrange_weighted_log(y, Edge::Min, ctx)?;
    let psi_d = digamma_integers(y.dim(), ctx).pop().expect("d >= 1");
    let prec = s.value.prec();
    Ok(Float::with_val(prec, &psi_d - &s.value) / 2u32)
}

/// Σ_j 1/Π_{l≠j}(1 − y_j/y_l) − 1, which vanishes identically.
pub fn partition_of_unity_residual(y: &CovarianceSpectrum, ctx: &PrecisionContext) -> Result<Float> {
    y.require_distinct(ctx.separation_tolerance())?;
    let start = ctx.digits_for_cancellation(lagrange_cancellation_log10(y.y(), Edge::Max));
    let total = ctx.escalate_one(start, |bits| Ok(lagrange_sums(y.y(), Edge::Max, bits).1))?;
    Ok(total.value - 1u32)
}
