//! Generalized maximum Lyapunov exponent L(q) = lim (1/N) log ⟨‖P_N‖^q⟩.

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::special::log_gamma;
use crate::spectrum::{CovarianceSpectrum, GlqPoint};

use super::bigmat::BigMatrix;
use super::isotropic::glq_isotropic;
use super::{ln_exact, working_bits};

/// L(q) = log(Γ(1 + q/2) det M(q) / det M(0)), with M(q) the Vandermonde
/// matrix whose first row is replaced by y_j^(−q/2).
///
/// Exactly equal eigenvalues y = c·(1, …, 1) use the isotropic form
/// shifted by −(q/2) log c.
pub fn glq_general(q: f64, y: &CovarianceSpectrum, ctx: &PrecisionContext) -> Result<GlqPoint> {
    if !(q >= 0.0 && q.is_finite()) {
        return Err(Error::domain(format!("q must be finite and nonnegative, got {q}")));
    }
    if y.all_equal() {
        let iso = glq_isotropic(q, y.dim(), ctx)?;
        let bits = working_bits(ctx);
        let shift = Float::with_val(bits, ln_exact(y.y()[0], bits) * q) / 2u32;
        return Ok(GlqPoint { q, l: iso.l - shift });
    }
    y.require_distinct(ctx.separation_tolerance())?;
    if q == 0.0 {
        return Ok(GlqPoint {
            q,
            l: Float::with_val(working_bits(ctx), 0),
        });
    }

    let start = ctx.digits_for_cancellation(moment_cancellation_log10(y.y(), q));
    let ratio = ctx.escalate_one(start, |bits| moment_ratio_at(y.y(), q, bits))?;
    if ratio.value <= 0 {
        return Err(Error::domain(format!(
            "moment determinant ratio is not positive at q = {q}"
        )));
    }
    let l = log_gamma(1.0 + q / 2.0, ctx)? + ratio.value.ln();
    Ok(GlqPoint { q, l })
}

/// det M(q) / det M(0): the constant coefficient of the polynomial that
/// interpolates y^(−q/2) at the nodes.
fn moment_ratio_at(y: &[f64], q: f64, bits: u32) -> Result<Float> {
    let nodes: Vec<Float> = y.iter().map(|v| Float::with_val(bits, *v)).collect();
    let lu = BigMatrix::vandermonde(&nodes).transpose().lu()?;
    let exponent = Float::with_val(bits, -q / 2.0);
    let rhs: Vec<Float> = nodes
        .iter()
        .map(|n| n.clone().pow(&exponent))
        .collect();
    Ok(lu.solve(&rhs).swap_remove(0))
}

fn moment_cancellation_log10(y: &[f64], q: f64) -> f64 {
    let d = y.len();
    (0..d)
        .map(|j| {
            let mut acc = (-q / 2.0) * y[j].log10();
            for l in (0..d).filter(|&l| l != j) {
                acc += y[l].log10() - (y[l] - y[j]).abs().log10();
            }
            acc.max(0.0) + d as f64 * 0.5
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn trace_sigma_at_q_two() {
        let y = CovarianceSpectrum::new(vec![1.0, 0.25]).unwrap();
        let l = glq_general(2.0, &y, &ctx()).unwrap().l;
        let err = Float::with_val(200, l - Float::with_val(200, 5).ln()).abs();
        assert!(err < 1e-30);
        // Tr Σ for a three-point spectrum.
        let y = CovarianceSpectrum::new(vec![0.5, 2.0, 10.0]).unwrap();
        let l = glq_general(2.0, &y, &ctx()).unwrap().l.to_f64();
        assert!((l - (2.0f64 + 0.5 + 0.1).ln()).abs() < 1e-14);
    }

    #[test]
    fn vanishes_at_zero() {
        let y = CovarianceSpectrum::new(vec![1.0, 0.25]).unwrap();
        assert!(glq_general(0.0, &y, &ctx()).unwrap().l.is_zero());
    }

    #[test]
    fn scaled_isotropic_route() {
        let y = CovarianceSpectrum::new(vec![4.0, 4.0, 4.0]).unwrap();
        let l = glq_general(2.0, &y, &ctx()).unwrap().l.to_f64();
        // E|x|^2 = Tr Σ = 3/4
        assert!((l - 0.75f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn rejects_negative_q() {
        let y = CovarianceSpectrum::new(vec![1.0, 0.25]).unwrap();
        assert!(glq_general(-0.5, &y, &ctx()).is_err());
    }
}
