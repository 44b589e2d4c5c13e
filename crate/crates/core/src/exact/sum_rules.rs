//! Sum rules for μ_1 + ⋯ + μ_d and the real d = 2 maximal exponent.
//! None of these need distinct covariance eigenvalues.

use rug::Float;

use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::special::{digamma, euler_gamma};
use crate::spectrum::CovarianceSpectrum;

use super::isotropic::digamma_integers;
use super::{ln_exact, working_bits};

fn sum_ln_y(y: &CovarianceSpectrum, bits: u32) -> Float {
    y.y().iter().fold(Float::with_val(bits, 0), |acc, v| acc + ln_exact(*v, bits))
}

/// Complex field: ½ Σ_m (−log y_m + Ψ(m)).
pub fn sum_rule_complex(y: &CovarianceSpectrum, ctx: &PrecisionContext) -> Float {
    let bits = working_bits(ctx);
    let psi_sum = digamma_integers(y.dim(), ctx)
        .iter()
        .fold(Float::with_val(bits, 0), |acc, p| acc + p);
    (psi_sum - sum_ln_y(y, bits)) / 2u32
}

/// Real field: ½ (log det Σ + d log 2 + Σ_{j=0}^{d−1} Ψ((j + 1)/2)).
pub fn sum_rule_real(y: &CovarianceSpectrum, ctx: &PrecisionContext) -> Result<Float> {
    let bits = working_bits(ctx);
    let d = y.dim();
    let log_det_sigma = -sum_ln_y(y, bits);
    let ln2 = Float::with_val(bits, rug::float::Constant::Log2);
    let mut total = log_det_sigma + Float::with_val(bits, &ln2 * d as u64);
    for j in 0..d {
        total += digamma((j + 1) as f64 / 2.0, ctx)?;
    }
    Ok(total / 2u32)
}

/// Real 2 × 2 factors: μ_1 = −γ/2 + ½ log(½ Tr Σ + √det Σ).
pub fn real_mu1_d2(y: &CovarianceSpectrum, ctx: &PrecisionContext) -> Result<Float> {
    if y.dim() != 2 {
        return Err(Error::domain(format!(
            "real_mu1_d2 needs d = 2, got d = {}",
            y.dim()
        )));
    }
    let bits = working_bits(ctx);
    let s1 = Float::with_val(bits, y.y()[0]).recip();
    let s2 = Float::with_val(bits, y.y()[1]).recip();
    let half_trace = Float::with_val(bits, &s1 + &s2) / 2u32;
    let sqrt_det = Float::with_val(bits, &s1 * &s2).sqrt();
    let log_term = (half_trace + sqrt_det).ln();
    Ok((log_term - euler_gamma(ctx)) / 2u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EULER: f64 = 0.577_215_664_901_532_9;
    const LN2: f64 = std::f64::consts::LN_2;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn spectrum(y: &[f64]) -> CovarianceSpectrum {
        CovarianceSpectrum::new(y.to_vec()).unwrap()
    }

    #[test]
    fn complex_sum_rule_values() {
        let c = ctx();
        let s = sum_rule_complex(&spectrum(&[1.0, 0.25]), &c).to_f64();
        assert!((s - (LN2 + 0.5 - EULER)).abs() < 1e-15);
        assert!((s - 0.615_931_5).abs() < 1e-7);
        let s = sum_rule_complex(&spectrum(&[1.0, 1.0]), &c).to_f64();
        assert!((s - (-0.077_215_664_901_532_86)).abs() < 1e-15);
        let e2 = std::f64::consts::E * std::f64::consts::E;
        let s = sum_rule_complex(&spectrum(&[e2, e2, e2]), &c).to_f64();
        let psi_sum = -EULER + (1.0 - EULER) + (1.5 - EULER);
        assert!((s - 0.5 * (-6.0 + psi_sum)).abs() < 1e-14);
    }

    #[test]
    fn real_sum_rule_values() {
        let c = ctx();
        let s = sum_rule_real(&spectrum(&[1.0, 1.0]), &c).unwrap().to_f64();
        assert!((s + EULER).abs() < 1e-15);
        let s = sum_rule_real(&spectrum(&[1.0, 0.25]), &c).unwrap().to_f64();
        assert!((s - (LN2 - EULER)).abs() < 1e-15);
        assert!((s - 0.115_931_5).abs() < 1e-7);
        let s = sum_rule_real(&spectrum(&[1.0]), &c).unwrap().to_f64();
        assert!((s - (-0.635_181_422_730_739)).abs() < 1e-12);
    }

    #[test]
    fn real_d2_maximal_exponent() {
        let c = ctx();
        let m = real_mu1_d2(&spectrum(&[1.0, 1.0]), &c).unwrap().to_f64();
        assert!((m - (0.5 * LN2 - EULER / 2.0)).abs() < 1e-15);
        let m = real_mu1_d2(&spectrum(&[1.0, 0.25]), &c).unwrap().to_f64();
        assert!((m - (-EULER / 2.0 + 0.5 * 4.5f64.ln())).abs() < 1e-15);
        assert!((m - 0.463_430_9).abs() < 1e-7);
        let base = real_mu1_d2(&spectrum(&[1.0, 0.25]), &c).unwrap();
        let scaled = real_mu1_d2(&spectrum(&[8.0, 2.0]), &c).unwrap();
        let shift = (scaled - base).to_f64();
        assert!((shift + 0.5 * 8f64.ln()).abs() < 1e-15);
        assert!(real_mu1_d2(&spectrum(&[1.0, 2.0, 3.0]), &c).is_err());
    }
}
