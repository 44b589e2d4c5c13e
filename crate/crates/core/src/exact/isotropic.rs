//! Σ = I closed forms: complex and real Ginibre spectra, partial sums and the
//! isotropic generalized exponent.

use rug::Float;

use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::special::{digamma, euler_gamma, log_gamma};
use crate::spectrum::{GlqPoint, LyapunovSpectrum, Provenance};

use super::working_bits;

/// Ψ(1), …, Ψ(n) by the recurrence Ψ(m + 1) = Ψ(m) + 1/m.
pub(crate) fn digamma_integers(n: usize, ctx: &PrecisionContext) -> Vec<Float> {
    let bits = working_bits(ctx);
    let mut out = Vec::with_capacity(n);
    let mut psi = Float::with_val(bits, -euler_gamma(ctx));
    for m in 1..=n {
        out.push(psi.clone());
        psi += Float::with_val(bits, m as u64).recip();
    }
    out
}

fn check_dim(d: usize) -> Result<()> {
    if d < 1 {
        Err(Error::domain("dimension must be at least 1"))
    } else {
        Ok(())
    }
}

/// μ_k = ½ Ψ(d − k + 1) for complex Ginibre factors with E|g|² = 1.
pub fn isotropic_complex_spectrum(d: usize, ctx: &PrecisionContext) -> Result<LyapunovSpectrum> {
    check_dim(d)?;
    let psi = digamma_integers(d, ctx);
    let mu = (1..=d).map(|k| Float::with_val(psi[0].prec(), &psi[d - k] / 2u32)).collect();
    Ok(LyapunovSpectrum {
        mu,
        provenance: Provenance::IsotropicComplex,
        digits_used: ctx.digits,
    })
}

/// Newman's spectrum for real Ginibre factors: μ_i = ½ (log 2 + Ψ((d − i + 1)/2)).
pub fn isotropic_real_spectrum(d: usize, ctx: &PrecisionContext) -> Result<LyapunovSpectrum> {
    check_dim(d)?;
    let bits = working_bits(ctx);
    let ln2 = Float::with_val(bits, rug::float::Constant::Log2);
    let mu = (1..=d)
        .map(|i| {
            let psi = digamma((d - i + 1) as f64 / 2.0, ctx)?;
            Ok(Float::with_val(bits, &ln2 + &psi) / 2u32)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LyapunovSpectrum {
        mu,
        provenance: Provenance::IsotropicReal,
        digits_used: ctx.digits,
    })
}

/// μ_1 + ⋯ + μ_k = ½ Σ_{j=0}^{k−1} Ψ(d − j).
pub fn partial_sum_isotropic(d: usize, k: usize, ctx: &PrecisionContext) -> Result<Float> {
    check_dim(d)?;
    if k < 1 || k > d {
        return Err(Error::domain(format!("partial sum index k = {k} outside 1..={d}")));
    }
    let psi = digamma_integers(d, ctx);
    let bits = working_bits(ctx);
    let sum = (0..k).fold(Float::with_val(bits, 0), |acc, j| acc + &psi[d - j - 1]);
    Ok(sum / 2u32)
}

/// L(q) = log Γ(q/2 + d) − log Γ(d).
pub fn glq_isotropic(q: f64, d: usize, ctx: &PrecisionContext) -> Result<GlqPoint> {
    check_dim(d)?;
    if !(q >= 0.0 && q.is_finite()) {
        return Err(Error::domain(format!("q must be finite and nonnegative, got {q}")));
    }
    let arg = q / 2.0 + d as f64;
    if arg <= 0.0 {
        return Err(Error::domain(format!("q/2 + d must be positive, got {arg}")));
    }
    let l = log_gamma(arg, ctx)? - log_gamma(d as f64, ctx)?;
    Ok(GlqPoint { q, l })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EULER: f64 = 0.577_215_664_901_532_9;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn complex_d1_and_d2() {
        let s1 = isotropic_complex_spectrum(1, &ctx()).unwrap().to_f64();
        assert!((s1[0] + EULER / 2.0).abs() < 1e-15);
        let s2 = isotropic_complex_spectrum(2, &ctx()).unwrap().to_f64();
        assert!((s2[0] - 0.211_392_167_549_233_5).abs() < 1e-15);
        assert!((s2[1] + 0.288_607_832_450_766_5).abs() < 1e-15);
    }

    #[test]
    fn real_d1_and_d2() {
        let s1 = isotropic_real_spectrum(1, &ctx()).unwrap().to_f64();
        assert!((s1[0] - (-0.635_181_422_730_739)).abs() < 1e-12);
        let s2 = isotropic_real_spectrum(2, &ctx()).unwrap();
        let mu = s2.to_f64();
        let expected = 0.5 * std::f64::consts::LN_2 - EULER / 2.0;
        assert!((mu[0] - expected).abs() < 1e-15);
        assert!((s2.sum().to_f64() + EULER).abs() < 1e-15);
    }

    #[test]
    fn partial_sums() {
        let c = ctx();
        let p = partial_sum_isotropic(3, 1, &c).unwrap().to_f64();
        assert!((p - (1.5 - EULER) / 2.0).abs() < 1e-15);
        let p = partial_sum_isotropic(2, 2, &c).unwrap().to_f64();
        assert!((p - (-0.077_215_664_901_532_86)).abs() < 1e-15);
        let spec = isotropic_complex_spectrum(6, &c).unwrap();
        for k in 2..=6 {
            let diff = partial_sum_isotropic(6, k, &c).unwrap() - partial_sum_isotropic(6, k - 1, &c).unwrap();
            let err = Float::with_val(200, &diff - &spec.mu[k - 1]).abs();
            assert!(err < 1e-35);
        }
        assert!(partial_sum_isotropic(3, 0, &c).is_err());
        assert!(partial_sum_isotropic(3, 4, &c).is_err());
    }

    #[test]
    fn glq_isotropic_identities() {
        let c = ctx();
        assert!(glq_isotropic(0.0, 5, &c).unwrap().l.is_zero());
        let l = glq_isotropic(2.0, 2, &c).unwrap().l.to_f64();
        assert!((l - std::f64::consts::LN_2).abs() < 1e-15);
        // L(2) = log E|g|^2 = log d
        let l = glq_isotropic(2.0, 7, &c).unwrap().l.to_f64();
        assert!((l - 7f64.ln()).abs() < 1e-14);
        assert!(glq_isotropic(-1.0, 2, &c).is_err());
    }
}
