use rug::Float;

use crate::spectrum::{DiffusionParams, LyapunovSpectrum, Provenance};

/// μ_k = σ₁² (d − 2k + 1); independent of σ₂.
pub fn diffusive_spectrum(p: &DiffusionParams) -> LyapunovSpectrum {
    let bits = 128;
    let s1_sq = Float::with_val(bits, p.sigma1).square();
    let d = p.d as i64;
    let mu = (1..=d)
        .map(|k| Float::with_val(bits, &s1_sq * (d - 2 * k + 1)))
        .collect();
    LyapunovSpectrum {
        mu,
        provenance: Provenance::Diffusive,
        digits_used: 38,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_spectra() {
        let s = diffusive_spectrum(&DiffusionParams::new(2, 1.0, 0.0).unwrap()).to_f64();
        assert_eq!(s, vec![1.0, -1.0]);
        let s = diffusive_spectrum(&DiffusionParams::new(3, 0.5, 2.0).unwrap()).to_f64();
        assert_eq!(s, vec![0.5, 0.0, -0.5]);
        let s = diffusive_spectrum(&DiffusionParams::new(4, 1.0, 0.0).unwrap()).to_f64();
        assert_eq!(s, vec![3.0, 1.0, -1.0, -3.0]);
        let s = diffusive_spectrum(&DiffusionParams::new(5, 0.0, 1.0).unwrap()).to_f64();
        assert!(s.iter().all(|m| *m == 0.0));
    }

    #[test]
    fn trace_free() {
        for d in 1..=50 {
            let s = diffusive_spectrum(&DiffusionParams::new(d, 0.37, 1.0).unwrap());
            assert!(s.sum().is_zero(), "d = {d}");
            assert!(s.is_nonincreasing());
        }
    }
}
