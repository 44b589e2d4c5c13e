//! Domain types shared by the exact formulas and the Monte Carlo oracles.

use std::fmt;

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Real or complex Gaussian entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Real => "real",
            Field::Complex => "complex",
        })
    }
}

/// Eigenvalues `y_j` of Σ⁻¹, where each factor of the product is Σ^{1/2} G.
///
/// The `f64` values are taken as exact binary numbers by the high-precision paths.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CovarianceSpectrum {
    y: Vec<f64>,
}

/// Closest pair of a spectrum by relative separation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosestPair {
    pub i: usize,
    pub j: usize,
    pub separation: f64,
}

impl CovarianceSpectrum {
    pub fn new(y: Vec<f64>) -> Result<Self> {
        if y.is_empty() {
            return Err(Error::domain("covariance spectrum needs at least one eigenvalue"));
        }
        if let Some((i, v)) = y.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::domain(format!(
                "covariance eigenvalues must be finite and positive, y[{i}] = {v}"
            )));
        }
        Ok(CovarianceSpectrum { y })
    }

    /// Spectrum from eigenvalues of Σ itself (inverted).
    pub fn from_sigma_eigenvalues(sigma: &[f64]) -> Result<Self> {
        Self::new(sigma.iter().map(|s| 1.0 / s).collect())
    }

    pub fn isotropic(d: usize, y: f64) -> Result<Self> {
        Self::new(vec![y; d])
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn dim(&self) -> usize {
        self.y.len()
    }

    /// Eigenvalues of Σ.
    pub fn sigma_eigenvalues(&self) -> Vec<f64> {
        self.y.iter().map(|y| 1.0 / y).collect()
    }

    /// `c · y`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.y.iter().map(|y| c * y).collect())
    }

    pub fn all_equal(&self) -> bool {
        self.y.iter().all(|v| *v == self.y[0])
    }

    /// Pair minimizing |y_i − y_j| / max(y_i, y_j); `None` when d = 1.
    pub fn closest_pair(&self) -> Option<ClosestPair> {
        let mut order: Vec<usize> = (0..self.y.len()).collect();
        order.sort_by(|a, b| self.y[*a].total_cmp(&self.y[*b]));
        order
            .windows(2)
            .map(|w| {
                let (a, b) = (self.y[w[0]], self.y[w[1]]);
                ClosestPair {
                    i: w[0].min(w[1]),
                    j: w[0].max(w[1]),
                    separation: (b - a) / b,
                }
            })
            .min_by(|p, q| p.separation.total_cmp(&q.separation))
    }

    pub fn is_pairwise_distinct(&self, tolerance: f64) -> bool {
        self.closest_pair().is_none_or(|p| p.separation > tolerance)
    }

    /// Ok when every pair is separated by more than `tolerance`.
    pub fn require_distinct(&self, tolerance: f64) -> Result<()> {
        match self.closest_pair() {
            Some(p) if p.separation <= tolerance => Err(Error::Degenerate {
                i: p.i,
                j: p.j,
                yi: self.y[p.i],
                yj: self.y[p.j],
                separation: p.separation,
                tolerance,
            }),
            _ => Ok(()),
        }
    }
}

/// Which closed form or estimator produced a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// μ_k = ½ Ψ(d − k + 1), complex Ginibre with Σ = I.
    IsotropicComplex,
    /// μ_i = ½ (log 2 + Ψ((d − i + 1)/2)), real Ginibre with Σ = I.
    IsotropicReal,
    /// Determinant-ratio formula for general Σ.
    GeneralComplex,
    /// Isotropic formula shifted by −½ log y for y = c·(1, …, 1).
    ScaledIsotropicComplex,
    /// μ_k = σ₁² (d − 2k + 1).
    Diffusive,
}

/// Exponents μ_1 ≥ … ≥ μ_d.
#[derive(Debug, Clone)]
pub struct LyapunovSpectrum {
    pub mu: Vec<Float>,
    pub provenance: Provenance,
    /// Decimal digits at which the values were accepted.
    pub digits_used: u32,
}

impl LyapunovSpectrum {
    pub fn dim(&self) -> usize {
        self.mu.len()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.mu.iter().map(Float::to_f64).collect()
    }

    pub fn sum(&self) -> Float {
        let prec = self.mu.first().map_or(64, Float::prec);
        self.mu.iter().fold(Float::with_val(prec, 0), |acc, m| acc + m)
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.mu.windows(2).all(|w| w[0] >= w[1])
    }
}

/// One point of the generalized maximum exponent L(q).
#[derive(Debug, Clone)]
pub struct GlqPoint {
    pub q: f64,
    pub l: Float,
}

/// Widths of the Hermitian and anti-Hermitian parts of the diffusive increment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiffusionParams {
    pub d: usize,
    pub sigma1: f64,
    pub sigma2: f64,
}

impl DiffusionParams {
    pub fn new(d: usize, sigma1: f64, sigma2: f64) -> Result<Self> {
        if d < 1 {
            return Err(Error::domain("diffusion dimension must be at least 1"));
        }
        if !(sigma1 >= 0.0 && sigma2 >= 0.0 && sigma1.is_finite() && sigma2.is_finite()) {
            return Err(Error::domain(format!(
                "diffusion widths must be finite and nonnegative, got σ1 = {sigma1}, σ2 = {sigma2}"
            )));
        }
        Ok(DiffusionParams { d, sigma1, sigma2 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonpositive_eigenvalues() {
        assert!(CovarianceSpectrum::new(vec![]).is_err());
        assert!(CovarianceSpectrum::new(vec![1.0, 0.0]).is_err());
        assert!(CovarianceSpectrum::new(vec![1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn degeneracy_names_the_offending_pair() {
        let y = CovarianceSpectrum::new(vec![3.0, 1.0, 1.0 + 1e-12, 0.5]).unwrap();
        match y.require_distinct(1e-8).unwrap_err() {
            Error::Degenerate { i, j, .. } => assert_eq!((i, j), (1, 2)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(!y.is_pairwise_distinct(1e-8));
        assert!(y.is_pairwise_distinct(1e-13));
    }

    #[test]
    fn sigma_eigenvalue_input_is_inverted() {
        let y = CovarianceSpectrum::from_sigma_eigenvalues(&[1.0, 4.0]).unwrap();
        assert_eq!(y.y(), &[1.0, 0.25]);
    }
}
