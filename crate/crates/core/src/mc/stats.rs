use serde::Serialize;

/// Streaming count / mean / sum of squared deviations.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Chan et al. pairwise combination; associative up to rounding, so
    /// callers merge in a fixed order.
    pub fn merge(&self, other: &RunningStats) -> RunningStats {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return *self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / count as f64;
        let m2 = self.m2 + other.m2 + delta * delta * (self.count as f64 * other.count as f64) / count as f64;
        RunningStats { count, mean, m2 }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.count > 1 {
            self.m2 / (self.count - 1) as f64
        } else {
            0.0
        }
    }

    pub fn std_dev(&self) -> f64 {
        self.variance().sqrt()
    }

    pub fn std_err(&self) -> f64 {
        if self.count > 0 {
            self.std_dev() / (self.count as f64).sqrt()
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorId {
    /// i.i.d. average of ½ log det(G_kᴴ Σ G_k).
    SingleStep,
    /// QR-renormalized product chain.
    ProductChain,
    /// Product of matrix exponentials of GUE increments.
    Diffusive,
    /// Plain sample moment (sampler checks).
    SampleMean,
}

/// Monte Carlo estimate with its standard error.
///
/// `stderr = sample_std / sqrt(samples)`, where a sample is one i.i.d.
/// draw (`batch_size = 1`) or one batch mean of `batch_size` chain steps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub batch_size: u64,
    pub estimator: EstimatorId,
    pub seed: u64,
    pub stream_id: u64,
}

impl McEstimate {
    pub fn z_score(&self, exact: f64) -> f64 {
        if self.stderr > 0.0 {
            (self.mean - exact) / self.stderr
        } else if self.mean == exact {
            0.0
        } else {
            f64::INFINITY.copysign(self.mean - exact)
        }
    }

    /// |mean − exact| ≤ max(n_sigma · stderr, floor).
    pub fn agrees_with(&self, exact: f64, n_sigma: f64, floor: f64) -> bool {
        (self.mean - exact).abs() <= (n_sigma * self.stderr).max(floor)
    }

    /// |a − b| ≤ n_sigma · sqrt(se_a² + se_b²).
    pub fn agrees_with_estimate(&self, other: &McEstimate, n_sigma: f64) -> bool {
        let combined = (self.stderr.powi(2) + other.stderr.powi(2)).sqrt();
        (self.mean - other.mean).abs() <= n_sigma * combined
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn matches_two_pass_formulas() {
        let xs = [1.0, 4.0, -2.0, 7.5, 3.25];
        let mut s = RunningStats::new();
        xs.iter().for_each(|x| s.push(*x));
        let mean = xs.iter().sum::<f64>() / 5.0;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 4.0;
        assert!((s.mean() - mean).abs() < 1e-14);
        assert!((s.variance() - var).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn merge_equals_sequential(xs in prop::collection::vec(-1e3f64..1e3, 2..200), cut in 0usize..200) {
            let cut = cut.min(xs.len());
            let mut all = RunningStats::new();
            xs.iter().for_each(|x| all.push(*x));
            let mut a = RunningStats::new();
            let mut b = RunningStats::new();
            xs[..cut].iter().for_each(|x| a.push(*x));
            xs[cut..].iter().for_each(|x| b.push(*x));
            let merged = a.merge(&b);
            prop_assert_eq!(merged.count(), all.count());
            prop_assert!((merged.mean() - all.mean()).abs() < 1e-9);
            prop_assert!((merged.variance() - all.variance()).abs() <= 1e-7 * all.variance().max(1.0));
        }
    }
}
