//! Large-d maximal exponent for covariance spectra sampled from a profile,
//! y_m = d · Y(m/d), m = 1 … d.

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::precision::{Escalated, PrecisionContext};
use crate::special::euler_gamma;
use crate::spectrum::CovarianceSpectrum;

use super::general::mu_max_closed_escalated;

/// Eigenvalue profile Y on (0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Profile {
    /// Y(x) = a + b·x
    Linear { a: f64, b: f64 },
}

impl Profile {
    pub fn linear(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::domain("linear profile coefficients must be finite"));
        }
        if a < 0.0 {
            return Err(Error::domain(format!(
                "linear profile needs Y(0) = a >= 0, got a = {a}"
            )));
        }
        Ok(Profile::Linear { a, b })
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Profile::Linear { a, b } => a + b * x,
        }
    }

    /// y_m = d · Y(m/d) rounded to f64.
    pub fn spectrum(&self, d: usize) -> Result<CovarianceSpectrum> {
        if d < 1 {
            return Err(Error::domain("profile dimension must be at least 1"));
        }
        let y = match *self {
            Profile::Linear { a, b } => (1..=d).map(|m| a * d as f64 + b * m as f64).collect(),
        };
        CovarianceSpectrum::new(y)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile::Linear { a, b } => write!(f, "linear:{a},{b}"),
        }
    }
}

impl FromStr for Profile {
    type Err = Error;

    /// `linear:a,b`
    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| Error::domain(format!("profile `{s}` is not of the form kind:args")))?;
        match kind {
            "linear" => {
                let parts: Vec<&str> = args.split(',').collect();
                if parts.len() != 2 {
                    return Err(Error::domain(format!("linear profile needs `a,b`, got `{args}`")));
                }
                let parse = |p: &str| {
                    p.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::domain(format!("bad profile coefficient `{p}`: {e}")))
                };
                Profile::linear(parse(parts[0])?, parse(parts[1])?)
            }
            other => Err(Error::domain(format!("unknown profile kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProfilePoint {
    pub d: usize,
    pub mu1: Float,
    pub digits_used: u32,
}

/// μ_1 for y_m = d·Y(m/d).
///
/// Linear profiles have equally spaced nodes, so the Lagrange weights reduce
/// to binomial-type factors and the sum is O(d) big-float operations.
pub fn profile_spectrum(d: usize, profile: &Profile, ctx: &PrecisionContext) -> Result<ProfilePoint> {
    let y = profile.spectrum(d)?;
    y.require_distinct(ctx.separation_tolerance())?;
    match *profile {
        Profile::Linear { a, b } => {
            let out = linear_profile_mu1(d, a, b, ctx)?;
            Ok(ProfilePoint {
                d,
                mu1: out.value,
                digits_used: out.digits_used,
            })
        }
    }
}

/// Same quantity through the general O(d²) Lagrange sum on the f64 spectrum.
pub fn profile_spectrum_general(d: usize, profile: &Profile, ctx: &PrecisionContext) -> Result<ProfilePoint> {
    let y = profile.spectrum(d)?;
    let out = mu_max_closed_escalated(&y, ctx)?;
    Ok(ProfilePoint {
        d,
        mu1: out.value,
        digits_used: out.digits_used,
    })
}

fn linear_profile_mu1(d: usize, a: f64, b: f64, ctx: &PrecisionContext) -> Result<Escalated<Float>> {
    let start = ctx.digits_for_cancellation(linear_cancellation_log10(d, a, b));
    let s = ctx.escalate_one(start, |bits| Ok(linear_weighted_log(d, a, b, bits)))?;
    let gamma = euler_gamma(ctx);
    let prec = s.value.prec();
    Ok(Escalated {
        value: -(Float::with_val(prec, &s.value + &gamma) / 2u32),
        digits_used: s.digits_used,
    })
}

/// Σ_j w_j log y_j with y_l = a·d + b·l and
/// w_j = Π_{l≠j} y_l / (y_l − y_j) = (−1)^(j−1) P / (y_j b^(d−1) (j−1)! (d−j)!),
/// P = Π_l y_l.
fn linear_weighted_log(d: usize, a: f64, b: f64, bits: u32) -> Float {
    let node = |l: usize| {
        let ad = Float::with_val(bits, a) * d as u64;
        ad + Float::with_val(bits, b) * l as u64
    };
    let mut product = Float::with_val(bits, 1);
    for l in 1..=d {
        product *= node(l);
    }
    // c_j = P / (b^(d−1) (j−1)! (d−j)!), starting from c_1 = P / (b^(d−1) (d−1)!).
    let mut c = product / Float::with_val(bits, b).pow((d - 1) as u32);
    for i in 1..d {
        c /= i as u64;
    }
    let mut sum = Float::with_val(bits, 0);
    for j in 1..=d {
        let y_j = node(j);
        let mut term = Float::with_val(bits, &c / &y_j) * y_j.ln();
        if j % 2 == 0 {
            term = -term;
        }
        sum += term;
        if j < d {
            c *= (d - j) as u64;
            c /= j as u64;
        }
    }
    sum
}

fn linear_cancellation_log10(d: usize, a: f64, b: f64) -> f64 {
    let mut log_fact = vec![0.0f64; d + 1];
    for n in 1..=d {
        log_fact[n] = log_fact[n - 1] + (n as f64).ln();
    }
    let node = |l: usize| a * d as f64 + b * l as f64;
    let log_p: f64 = (1..=d).map(|l| node(l).ln()).sum();
    let max_ln = (1..=d)
        .map(|j| {
            log_p - (d as f64 - 1.0) * b.ln() - log_fact[j - 1] - log_fact[d - j] - node(j).ln()
                + node(j).ln().abs().max(1.0).ln()
        })
        .fold(0.0, f64::max);
    max_ln / std::f64::consts::LN_10
}

/// μ_1 for each d in `ds`, plus a convergence summary.
#[derive(Debug, Clone)]
pub struct Sweep {
    pub points: Vec<ProfilePoint>,
}

impl Sweep {
    pub fn run(profile: &Profile, ds: &[usize], ctx: &PrecisionContext) -> Result<Self> {
        let points = ds
            .iter()
            .map(|&d| profile_spectrum(d, profile, ctx))
            .collect::<Result<Vec<_>>>()?;
        Ok(Sweep { points })
    }

    /// Successive differences μ_1(d_{i+1}) − μ_1(d_i).
    pub fn increments(&self) -> Vec<f64> {
        self.points
            .windows(2)
            .map(|w| w[1].mu1.to_f64() - w[0].mu1.to_f64())
            .collect()
    }

    /// True when the values move in one direction as d increases.
    pub fn is_monotone(&self) -> bool {
        let inc = self.increments();
        inc.iter().all(|v| *v <= 0.0) || inc.iter().all(|v| *v >= 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_linear_profiles() {
        assert_eq!(
            "linear:1,1".parse::<Profile>().unwrap(),
            Profile::Linear { a: 1.0, b: 1.0 }
        );
        assert!("linear:1".parse::<Profile>().is_err());
        assert!("cubic:1,2".parse::<Profile>().is_err());
        assert!("linear:-1,2".parse::<Profile>().is_err());
    }

    #[test]
    fn constant_profile_is_degenerate() {
        let p = Profile::linear(2.0, 0.0).unwrap();
        let err = profile_spectrum(4, &p, &PrecisionContext::default()).unwrap_err();
        assert!(matches!(err, Error::Degenerate { .. }));
    }

    #[test]
    fn zero_intercept_gives_integer_nodes() {
        let p = Profile::linear(0.0, 1.0).unwrap();
        assert_eq!(p.spectrum(4).unwrap().y(), &[1.0, 2.0, 3.0, 4.0]);
        let out = profile_spectrum(10, &p, &PrecisionContext::default()).unwrap();
        assert!(out.mu1.is_finite());
    }

    #[test]
    fn fast_path_matches_general_lagrange_sum() {
        let ctx = PrecisionContext::default();
        let p = Profile::linear(1.0, 1.0).unwrap();
        for d in [2, 7, 40] {
            let fast = profile_spectrum(d, &p, &ctx).unwrap();
            let general = profile_spectrum_general(d, &p, &ctx).unwrap();
            let err = Float::with_val(256, &fast.mu1 - &general.mu1).abs();
            assert!(err < 1e-28, "d = {d}: {err}");
        }
    }
}
