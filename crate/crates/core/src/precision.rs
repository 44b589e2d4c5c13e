//! Working precision for the exact formulas.
//!
//! Every closed form takes a [`PrecisionContext`]. Determinant ratios and
//! Lagrange-weight sums cancel catastrophically when the covariance spectrum
//! is clustered or large, so those paths go through [`PrecisionContext::escalate`],
//! which evaluates at `p` and `2p` decimal digits and accepts only when the two
//! agree to `target_digits`.

use rug::ops::PowAssign;
use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};

/// Extra decimal digits carried beyond what a computation is asked to deliver.
pub const GUARD_DIGITS: u32 = 10;

const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrecisionContext {
    /// Decimal working precision.
    pub digits: u32,
    /// Requested number of accurate decimal digits.
    pub target_digits: u32,
    /// Escalation cap in decimal digits.
    pub max_digits: u32,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            digits: 40,
            target_digits: 30,
            max_digits: 10_000,
        }
    }
}

/// A value together with the precision at which it was accepted.
#[derive(Debug, Clone)]
pub struct Escalated<T> {
    pub value: T,
    pub digits_used: u32,
}

impl PrecisionContext {
    pub fn new(digits: u32, target_digits: u32, max_digits: u32) -> Result<Self> {
        if target_digits < 15 {
            return Err(Error::config(format!(
                "target_digits must be at least 15, got {target_digits}"
            )));
        }
        if digits < target_digits {
            return Err(Error::config(format!(
                "digits ({digits}) must be at least target_digits ({target_digits})"
            )));
        }
        if max_digits < digits {
            return Err(Error::config(format!(
                "max_digits ({max_digits}) must be at least digits ({digits})"
            )));
        }
        Ok(PrecisionContext {
            digits,
            target_digits,
            max_digits,
        })
    }

    /// Context with the given target, working precision `target + GUARD_DIGITS`
    /// and the default cap (raised if needed).
    pub fn with_target(target_digits: u32) -> Result<Self> {
        let digits = target_digits + GUARD_DIGITS;
        Self::new(digits, target_digits, digits.max(10_000))
    }

    pub fn with_digits(self, digits: u32) -> Result<Self> {
        Self::new(digits, self.target_digits, self.max_digits.max(digits))
    }

    pub fn bits(&self) -> u32 {
        digits_to_bits(self.digits)
    }

    /// Relative separation below which two covariance eigenvalues are
    /// treated as coincident: 1e-8 at 40 digits, tightening with precision.
    pub fn separation_tolerance(&self) -> f64 {
        10f64.powf(-(self.digits as f64) / 5.0)
    }

    /// Absolute/relative acceptance threshold `10^(-target_digits)`.
    pub fn tolerance(&self) -> Float {
        let mut t = Float::with_val(self.bits(), 10);
        t.pow_assign(-(self.target_digits as i32));
        t
    }

    /// Digits needed to survive cancellation of roughly `10^log10_cancellation`.
    pub fn digits_for_cancellation(&self, log10_cancellation: f64) -> u32 {
        let extra = if log10_cancellation.is_finite() && log10_cancellation > 0.0 {
            log10_cancellation.ceil() as u32
        } else {
            0
        };
        (self.target_digits + GUARD_DIGITS + extra).max(self.digits)
    }

    /// Evaluate at increasing precision until two successive evaluations agree.
    ///
    /// `eval` receives a binary precision in bits. Starts at
    /// `max(start_digits, self.digits)` and doubles; the last step is clamped to
    /// `max_digits`. Agreement means every component differs by less than
    /// `10^(-target_digits) * max(|hi|, 1)`.
    pub fn escalate<F>(&self, start_digits: u32, mut eval: F) -> Result<Escalated<Vec<Float>>>
    where
        F: FnMut(u32) -> Result<Vec<Float>>,
    {
        let mut p = start_digits.max(self.digits);
        if p > self.max_digits {
            return Err(Error::PrecisionExhausted {
                last_digits: self.digits,
                next_digits: p,
                max_digits: self.max_digits,
            });
        }
        let mut lo = eval(digits_to_bits(p))?;
        loop {
            let next = (2 * p).min(self.max_digits);
            if next <= p {
                return Err(Error::PrecisionExhausted {
                    last_digits: p,
                    next_digits: 2 * p,
                    max_digits: self.max_digits,
                });
            }
            let hi = eval(digits_to_bits(next))?;
            if self.agree(&lo, &hi) {
                return Ok(Escalated {
                    value: hi,
                    digits_used: next,
                });
            }
            lo = hi;
            p = next;
        }
    }

    /// Single-value form of [`escalate`](Self::escalate).
    pub fn escalate_one<F>(&self, start_digits: u32, mut eval: F) -> Result<Escalated<Float>>
    where
        F: FnMut(u32) -> Result<Float>,
    {
        let out = self.escalate(start_digits, |bits| eval(bits).map(|v| vec![v]))?;
        Ok(Escalated {
            value: out.value.into_iter().next().expect("one value"),
            digits_used: out.digits_used,
        })
    }

    fn agree(&self, lo: &[Float], hi: &[Float]) -> bool {
        let tol = self.tolerance();
        lo.len() == hi.len()
            && lo.iter().zip(hi).all(|(a, b)| {
                if !a.is_finite() || !b.is_finite() {
                    return false;
                }
                let prec = b.prec();
                let diff = Float::with_val(prec, a - b).abs();
                let scale = Float::with_val(prec, b.abs_ref()).max(&Float::with_val(prec, 1));
                diff <= Float::with_val(prec, &tol * &scale)
            })
    }
}

pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * BITS_PER_DIGIT).ceil() as u32 + 8
}

/// Decimal rendering with `digits` significant digits. Positional for
/// magnitudes in [1e-5, 1e21), scientific otherwise.
pub fn to_decimal(x: &Float, digits: u32) -> String {
    let (neg, mantissa, exp) = x.to_sign_string_exp(10, Some(digits.max(1) as usize));
    let Some(exp) = exp else {
        // zero, infinity or NaN
        return if neg { format!("-{mantissa}") } else { mantissa };
    };
    // value = 0.mantissa × 10^exp
    let mantissa = mantissa.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    let body = if (-4..=21).contains(&exp) {
        if exp <= 0 {
            format!("0.{}{mantissa}", "0".repeat(exp.unsigned_abs() as usize))
        } else {
            let e = exp as usize;
            if mantissa.len() <= e {
                format!("{mantissa}{}", "0".repeat(e - mantissa.len()))
            } else {
                format!("{}.{}", &mantissa[..e], &mantissa[e..])
            }
        }
    } else {
        let (head, tail) = mantissa.split_at(1);
        let dot = if tail.is_empty() { "" } else { "." };
        format!("{head}{dot}{tail}e{}", exp - 1)
    };
    format!("{sign}{body}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rendering() {
        let f = |v: f64| to_decimal(&Float::with_val(200, v), 10);
        assert_eq!(f(0.0), "0");
        assert_eq!(f(-0.25), "-0.25");
        assert_eq!(f(3.0), "3");
        assert_eq!(f(1234.5), "1234.5");
        assert_eq!(f(1e-3), "0.001");
        assert_eq!(f(-1.5e-30), "-1.5e-30");
        assert_eq!(f(2.0f64.powi(80)), "1.20892582e24");
        let third = Float::with_val(200, 1) / 3u32;
        assert_eq!(to_decimal(&third, 5), "0.33333");
        assert_eq!(to_decimal(&Float::with_val(64, f64::NAN), 5), "NaN");
    }

    #[test]
    fn rejects_inconsistent_contexts() {
        assert!(PrecisionContext::new(40, 14, 100).is_err());
        assert!(PrecisionContext::new(20, 30, 100).is_err());
        assert!(PrecisionContext::new(40, 30, 39).is_err());
        assert!(PrecisionContext::new(40, 30, 40).is_ok());
    }

    #[test]
    fn default_separation_tolerance_is_1e_minus_8() {
        let ctx = PrecisionContext::default();
        assert!((ctx.separation_tolerance() - 1e-8).abs() < 1e-20);
    }

    #[test]
    fn escalation_stops_when_values_stabilize() {
        let ctx = PrecisionContext::default();
        // Loses 60 digits to cancellation: (1 + 1e-60 * 3) - 1 == 3e-60, scaled back up.
        let out = ctx
            .escalate_one(ctx.digits, |bits| {
                let tiny = Float::with_val(bits, 1e-60);
                let a = Float::with_val(bits, 1) + Float::with_val(bits, &tiny * 3u32);
                let diff = Float::with_val(bits, a - 1u32);
                Ok(diff / tiny)
            })
            .unwrap();
        assert!(out.digits_used >= 80);
        assert!((out.value.to_f64() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn escalation_fails_loudly_at_cap() {
        let ctx = PrecisionContext::new(40, 30, 100).unwrap();
        let err = ctx
            .escalate_one(40, |bits| Ok(Float::with_val(bits, bits)))
            .unwrap_err();
        assert!(matches!(err, Error::PrecisionExhausted { max_digits: 100, .. }));
    }
}
