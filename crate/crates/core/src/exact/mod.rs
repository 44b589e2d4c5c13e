//! Closed-form Lyapunov spectra, sum rules and generalized exponents.

pub mod bigmat;
mod diffusive;
mod general;
mod glq;
mod isotropic;
mod profile;
mod sum_rules;

use rug::Float;

use crate::error::{Error, Result};
use crate::precision::{digits_to_bits, PrecisionContext, GUARD_DIGITS};

pub use diffusive::diffusive_spectrum;
pub use general::{
    complex_exponent, complex_spectrum, determinant_ratios, mu_max_closed, mu_min_closed,
    partition_of_unity_residual,
};
pub use glq::glq_general;
pub use isotropic::{glq_isotropic, isotropic_complex_spectrum, isotropic_real_spectrum, partial_sum_isotropic};
pub use profile::{profile_spectrum, profile_spectrum_general, Profile, ProfilePoint, Sweep};
pub use sum_rules::{real_mu1_d2, sum_rule_complex, sum_rule_real};

pub(crate) fn working_bits(ctx: &PrecisionContext) -> u32 {
    digits_to_bits(ctx.digits + GUARD_DIGITS)
}

pub(crate) fn check_index(k: usize, d: usize) -> Result<()> {
    if k < 1 || k > d {
        Err(Error::domain(format!("exponent index k = {k} outside 1..={d}")))
    } else {
        Ok(())
    }
}

/// log y for a positive f64 taken as exact, rounded to `bits`.
pub(crate) fn ln_exact(y: f64, bits: u32) -> Float {
    Float::with_val(bits, y).ln()
}

/// a − b with no rounding: the precision is widened to cover the exponent gap.
pub(crate) fn sub_exact(a: f64, b: f64) -> Float {
    let exp = |v: f64| if v == 0.0 { 0 } else { v.abs().log2().floor() as i64 };
    let gap = (exp(a) - exp(b)).unsigned_abs() as u32;
    let prec = 64 + gap + 2;
    Float::with_val(prec, a) - b
}
