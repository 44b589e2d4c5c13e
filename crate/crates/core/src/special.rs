//! Log-gamma, digamma and Euler's constant at arbitrary precision.
//!
//! Both functions shift the argument upward with the recurrence until the
//! Stirling-type asymptotic series converges below the working precision,
//! then sum that series with exact Bernoulli numbers.

use std::sync::Mutex;

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, GUARD_DIGITS};

/// Bernoulli numbers B_2, B_4, ... computed so far (index i holds B_{2(i+1)}).
static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

fn working_bits(ctx: &PrecisionContext) -> u32 {
    crate::precision::digits_to_bits(ctx.digits + GUARD_DIGITS)
}

/// log Γ(x) for x > 0.
pub fn log_gamma(x: f64, ctx: &PrecisionContext) -> Result<Float> {
    check_positive("log_gamma", x)?;
    let bits = working_bits(ctx);
    Ok(log_gamma_at(&Float::with_val(bits, x), bits))
}

/// Ψ(x) = d/dx log Γ(x) for x > 0.
pub fn digamma(x: f64, ctx: &PrecisionContext) -> Result<Float> {
    check_positive("digamma", x)?;
    let bits = working_bits(ctx);
    Ok(digamma_at(&Float::with_val(bits, x), bits))
}

/// Euler's constant γ = −Ψ(1).
pub fn euler_gamma(ctx: &PrecisionContext) -> Float {
    let bits = working_bits(ctx);
    -digamma_at(&Float::with_val(bits, 1), bits)
}

fn check_positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} requires a finite x > 0, got {x}")))
    }
}

/// Shift point beyond which the asymptotic series reaches 2^-bits.
/// The smallest term of the series is about e^(-2πx).
fn shift_threshold(bits: u32) -> u64 {
    let digits = bits as f64 / std::f64::consts::LOG2_10;
    (0.45 * digits).ceil() as u64 + 10
}

pub(crate) fn log_gamma_at(x: &Float, bits: u32) -> Float {
    let threshold = shift_threshold(bits);
    let mut z = Float::with_val(bits, x);
    let mut shift_product = Float::with_val(bits, 1);
    while z < threshold {
        shift_product *= &z;
        z += 1u32;
    }

    // (z - 1/2) ln z - z + ln(2π)/2
    let ln_z = Float::with_val(bits, z.ln_ref());
    let mut sum = Float::with_val(bits, &z - 0.5f64) * &ln_z;
    sum -= &z;
    let two_pi = Float::with_val(bits, rug::float::Constant::Pi) * 2u32;
    sum += two_pi.ln() / 2u32;

    let z_sq = Float::with_val(bits, z.square_ref());
    let mut z_pow = z.clone(); // z^(2k-1)
    let eps = Float::with_val(bits, Float::i_exp(1, -(bits as i32)));
    for k in 1.. {
        let b = bernoulli_2k(k, bits);
        let denom = (2 * k as u64) * (2 * k as u64 - 1);
        let term = b / &z_pow / denom;
        let small = Float::with_val(bits, term.abs_ref()) <= Float::with_val(bits, sum.abs_ref()) * &eps;
        sum += term;
        if small {
            break;
        }
        z_pow *= &z_sq;
    }
    sum - shift_product.ln()
}

pub(crate) fn digamma_at(x: &Float, bits: u32) -> Float {
    let threshold = shift_threshold(bits);
    let mut z = Float::with_val(bits, x);
    let mut shift_sum = Float::with_val(bits, 0);
    while z < threshold {
        shift_sum += Float::with_val(bits, z.recip_ref());
        z += 1u32;
    }

    // ln z - 1/(2z) - Σ B_2k / (2k z^2k)
    let mut sum = Float::with_val(bits, z.ln_ref());
    sum -= Float::with_val(bits, z.recip_ref()) / 2u32;

    let z_sq = Float::with_val(bits, z.square_ref());
    let mut z_pow = z_sq.clone();
    let eps = Float::with_val(bits, Float::i_exp(1, -(bits as i32)));
    for k in 1.. {
        let b = bernoulli_2k(k, bits);
        let term = b / &z_pow / (2 * k as u64);
        let small = Float::with_val(bits, term.abs_ref()) <= Float::with_val(bits, sum.abs_ref()) * &eps;
        sum -= term;
        if small {
            break;
        }
        z_pow *= &z_sq;
    }
    sum - shift_sum
}

/// B_{2k} rounded to `bits`.
fn bernoulli_2k(k: usize, bits: u32) -> Float {
    let mut table = BERNOULLI.lock().unwrap_or_else(|e| e.into_inner());
    if table.len() < k {
        *table = bernoulli_table((2 * k).max(64));
    }
    Float::with_val(bits, &table[k - 1])
}

/// B_2, B_4, ..., B_{2n} via tangent numbers (Brent–Harvey recurrence).
fn bernoulli_table(n: usize) -> Vec<Rational> {
    let mut t: Vec<Integer> = vec![Integer::new(); n + 1];
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = Integer::from(&t[k - 1] * (k as u64 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let updated = Integer::from(&t[j - 1] * (j as u64 - k as u64))
                + Integer::from(&t[j] * (j as u64 - k as u64 + 2));
            t[j] = updated;
        }
    }
    (1..=n)
        .map(|k| {
            // B_2k = (-1)^(k-1) 2k T_k / (2^2k (2^2k - 1))
            let four_k = Integer::from(1) << (2 * k as u32);
            let denom = &four_k * Integer::from(&four_k - 1u32);
            let numer = Integer::from(&t[k] * (2 * k as u64));
            let b = Rational::from((numer, denom));
            if k % 2 == 0 {
                -b
            } else {
                b
            }
        })
        .collect()
}
