use rug::float::Constant;
use rug::Float;

use lyapunov::special::{digamma, euler_gamma, log_gamma};
use lyapunov::PrecisionContext;

fn ctx(digits: u32) -> PrecisionContext {
    PrecisionContext::new(digits, digits - 10, 10_000).unwrap()
}

/// log10 of the relative error, so tiny errors survive conversion to f64.
fn log_err(a: &Float, b: &Float) -> f64 {
    let p = a.prec().max(b.prec());
    let d = Float::with_val(p, a - b).abs();
    let s = Float::with_val(p, b.abs_ref()).max(&Float::with_val(p, 1));
    (d / s).log10().to_f64()
}

const ARGS: [f64; 12] = [0.5, 1.0, 1.5, 2.0, 3.25, 7.0, 10.5, 33.0, 100.0, 1e-3, 0.1, 2500.0];

#[test]
fn log_gamma_matches_mpfr() {
    for digits in [30u32, 100, 300] {
        let c = ctx(digits);
        let bits = c.bits() + 64;
        for x in ARGS {
            let ours = log_gamma(x, &c).unwrap();
            let mpfr = Float::with_val(bits, x).ln_gamma();
            let e = log_err(&ours, &mpfr);
            assert!(e < 2.0 - digits as f64, "lnΓ({x}) at {digits} digits: 1e{e}");
        }
    }
}

#[test]
fn digamma_matches_mpfr() {
    for digits in [30u32, 100, 300] {
        let c = ctx(digits);
        let bits = c.bits() + 64;
        for x in ARGS {
            let ours = digamma(x, &c).unwrap();
            let mpfr = Float::with_val(bits, x).digamma();
            let e = log_err(&ours, &mpfr);
            assert!(e < 2.0 - digits as f64, "Ψ({x}) at {digits} digits: 1e{e}");
        }
    }
}

#[test]
fn euler_constant_matches_mpfr() {
    let c = ctx(500);
    let mpfr = Float::with_val(c.bits() + 64, Constant::Euler);
    assert!(log_err(&euler_gamma(&c), &mpfr) < -495.0);
}

#[test]
fn half_integer_values() {
    // Γ(1/2) = √π and Ψ(1/2) = −γ − 2 log 2
    let c = ctx(80);
    let bits = c.bits() + 64;
    let pi = Float::with_val(bits, Constant::Pi);
    let half_ln_pi = pi.ln() / 2u32;
    assert!(log_err(&log_gamma(0.5, &c).unwrap(), &half_ln_pi) < -78.0);
    let expected = -Float::with_val(bits, Constant::Euler) - Float::with_val(bits, Constant::Log2) * 2u32;
    assert!(log_err(&digamma(0.5, &c).unwrap(), &expected) < -78.0);
}

#[test]
fn duplication_formula() {
    // log Γ(2x) = log Γ(x) + log Γ(x + ½) + (2x − 1) log 2 − ½ log π
    let c = ctx(60);
    let bits = c.bits() + 64;
    let ln2 = Float::with_val(bits, Constant::Log2);
    let half_ln_pi = Float::with_val(bits, Constant::Pi).ln() / 2u32;
    for x in [0.375, 1.0, 2.75, 12.0, 41.5] {
        let lhs = log_gamma(2.0 * x, &c).unwrap();
        let rhs = log_gamma(x, &c).unwrap() + log_gamma(x + 0.5, &c).unwrap()
            + Float::with_val(bits, &ln2 * (2.0 * x - 1.0))
            - &half_ln_pi;
        assert!(log_err(&lhs, &rhs) < -57.0, "x = {x}");
    }
}

#[test]
fn recurrences() {
    let c = ctx(50);
    for x in [0.25, 1.0, 6.5, 99.0] {
        // Γ(x + 1) = x Γ(x), Ψ(x + 1) = Ψ(x) + 1/x
        let l = log_gamma(x + 1.0, &c).unwrap() - log_gamma(x, &c).unwrap();
        assert!((l.to_f64() - x.ln()).abs() < 1e-14);
        let p = digamma(x + 1.0, &c).unwrap() - digamma(x, &c).unwrap();
        assert!((p.to_f64() - 1.0 / x).abs() < 1e-14);
    }
}

#[test]
fn doubling_digits_is_stable() {
    for x in [0.5, 3.0, 17.25] {
        let lo = log_gamma(x, &ctx(60)).unwrap();
        let hi = log_gamma(x, &ctx(120)).unwrap();
        assert!(log_err(&lo, &hi) < -58.0);
        let lo = digamma(x, &ctx(60)).unwrap();
        let hi = digamma(x, &ctx(120)).unwrap();
        assert!(log_err(&lo, &hi) < -58.0);
    }
}

#[test]
fn rejects_nonpositive_arguments() {
    let c = ctx(30);
    for x in [0.0, -1.0, f64::NAN, f64::INFINITY] {
        assert!(log_gamma(x, &c).is_err());
        assert!(digamma(x, &c).is_err());
    }
}
