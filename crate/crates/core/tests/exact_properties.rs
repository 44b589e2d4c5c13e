use proptest::prelude::*;
use rug::Float;

use lyapunov::exact::{
    complex_exponent, complex_spectrum, diffusive_spectrum, glq_general, glq_isotropic,
    isotropic_complex_spectrum, isotropic_real_spectrum, mu_max_closed, mu_min_closed,
    partial_sum_isotropic, partition_of_unity_residual, real_mu1_d2, sum_rule_complex, sum_rule_real,
    Profile,
};
use lyapunov::special::digamma;
use lyapunov::{CovarianceSpectrum, DiffusionParams, Error, PrecisionContext};

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn diff(a: &Float, b: &Float) -> f64 {
    Float::with_val(a.prec().max(b.prec()), a - b).abs().to_f64()
}

/// Distinct spectra with y in [1e-2, 1e2], d in 1..=8.
fn spectra() -> impl Strategy<Value = CovarianceSpectrum> {
    (1usize..=8)
        .prop_flat_map(|d| prop::collection::vec(-2.0f64..2.0, d))
        .prop_map(|e| CovarianceSpectrum::new(e.iter().map(|x| 10f64.powf(*x)).collect()).unwrap())
        .prop_filter("pairwise distinct", |s| s.is_pairwise_distinct(ctx().separation_tolerance()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sum_rule_closes(s in spectra()) {
        let c = ctx();
        let total = complex_spectrum(&s, &c).unwrap().sum();
        prop_assert!(diff(&total, &sum_rule_complex(&s, &c)) < 1e-25);
    }

    #[test]
    fn edges_match_closed_forms(s in spectra()) {
        let c = ctx();
        let d = s.dim();
        prop_assert!(diff(&complex_exponent(1, &s, &c).unwrap(), &mu_max_closed(&s, &c).unwrap()) < 1e-25);
        prop_assert!(diff(&complex_exponent(d, &s, &c).unwrap(), &mu_min_closed(&s, &c).unwrap()) < 1e-25);
        prop_assert!(partition_of_unity_residual(&s, &c).unwrap().to_f64().abs() < 1e-25);
    }

    #[test]
    fn spectrum_is_ordered(s in spectra()) {
        prop_assert!(complex_spectrum(&s, &ctx()).unwrap().is_nonincreasing());
    }

    #[test]
    fn scaling_shifts_every_exponent(s in spectra(), p in -3i32..=3) {
        // y → c·y shifts each exponent by −½ log c
        let c = ctx();
        let scale = 2f64.powi(p);
        let base = complex_spectrum(&s, &c).unwrap().to_f64();
        let scaled = complex_spectrum(&s.scaled(scale).unwrap(), &c).unwrap().to_f64();
        for (a, b) in base.iter().zip(&scaled) {
            prop_assert!((a - 0.5 * scale.ln() - b).abs() < 1e-12);
        }
    }

    #[test]
    fn order_of_eigenvalues_is_irrelevant(s in spectra()) {
        let c = ctx();
        let mut rev = s.y().to_vec();
        rev.reverse();
        let a = complex_spectrum(&s, &c).unwrap();
        let b = complex_spectrum(&CovarianceSpectrum::new(rev).unwrap(), &c).unwrap();
        for (x, y) in a.mu.iter().zip(&b.mu) {
            prop_assert!(diff(x, y) < 1e-25);
        }
    }

    #[test]
    fn glq_trace_identity(s in spectra()) {
        // L(2) = log Tr Σ, L(0) = 0
        let c = ctx();
        let trace: f64 = s.y().iter().map(|v| 1.0 / v).sum();
        prop_assert!((glq_general(2.0, &s, &c).unwrap().l.to_f64() - trace.ln()).abs() < 1e-12);
        prop_assert_eq!(glq_general(0.0, &s, &c).unwrap().l.to_f64(), 0.0);
    }

    #[test]
    fn glq_is_convex(s in spectra(), q in 0.1f64..6.0) {
        let c = ctx();
        let l = |q: f64| glq_general(q, &s, &c).unwrap().l.to_f64();
        prop_assert!(l(q) + l(q + 1.0) - 2.0 * l(q + 0.5) >= -1e-12);
    }

    #[test]
    fn glq_slope_at_zero_is_mu1(s in spectra()) {
        let c = ctx();
        let (h1, h2) = (1e-4, 1e-6);
        let f1 = glq_general(h1, &s, &c).unwrap().l.to_f64() / h1;
        let f2 = glq_general(h2, &s, &c).unwrap().l.to_f64() / h2;
        let slope = (h1 * f2 - h2 * f1) / (h1 - h2);
        let mu1 = complex_exponent(1, &s, &c).unwrap().to_f64();
        prop_assert!((slope - mu1).abs() < 1e-6 * mu1.abs().max(1.0));
    }

    #[test]
    fn diffusive_spectrum_is_traceless_and_linear(d in 1usize..=60, s1 in 0.0f64..3.0, s2 in 0.0f64..3.0) {
        let spec = diffusive_spectrum(&DiffusionParams::new(d, s1, s2).unwrap()).to_f64();
        prop_assert!(spec.iter().sum::<f64>().abs() < 1e-9);
        for (k, mu) in spec.iter().enumerate() {
            prop_assert!((mu - s1 * s1 * (d as f64 - 2.0 * k as f64 - 1.0)).abs() < 1e-12);
        }
    }
}

#[test]
fn isotropic_partial_sums_and_values() {
    let c = ctx();
    for d in 1..=12 {
        let spec = isotropic_complex_spectrum(d, &c).unwrap();
        for k in 1..=d {
            let psi = digamma((d - k + 1) as f64, &c).unwrap().to_f64();
            assert!((spec.mu[k - 1].to_f64() - psi / 2.0).abs() < 1e-15);
            let partial: f64 = spec.mu[..k].iter().map(Float::to_f64).sum();
            assert!((partial_sum_isotropic(d, k, &c).unwrap().to_f64() - partial).abs() < 1e-13);
        }
        let ones = CovarianceSpectrum::isotropic(d, 1.0).unwrap();
        assert!(diff(&spec.sum(), &sum_rule_complex(&ones, &c)) < 1e-30);
        let real = isotropic_real_spectrum(d, &c).unwrap();
        assert!(diff(&real.sum(), &sum_rule_real(&ones, &c).unwrap()) < 1e-30);
        assert!(real.is_nonincreasing());
    }
}

#[test]
fn real_d2_matches_isotropic_real() {
    let c = ctx();
    let ones = CovarianceSpectrum::isotropic(2, 1.0).unwrap();
    let real = isotropic_real_spectrum(2, &c).unwrap();
    assert!(diff(&real_mu1_d2(&ones, &c).unwrap(), &real.mu[0]) < 1e-30);
}

#[test]
fn glq_isotropic_half_integer() {
    // Γ(7/2)/Γ(3) = (15/16)√π
    let l = glq_isotropic(1.0, 3, &ctx()).unwrap().l.to_f64();
    let expected = (15.0 / 16.0 * std::f64::consts::PI.sqrt()).ln();
    assert!((l - expected).abs() < 1e-14);
}

#[test]
fn near_isotropic_is_continuous() {
    let c = ctx();
    let d = 4;
    let iso = isotropic_complex_spectrum(d, &c).unwrap().to_f64();
    for eps in [1e-4, 1e-7] {
        let s = CovarianceSpectrum::new((0..d).map(|j| 1.0 + eps * j as f64).collect()).unwrap();
        let spec = complex_spectrum(&s, &c).unwrap().to_f64();
        for (a, b) in spec.iter().zip(&iso) {
            assert!((a - b).abs() < 10.0 * eps, "ε = {eps}: {a} vs {b}");
        }
        let l = glq_general(3.0, &s, &c).unwrap().l.to_f64();
        let li = glq_isotropic(3.0, d, &c).unwrap().l.to_f64();
        assert!((l - li).abs() < 10.0 * eps);
    }
}

#[test]
fn exactly_equal_eigenvalues_use_isotropic_form() {
    let c = ctx();
    let s = CovarianceSpectrum::isotropic(3, 4.0).unwrap();
    let mu = complex_spectrum(&s, &c).unwrap().to_f64();
    let iso = isotropic_complex_spectrum(3, &c).unwrap().to_f64();
    for (a, b) in mu.iter().zip(&iso) {
        assert!((a - (b - 0.5 * 4f64.ln())).abs() < 1e-15);
    }
}

#[test]
fn partially_degenerate_spectrum_is_rejected() {
    let s = CovarianceSpectrum::new(vec![1.0, 1.0, 2.0]).unwrap();
    assert!(matches!(complex_spectrum(&s, &ctx()), Err(Error::Degenerate { .. })));
}

#[test]
fn clustered_spectrum_escalates_and_stabilizes() {
    let c = ctx();
    let s = CovarianceSpectrum::new((0..200).map(|j| 1.0 + 1e-3 * j as f64).collect()).unwrap();
    let lo = mu_max_closed(&s, &c).unwrap();
    let hi = mu_max_closed(&s, &c.with_digits(2 * c.digits).unwrap()).unwrap();
    assert!(diff(&lo, &hi) < 10f64.powi(-(c.target_digits as i32)));
}

#[test]
fn precision_cap_is_reported() {
    let c = PrecisionContext::new(20, 15, 60).unwrap();
    let s = Profile::linear(1.0, 1.0).unwrap().spectrum(300).unwrap();
    assert!(matches!(mu_max_closed(&s, &c), Err(Error::PrecisionExhausted { .. })));
}

#[test]
fn profile_parses() {
    let p: Profile = "linear:1,1".parse().unwrap();
    assert_eq!(p, Profile::linear(1.0, 1.0).unwrap());
    assert_eq!(p.to_string(), "linear:1,1");
    assert!("linear:-1,1".parse::<Profile>().is_err());
    assert!("cubic:1".parse::<Profile>().is_err());
}
