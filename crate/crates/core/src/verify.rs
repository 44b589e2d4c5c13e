//! The invariant suite run by `lyapunov verify`.
//!
//! Every check is deterministic given the seed: spectra are drawn from a
//! dedicated stream and each Monte Carlo check owns a fixed stream id.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;
use serde_json::json;

use crate::error::Result;
use crate::exact::{
    complex_spectrum, diffusive_spectrum, glq_general, glq_isotropic, isotropic_real_spectrum, mu_max_closed,
    mu_min_closed, partition_of_unity_residual, real_mu1_d2, sum_rule_complex, sum_rule_real, Profile, Sweep,
};
use crate::mc::{
    diffusive_estimate, product_estimate, single_step_estimate, single_step_estimate_with, ChainConfig, McEstimate,
    RngStream, SigmaFactor,
};
use crate::precision::PrecisionContext;
use crate::report::{sig15, Cell, Check, RunReport, Table};
use crate::special::euler_gamma;
use crate::spectrum::{CovarianceSpectrum, DiffusionParams, Field, LyapunovSpectrum};

/// Deliberate defects used to confirm that the suite can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Drop the ½ in front of the complex exponents.
    DropHalf,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub quick: bool,
    pub seed: u64,
    pub ctx: PrecisionContext,
    pub mutation: Option<Mutation>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            quick: false,
            seed: 1,
            ctx: PrecisionContext::default(),
            mutation: None,
        }
    }
}

/// Sizes that differ between the quick and the full suite.
struct Budget {
    random_spectra: usize,
    mc_samples: u64,
    clustered_d: usize,
    diffusive_m: u64,
    diffusive_t: u64,
    profile_ds: &'static [usize],
}

impl Budget {
    fn of(quick: bool) -> Self {
        if quick {
            Budget {
                random_spectra: 25,
                mc_samples: 40_000,
                clustered_d: 200,
                diffusive_m: 100,
                diffusive_t: 400,
                profile_ds: &[50, 100, 200],
            }
        } else {
            Budget {
                random_spectra: 100,
                mc_samples: 100_000,
                clustered_d: 200,
                diffusive_m: 1000,
                diffusive_t: 1000,
                profile_ds: &[200, 500, 1000],
            }
        }
    }
}

// Stream ids; fixed so a given seed always feeds the same check.
const STREAM_SPECTRA: u64 = 0;
const STREAM_CONVENTION: u64 = 1;
const STREAM_AGREEMENT: u64 = 100;
const STREAM_REAL: u64 = 200;
const STREAM_UNITARY: u64 = 300;
const STREAM_CLT: u64 = 400;
const STREAM_DIFFUSIVE: u64 = 500;

const N_SIGMA: f64 = 3.0;

pub fn run_suite(opts: &VerifyOptions) -> Result<RunReport> {
    let budget = Budget::of(opts.quick);
    let mut s = Suite {
        opts,
        report: RunReport::new("verify"),
    };
    s.report
        .input("quick", opts.quick)
        .input("seed", opts.seed)
        .input("precision", serde_json::to_value(opts.ctx).expect("serializes"))
        .input("mutation", opts.mutation.map(|m| format!("{m:?}")));

    s.exact_closed_forms(&budget)?;
    s.generalized_exponent()?;
    s.real_field_identities()?;
    s.precision_escalation(&budget)?;
    s.monte_carlo(&budget)?;
    s.diffusive(&budget)?;
    s.profile_trend(&budget)?;

    let mut table = Table::new(&["check", "value", "tolerance", "passed"]);
    for c in &s.report.checks {
        table.push(vec![
            Cell::Text(c.name.clone()),
            Cell::Num(c.value),
            Cell::Num(c.tolerance),
            Cell::Text(c.passed.to_string()),
        ]);
    }
    let n = s.report.checks.len();
    let failed = s.report.failed().len();
    s.report.table = table;
    s.report.output("checks_run", n).output("checks_failed", failed);
    Ok(s.report)
}

struct Suite<'a> {
    opts: &'a VerifyOptions,
    report: RunReport,
}

impl Suite<'_> {
    fn ctx(&self) -> &PrecisionContext {
        &self.opts.ctx
    }

    fn exact_tol(&self) -> f64 {
        10f64.powi(-(self.ctx().target_digits as i32) + 2)
    }

    fn stream(&self, id: u64) -> RngStream {
        RngStream::new(self.opts.seed, id)
    }

    fn spectrum(&self, y: &CovarianceSpectrum) -> Result<LyapunovSpectrum> {
        let mut s = complex_spectrum(y, self.ctx())?;
        if self.opts.mutation == Some(Mutation::DropHalf) {
            s.mu.iter_mut().for_each(|m| *m *= 2u32);
        }
        Ok(s)
    }

    fn partial_sum(&self, y: &CovarianceSpectrum, k: usize) -> Result<f64> {
        Ok(self.spectrum(y)?.mu[..k].iter().map(Float::to_f64).sum())
    }

    fn random_spectra(&self, n: usize) -> Vec<CovarianceSpectrum> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed ^ STREAM_SPECTRA);
        let tol = self.ctx().separation_tolerance();
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let d = rng.random_range(2..=10);
            let y: Vec<f64> = (0..d).map(|_| 10f64.powf(rng.random_range(-2.0..2.0))).collect();
            let y = CovarianceSpectrum::new(y).expect("positive draws");
            if y.is_pairwise_distinct(tol) {
                out.push(y);
            }
        }
        out
    }

    fn exact_closed_forms(&mut self, b: &Budget) -> Result<()> {
        let tol = self.exact_tol();
        let mut closure: f64 = 0.0;
        let mut edge_max: f64 = 0.0;
        let mut edge_min: f64 = 0.0;
        let mut unity: f64 = 0.0;
        let mut disorder = 0usize;
        let mut scaling: f64 = 0.0;
        let draws = self.random_spectra(b.random_spectra);
        for y in &draws {
            let spec = self.spectrum(y)?;
            let d = spec.dim();
            closure = closure.max(abs_diff(&spec.sum(), &sum_rule_complex(y, self.ctx())));
            edge_max = edge_max.max(abs_diff(&spec.mu[0], &mu_max_closed(y, self.ctx())?));
            edge_min = edge_min.max(abs_diff(&spec.mu[d - 1], &mu_min_closed(y, self.ctx())?));
            unity = unity.max(partition_of_unity_residual(y, self.ctx())?.to_f64().abs());
            if !spec.is_nonincreasing() {
                disorder += 1;
            }
        }
        for (i, y) in draws.iter().take(10).enumerate() {
            // powers of two keep c·y exact in f64
            let c = [0.25, 2.0, 8.0, 0.5, 4.0][i % 5];
            let base = self.spectrum(y)?;
            let moved = self.spectrum(&y.scaled(c)?)?;
            let shift = Float::with_val(base.mu[0].prec(), c).ln() / 2u32;
            for (a, m) in base.mu.iter().zip(&moved.mu) {
                let lhs = Float::with_val(a.prec(), m - a) + &shift;
                scaling = scaling.max(lhs.to_f64().abs());
            }
        }
        let n = draws.len();
        self.report
            .check(Check::at_most(
                "sum_rule_closure",
                closure,
                tol,
                format!("max |Σμ_k − sum rule| over {n} spectra, d in 2..=10"),
            ))
            .check(Check::at_most("edge_equivalence_max", edge_max, tol, "μ_1 vs Lagrange closed form"))
            .check(Check::at_most("edge_equivalence_min", edge_min, tol, "μ_d vs Lagrange closed form"))
            .check(Check::at_most("partition_of_unity", unity, tol, "|Σ_j w_j − 1|"))
            .check(Check::at_most("ordering", disorder as f64, 0.0, "spectra not nonincreasing"))
            .check(Check::at_most("scaling_covariance", scaling, tol, "|μ_k(cy) − μ_k(y) + ½ log c|"));
        Ok(())
    }

    fn generalized_exponent(&mut self) -> Result<()> {
        let ctx = *self.ctx();
        let y = CovarianceSpectrum::new(vec![1.0, 0.25])?;
        let l2 = glq_general(2.0, &y, &ctx)?.l;
        let trace = Float::with_val(l2.prec(), 5).ln();
        let iso = glq_isotropic(2.0, 3, &ctx)?.l;
        let log3 = Float::with_val(iso.prec(), 3).ln();
        let tol = self.exact_tol();
        self.report
            .check(Check::at_most("glq_trace_q2", abs_diff(&l2, &trace), 1e-12, "L(2) vs log Tr Σ"))
            .check(Check::at_most("glq_isotropic_q2", abs_diff(&iso, &log3), tol, "L(2) = log d at Σ = I"));

        let mut worst: f64 = 0.0;
        for y in [vec![1.0, 0.25], vec![1.0, 2.0, 5.0]] {
            let y = CovarianceSpectrum::new(y)?;
            let mu1 = self.spectrum(&y)?.mu[0].to_f64();
            let (h1, h2) = (1e-4, 1e-6);
            let f1 = glq_general(h1, &y, &ctx)?.l.to_f64() / h1;
            let f2 = glq_general(h2, &y, &ctx)?.l.to_f64() / h2;
            // removes the O(h) term
            let richardson = (h1 * f2 - h2 * f1) / (h1 - h2);
            worst = worst.max((richardson - mu1).abs());
        }
        self.report.check(Check::at_most(
            "glq_slope_richardson",
            worst,
            1e-6,
            "Richardson limit of L(h)/h vs μ_1, h = 1e-4, 1e-6",
        ));
        Ok(())
    }

    fn real_field_identities(&mut self) -> Result<()> {
        let ctx = *self.ctx();
        let mut worst: f64 = 0.0;
        for d in 1..=6 {
            let iso = isotropic_real_spectrum(d, &ctx)?;
            let rule = sum_rule_real(&CovarianceSpectrum::isotropic(d, 1.0)?, &ctx)?;
            worst = worst.max(abs_diff(&iso.sum(), &rule));
        }
        let d2 = real_mu1_d2(&CovarianceSpectrum::isotropic(2, 1.0)?, &ctx)?;
        let iso = isotropic_real_spectrum(2, &ctx)?;
        let tol = self.exact_tol();
        self.report
            .check(Check::at_most("real_sum_rule_isotropic", worst, tol, "d = 1..=6"))
            .check(Check::at_most(
                "real_mu1_d2_isotropic",
                abs_diff(&d2, &iso.mu[0]),
                tol,
                "d = 2 closed form at Σ = I",
            ));
        Ok(())
    }

    fn precision_escalation(&mut self, b: &Budget) -> Result<()> {
        let ctx = *self.ctx();
        let d = b.clustered_d;
        let y = CovarianceSpectrum::new((0..d).map(|j| 1.0 + 1e-3 * j as f64).collect())?;
        let at_p = mu_max_closed(&y, &ctx)?;
        let at_2p = mu_max_closed(&y, &ctx.with_digits(2 * ctx.digits)?)?;
        let rel = abs_diff(&at_p, &at_2p) / at_2p.to_f64().abs().max(1.0);
        self.report.check(Check::at_most(
            "precision_escalation_clustered",
            rel,
            10f64.powi(-(ctx.target_digits as i32)),
            format!("μ_1 at {} vs {} digits, d = {d}, spacing 1e-3", ctx.digits, 2 * ctx.digits),
        ));
        Ok(())
    }

    fn monte_carlo(&mut self, b: &Budget) -> Result<()> {
        let n = b.mc_samples;
        let one = CovarianceSpectrum::new(vec![1.0])?;
        let conv = single_step_estimate(1, &one, Field::Complex, n, &self.stream(STREAM_CONVENTION))?;
        let half_gamma = -euler_gamma(self.ctx()).to_f64() / 2.0;
        self.report
            .check(Check::z_score("convention_d1_complex", &conv, half_gamma, N_SIGMA));

        let mut stream = STREAM_AGREEMENT;
        for y in [vec![1.0, 0.25], vec![1.0, 2.0, 5.0]] {
            let y = CovarianceSpectrum::new(y)?;
            let tag = label(&y);
            for k in 1..=y.dim() {
                let exact = self.partial_sum(&y, k)?;
                let single = single_step_estimate(k, &y, Field::Complex, n, &self.stream(stream))?;
                let chain = product_estimate(&ChainConfig::new(n, k, Field::Complex), &y, &self.stream(stream + 1))?;
                stream += 2;
                self.report
                    .check(Check::z_score(format!("single_vs_exact[{tag},k={k}]"), &single, exact, N_SIGMA))
                    .check(Check::z_score(format!("product_vs_exact[{tag},k={k}]"), &chain, exact, N_SIGMA))
                    .check(combined(format!("single_vs_product[{tag},k={k}]"), &single, &chain));
            }
        }

        for (i, y) in [vec![1.0, 0.25], vec![1.0, 2.0, 5.0]].into_iter().enumerate() {
            let y = CovarianceSpectrum::new(y)?;
            let d = y.dim();
            let rule = sum_rule_real(&y, self.ctx())?.to_f64();
            let est = product_estimate(&ChainConfig::new(n, d, Field::Real), &y, &self.stream(STREAM_REAL + i as u64))?;
            self.report
                .check(Check::z_score(format!("real_product_sum_rule[{}]", label(&y)), &est, rule, N_SIGMA));
        }

        let y = CovarianceSpectrum::new(vec![1.0, 2.0, 5.0])?;
        let dense = SigmaFactor::conjugated(&y, &self.stream(STREAM_UNITARY));
        for k in 1..=2 {
            let id = STREAM_UNITARY + 2 * k as u64;
            let diag = single_step_estimate(k, &y, Field::Complex, n, &self.stream(id))?;
            let rot = single_step_estimate_with(k, &dense, Field::Complex, n, &self.stream(id + 1))?;
            self.report.check(combined(format!("unitary_invariance[k={k}]"), &diag, &rot));
        }

        let y = CovarianceSpectrum::new(vec![1.0, 0.25])?;
        let small = single_step_estimate(1, &y, Field::Complex, n, &self.stream(STREAM_CLT))?;
        let large = single_step_estimate(1, &y, Field::Complex, 4 * n, &self.stream(STREAM_CLT + 1))?;
        let ratio = large.stderr / small.stderr;
        self.report.check(Check::at_most(
            "clt_scaling",
            (ratio - 0.5).abs() / 0.5,
            0.2,
            format!("stderr ratio {} for 4x samples (want 0.5 ± 20%)", sig15(ratio)),
        ));
        Ok(())
    }

    fn diffusive(&mut self, b: &Budget) -> Result<()> {
        let mut trace: f64 = 0.0;
        for d in 1..=50 {
            for sigma1 in [0.0, 0.5, 1.0, 1.7] {
                let spec = diffusive_spectrum(&DiffusionParams::new(d, sigma1, 1.0)?);
                trace = trace.max(spec.sum().to_f64().abs());
            }
        }
        self.report
            .check(Check::at_most("diffusive_trace", trace, 1e-12, "Σ_k μ_k over d ≤ 50"));

        let (m, t) = (b.diffusive_m, b.diffusive_t);
        let mut runs = Vec::new();
        for (i, sigma2) in [0.0, 3.0].into_iter().enumerate() {
            let p = DiffusionParams::new(2, 1.0, sigma2)?;
            let est = diffusive_estimate(&p, 1, m, t, &self.stream(STREAM_DIFFUSIVE + i as u64))?;
            let err = (est.mean - 1.0).abs();
            let tol = (N_SIGMA * est.stderr).max(0.05);
            self.report.check(Check::at_most(
                format!("diffusive_mu1[sigma2={sigma2}]"),
                err,
                tol,
                format!("mean {} ± {} vs 1 (m = {m}, t = {t})", sig15(est.mean), sig15(est.stderr)),
            ));
            runs.push(est);
        }
        self.report
            .check(combined("diffusive_sigma2_independence", &runs[0], &runs[1]));

        let p = DiffusionParams::new(2, 0.0, 1.0)?;
        let est = diffusive_estimate(&p, 1, m, t / 4, &self.stream(STREAM_DIFFUSIVE + 2))?;
        self.report.check(Check::at_most(
            "diffusive_sigma1_zero",
            est.mean.abs(),
            (N_SIGMA * est.stderr).max(1e-9),
            "unitary flow keeps norms fixed",
        ));
        Ok(())
    }

    fn profile_trend(&mut self, b: &Budget) -> Result<()> {
        let profile = Profile::linear(1.0, 1.0)?;
        let sweep = Sweep::run(&profile, b.profile_ds, self.ctx())?;
        let values: Vec<String> = sweep.points.iter().map(|p| sig15(p.mu1.to_f64())).collect();
        self.report.check(Check::at_most(
            "profile_monotone_trend",
            if sweep.is_monotone() { 0.0 } else { 1.0 },
            0.0,
            format!("Y(x) = 1 + x, d = {:?}: {}", b.profile_ds, values.join(", ")),
        ));
        self.report.output(
            "profile",
            json!(sweep
                .points
                .iter()
                .map(|p| json!({"d": p.d, "mu1": sig15(p.mu1.to_f64()), "digits_used": p.digits_used}))
                .collect::<Vec<_>>()),
        );
        Ok(())
    }
}

fn abs_diff(a: &Float, b: &Float) -> f64 {
    Float::with_val(a.prec().max(b.prec()), a - b).abs().to_f64()
}

fn combined(name: impl Into<String>, a: &McEstimate, b: &McEstimate) -> Check {
    let se = (a.stderr.powi(2) + b.stderr.powi(2)).sqrt();
    let z = if se > 0.0 { (a.mean - b.mean).abs() / se } else { (a.mean - b.mean).abs() };
    Check::at_most(
        name,
        z,
        N_SIGMA,
        format!("{} vs {} (combined stderr {})", sig15(a.mean), sig15(b.mean), sig15(se)),
    )
}

fn label(y: &CovarianceSpectrum) -> String {
    let parts: Vec<String> = y.y().iter().map(|v| v.to_string()).collect();
    format!("y={}", parts.join(","))
}
