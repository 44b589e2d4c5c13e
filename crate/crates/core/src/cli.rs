//! Command-line front end behind the `lyapunov` binary.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::Float;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{
    complex_spectrum, diffusive_spectrum, glq_general, glq_isotropic, isotropic_complex_spectrum,
    isotropic_real_spectrum, profile_spectrum, real_mu1_d2, sum_rule_complex, sum_rule_real, Profile, Sweep,
};
use crate::mc::{
    diffusive_estimate, product_estimate, single_step_estimate, ChainConfig, McEstimate, RngStream,
};
use crate::precision::{to_decimal, PrecisionContext};
use crate::report::{estimate_json, num, sig15, Cell, Check, Format, RunReport, Table};
use crate::spectrum::{CovarianceSpectrum, DiffusionParams, Field};
use crate::verify::{run_suite, Mutation, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_CHAIN: i32 = 3;
pub const EXIT_PRECISION: i32 = 4;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

/// Environment variable holding the default worker-thread count.
pub const THREADS_ENV: &str = "LYAPUNOV_THREADS";

#[derive(Debug, Parser)]
#[command(name = "lyapunov", version, about = "Lyapunov exponents of Gaussian random matrix products")]
pub struct Cli {
    /// Report format written to stdout or --out.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for Monte Carlo sampling [env: LYAPUNOV_THREADS].
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(flatten)]
    pub precision: PrecisionArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Real,
    Complex,
}

impl From<FieldArg> for Field {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::Real => Field::Real,
            FieldArg::Complex => Field::Complex,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct PrecisionArgs {
    /// Starting working precision in decimal digits.
    #[arg(long, global = true, default_value_t = 40)]
    pub digits: u32,
    /// Digits that must agree between precision p and 2p.
    #[arg(long, global = true, default_value_t = 30)]
    pub target_digits: u32,
    /// Escalation cap in decimal digits.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub max_digits: u32,
}

impl PrecisionArgs {
    fn context(&self) -> Result<PrecisionContext> {
        let digits = self.digits.max(self.target_digits);
        PrecisionContext::new(digits, self.target_digits, self.max_digits.max(digits))
    }
}

/// Covariance input: isotropic dimension, y = eigenvalues of Σ⁻¹, or
/// eigenvalues of Σ.
#[derive(Debug, Clone, Args)]
pub struct CovarianceArgs {
    /// Dimension (Σ = I unless combined with --profile).
    #[arg(long)]
    pub d: Option<usize>,
    /// Eigenvalues of Σ⁻¹, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "sigma_eigs")]
    pub y: Option<Vec<f64>>,
    /// Eigenvalues of Σ, comma separated (inverted to y).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub sigma_eigs: Option<Vec<f64>>,
}

enum Cov {
    Isotropic(usize),
    Spectrum(CovarianceSpectrum),
}

impl CovarianceArgs {
    fn resolve(&self) -> Result<Cov> {
        match (&self.d, &self.y, &self.sigma_eigs) {
            (Some(d), None, None) => {
                if *d < 1 {
                    return Err(Error::config("--d must be at least 1"));
                }
                Ok(Cov::Isotropic(*d))
            }
            (None, Some(y), None) => Ok(Cov::Spectrum(CovarianceSpectrum::new(y.clone())?)),
            (None, None, Some(s)) => Ok(Cov::Spectrum(CovarianceSpectrum::from_sigma_eigenvalues(s)?)),
            _ => Err(Error::config("give exactly one of --d, --y, --sigma-eigs")),
        }
    }

    fn spectrum(&self) -> Result<CovarianceSpectrum> {
        match self.resolve()? {
            Cov::Isotropic(d) => CovarianceSpectrum::isotropic(d, 1.0),
            Cov::Spectrum(y) => Ok(y),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact exponents and sum rules.
    Exact(ExactArgs),
    /// Generalized maximum exponent L(q).
    Glq(GlqArgs),
    /// Monte Carlo estimate of μ_1 + … + μ_k.
    Mc(McArgs),
    /// Spectrum of the diffusive product, optionally simulated.
    Diffusive(DiffusiveArgs),
    /// μ_1 for profile spectra over a list of dimensions.
    Sweep(SweepArgs),
    /// Run the invariant suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[arg(long, value_enum, default_value_t = FieldArg::Complex)]
    pub field: FieldArg,
    #[command(flatten)]
    pub cov: CovarianceArgs,
    /// Profile `linear:a,b` evaluated at dimension --d.
    #[arg(long, conflicts_with_all = ["y", "sigma_eigs"])]
    pub profile: Option<Profile>,
}

#[derive(Debug, Args)]
pub struct GlqArgs {
    #[command(flatten)]
    pub cov: CovarianceArgs,
    /// A single q or an inclusive range start:stop:step.
    #[arg(long)]
    pub q: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EstimatorArg {
    Single,
    Product,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[arg(long, value_enum, default_value_t = EstimatorArg::Product)]
    pub estimator: EstimatorArg,
    #[arg(long, value_enum, default_value_t = FieldArg::Complex)]
    pub field: FieldArg,
    #[command(flatten)]
    pub cov: CovarianceArgs,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Samples (single) or chain steps (product).
    #[arg(long, alias = "steps", default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub stream_id: u64,
    /// Chain steps between re-orthonormalizations.
    #[arg(long, default_value_t = 1)]
    pub renorm_every: u64,
}

#[derive(Debug, Args)]
pub struct DiffusiveArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 1.0)]
    pub sigma1: f64,
    #[arg(long, default_value_t = 0.0)]
    pub sigma2: f64,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Also run the product-of-exponentials simulator.
    #[arg(long)]
    pub simulate: bool,
    /// Substeps per unit time.
    #[arg(long, default_value_t = 1000)]
    pub m: u64,
    /// Unit-time segments.
    #[arg(long, default_value_t = 1000)]
    pub t_units: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub profile: Profile,
    #[arg(long, value_delimiter = ',', required = true)]
    pub d_list: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Smaller sample sizes and dimensions.
    #[arg(long)]
    pub quick: bool,
    #[arg(long, default_value_t = VerifyOptions::default().seed)]
    pub seed: u64,
    /// Inject a known defect; the suite must then fail.
    #[arg(long, value_enum, hide = true)]
    pub mutate: Option<MutationArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MutationArg {
    DropHalf,
}

/// Parses `args` (including the program name), runs the command, writes
/// the report and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    configure_threads(cli.threads);
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let format = Format::from(cli.format);
    let written = match &cli.out {
        Some(path) => File::create(path).and_then(|mut f| report.write_to(format, &mut f)),
        None => report.write_to(format, &mut io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return EXIT_IO;
    }
    if !report.checks.is_empty() {
        let _ = write!(io::stderr(), "{report}");
    }
    if report.all_passed() {
        EXIT_OK
    } else {
        eprintln!("failed checks: {}", report.failed().join(", "));
        EXIT_CHECK_FAILED
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Degenerate { .. } => EXIT_DEGENERATE,
        Error::RankCollapse { .. } | Error::NonFinite { .. } => EXIT_CHAIN,
        Error::PrecisionExhausted { .. } => EXIT_PRECISION,
        Error::Domain(_) | Error::InvalidConfig(_) => EXIT_USAGE,
    }
}

fn configure_threads(flag: Option<usize>) {
    let n = flag.or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()));
    if let Some(n) = n.filter(|n| *n > 0) {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Runs the parsed command without writing anything.
pub fn execute(cli: &Cli) -> Result<RunReport> {
    let ctx = cli.precision.context()?;
    let mut report = match &cli.command {
        Command::Exact(a) => cmd_exact(a, &ctx)?,
        Command::Glq(a) => cmd_glq(a, &ctx)?,
        Command::Mc(a) => cmd_mc(a, &ctx)?,
        Command::Diffusive(a) => cmd_diffusive(a)?,
        Command::Sweep(a) => cmd_sweep(a, &ctx)?,
        Command::Verify(a) => run_suite(&VerifyOptions {
            quick: a.quick,
            seed: a.seed,
            ctx,
            mutation: a.mutate.map(|m| match m {
                MutationArg::DropHalf => Mutation::DropHalf,
            }),
        })?,
    };
    if !matches!(cli.command, Command::Verify(_)) {
        report.input("precision", serde_json::to_value(ctx).expect("serializes"));
    }
    Ok(report)
}

fn big(x: &Float, ctx: &PrecisionContext) -> Value {
    Value::from(to_decimal(x, ctx.target_digits))
}

fn echo_spectrum(report: &mut RunReport, y: &CovarianceSpectrum) {
    report
        .input("d", y.dim())
        .input("y", y.y().iter().map(|v| num(*v)).collect::<Vec<_>>())
        .input("sigma_eigs", y.sigma_eigenvalues().iter().map(|v| num(*v)).collect::<Vec<_>>());
}

fn exact_tol(ctx: &PrecisionContext) -> f64 {
    10f64.powi(-(ctx.target_digits as i32) + 2)
}

fn diff(a: &Float, b: &Float) -> f64 {
    Float::with_val(a.prec().max(b.prec()), a - b).abs().to_f64()
}

pub fn cmd_exact(a: &ExactArgs, ctx: &PrecisionContext) -> Result<RunReport> {
    let mut r = RunReport::new("exact");
    let field = Field::from(a.field);
    r.input("field", field.to_string());

    if let Some(profile) = &a.profile {
        let d = a.cov.d.ok_or_else(|| Error::config("--profile needs --d"))?;
        if field != Field::Complex {
            return Err(Error::config("profiles are supported for the complex field only"));
        }
        let p = profile_spectrum(d, profile, ctx)?;
        r.input("profile", profile.to_string()).input("d", d);
        r.output("mu1", big(&p.mu1, ctx)).output("digits_used", p.digits_used);
        r.table = Table::new(&["k", "mu"]);
        r.table.push(vec![Cell::Int(1), Cell::big(&p.mu1, ctx.target_digits)]);
        return Ok(r);
    }

    let cov = a.cov.resolve()?;
    let y = a.cov.spectrum()?;
    echo_spectrum(&mut r, &y);
    r.table = Table::new(&["k", "mu"]);
    match field {
        Field::Complex => {
            let spec = match cov {
                Cov::Isotropic(d) => isotropic_complex_spectrum(d, ctx)?,
                Cov::Spectrum(_) => complex_spectrum(&y, ctx)?,
            };
            let sum = spec.sum();
            let rule = sum_rule_complex(&y, ctx);
            for (k, m) in spec.mu.iter().enumerate() {
                r.table.push(vec![Cell::Int(k as i64 + 1), Cell::big(m, ctx.target_digits)]);
            }
            r.output("mu", spec.mu.iter().map(|m| big(m, ctx)).collect::<Vec<_>>())
                .output("sum", big(&sum, ctx))
                .output("sum_rule", big(&rule, ctx))
                .output("provenance", serde_json::to_value(spec.provenance).expect("serializes"))
                .output("digits_used", spec.digits_used);
            r.check(Check::at_most(
                "sum_rule_residual",
                diff(&sum, &rule),
                exact_tol(ctx),
                "|Σ_k μ_k − closed-form sum|",
            ));
        }
        Field::Real => {
            let rule = sum_rule_real(&y, ctx)?;
            r.output("sum_rule", big(&rule, ctx));
            match cov {
                Cov::Isotropic(d) => {
                    let spec = isotropic_real_spectrum(d, ctx)?;
                    for (k, m) in spec.mu.iter().enumerate() {
                        r.table.push(vec![Cell::Int(k as i64 + 1), Cell::big(m, ctx.target_digits)]);
                    }
                    let sum = spec.sum();
                    r.output("mu", spec.mu.iter().map(|m| big(m, ctx)).collect::<Vec<_>>())
                        .output("sum", big(&sum, ctx))
                        .output("provenance", serde_json::to_value(spec.provenance).expect("serializes"));
                    r.check(Check::at_most(
                        "sum_rule_residual",
                        diff(&sum, &rule),
                        exact_tol(ctx),
                        "|Σ_k μ_k − closed-form sum|",
                    ));
                }
                Cov::Spectrum(_) if y.dim() == 2 => {
                    let mu1 = real_mu1_d2(&y, ctx)?;
                    let mu2 = Float::with_val(mu1.prec(), &rule - &mu1);
                    r.table.push(vec![Cell::Int(1), Cell::big(&mu1, ctx.target_digits)]);
                    r.table.push(vec![Cell::Int(2), Cell::big(&mu2, ctx.target_digits)]);
                    r.output("mu", vec![big(&mu1, ctx), big(&mu2, ctx)]);
                }
                Cov::Spectrum(_) => {
                    r.output("note", "individual real exponents are only available for d = 2 or Σ = I");
                }
            }
        }
    }
    Ok(r)
}

/// `2`, or `0:2:0.5` inclusive.
pub fn parse_q(s: &str) -> Result<Vec<f64>> {
    let parse = |p: &str| {
        p.trim()
            .parse::<f64>()
            .map_err(|e| Error::config(format!("bad q value `{p}`: {e}")))
    };
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [q] => Ok(vec![parse(q)?]),
        [a, b, step] => {
            let (a, b, step) = (parse(a)?, parse(b)?, parse(step)?);
            if !(step > 0.0 && b >= a) {
                return Err(Error::config("q range needs start <= stop and step > 0"));
            }
            let n = ((b - a) / step + 1e-9).floor() as usize;
            Ok((0..=n).map(|i| a + step * i as f64).collect())
        }
        _ => Err(Error::config(format!("q must be `value` or `start:stop:step`, got `{s}`"))),
    }
}

pub fn cmd_glq(a: &GlqArgs, ctx: &PrecisionContext) -> Result<RunReport> {
    let mut r = RunReport::new("glq");
    let qs = parse_q(&a.q)?;
    let cov = a.cov.resolve()?;
    let y = a.cov.spectrum()?;
    echo_spectrum(&mut r, &y);
    r.input("q", qs.iter().map(|q| num(*q)).collect::<Vec<_>>());
    let l = |q: f64| -> Result<Float> {
        Ok(match cov {
            Cov::Isotropic(d) => glq_isotropic(q, d, ctx)?.l,
            Cov::Spectrum(_) => glq_general(q, &y, ctx)?.l,
        })
    };
    r.table = Table::new(&["q", "L"]);
    let mut points = Vec::new();
    for q in &qs {
        let v = l(*q)?;
        r.table.push(vec![Cell::Num(*q), Cell::big(&v, ctx.target_digits)]);
        points.push(json!({"q": num(*q), "L": big(&v, ctx)}));
    }
    r.output("points", points);

    let mu1 = match cov {
        Cov::Isotropic(d) => isotropic_complex_spectrum(d, ctx)?.mu[0].to_f64(),
        Cov::Spectrum(_) => complex_spectrum(&y, ctx)?.mu[0].to_f64(),
    };
    let (h1, h2) = (1e-4, 1e-6);
    let f1 = l(h1)?.to_f64() / h1;
    let f2 = l(h2)?.to_f64() / h2;
    let slope = (h1 * f2 - h2 * f1) / (h1 - h2);
    r.output("slope_at_zero", num(slope)).output("mu1", num(mu1));
    r.check(Check::at_most(
        "slope_at_zero",
        (slope - mu1).abs(),
        1e-6,
        "Richardson limit of L(h)/h vs μ_1",
    ));
    Ok(r)
}

pub fn cmd_mc(a: &McArgs, ctx: &PrecisionContext) -> Result<RunReport> {
    let mut r = RunReport::new("mc");
    let field = Field::from(a.field);
    let cov = a.cov.resolve()?;
    let y = a.cov.spectrum()?;
    echo_spectrum(&mut r, &y);
    let rng = RngStream::new(a.seed, a.stream_id);
    r.input("field", field.to_string())
        .input("k", a.k)
        .input("seed", a.seed)
        .input("stream_id", a.stream_id)
        .input("samples", a.samples);
    let est = match a.estimator {
        EstimatorArg::Single => {
            r.input("estimator", "single");
            single_step_estimate(a.k, &y, field, a.samples, &rng)?
        }
        EstimatorArg::Product => {
            r.input("estimator", "product").input("renorm_every", a.renorm_every);
            let cfg = ChainConfig::new(a.samples, a.k, field).with_renorm_every(a.renorm_every);
            product_estimate(&cfg, &y, &rng)?
        }
    };
    r.output("estimate", estimate_json(&est));
    r.table = Table::new(&["k", "mean", "stderr", "samples", "exact", "z"]);
    match exact_partial_sum(&cov, &y, field, a.k, ctx) {
        Ok(Some(exact)) => {
            let z = est.z_score(exact);
            r.output("exact", num(exact)).output("z_score", num(z));
            r.check(Check::z_score("exact_z_score", &est, exact, 3.0));
            r.table.push(row(a.k, &est, Cell::Num(exact), Cell::Num(z)));
        }
        Ok(None) | Err(Error::Degenerate { .. }) => {
            r.output("exact", Value::Null);
            r.table.push(row(a.k, &est, Cell::Text(String::new()), Cell::Text(String::new())));
        }
        Err(e) => return Err(e),
    }
    Ok(r)
}

fn row(k: usize, e: &McEstimate, exact: Cell, z: Cell) -> Vec<Cell> {
    vec![
        Cell::Int(k as i64),
        Cell::Num(e.mean),
        Cell::Num(e.stderr),
        Cell::Int(e.samples as i64),
        exact,
        z,
    ]
}

/// μ_1 + … + μ_k when a closed form covers the case.
fn exact_partial_sum(
    cov: &Cov,
    y: &CovarianceSpectrum,
    field: Field,
    k: usize,
    ctx: &PrecisionContext,
) -> Result<Option<f64>> {
    let d = y.dim();
    if k < 1 || k > d {
        return Ok(None);
    }
    let head = |mu: &[Float]| mu[..k].iter().map(Float::to_f64).sum::<f64>();
    Ok(match (field, cov) {
        (Field::Complex, Cov::Isotropic(d)) => Some(head(&isotropic_complex_spectrum(*d, ctx)?.mu)),
        (Field::Complex, Cov::Spectrum(_)) => Some(head(&complex_spectrum(y, ctx)?.mu)),
        (Field::Real, Cov::Isotropic(d)) => Some(head(&isotropic_real_spectrum(*d, ctx)?.mu)),
        (Field::Real, Cov::Spectrum(_)) if k == d => Some(sum_rule_real(y, ctx)?.to_f64()),
        (Field::Real, Cov::Spectrum(_)) if d == 2 => Some(real_mu1_d2(y, ctx)?.to_f64()),
        _ => None,
    })
}

pub fn cmd_diffusive(a: &DiffusiveArgs) -> Result<RunReport> {
    let mut r = RunReport::new("diffusive");
    let p = DiffusionParams::new(a.d, a.sigma1, a.sigma2)?;
    r.input("d", a.d)
        .input("sigma1", num(a.sigma1))
        .input("sigma2", num(a.sigma2))
        .input("k", a.k);
    let spec = diffusive_spectrum(&p);
    let mu = spec.to_f64();
    r.output("mu", mu.iter().map(|m| num(*m)).collect::<Vec<_>>());
    r.table = Table::new(&["k", "mu"]);
    for (k, m) in mu.iter().enumerate() {
        r.table.push(vec![Cell::Int(k as i64 + 1), Cell::Num(*m)]);
    }
    r.check(Check::at_most("trace_zero", spec.sum().to_f64().abs(), 1e-12, "Σ_k μ_k"));

    if a.simulate {
        if a.k < 1 || a.k > a.d {
            return Err(Error::config(format!("k = {} must lie in 1..={}", a.k, a.d)));
        }
        r.input("m", a.m).input("t_units", a.t_units).input("seed", a.seed);
        let exact: f64 = mu[..a.k].iter().sum();
        let est = diffusive_estimate(&p, a.k, a.m, a.t_units, &RngStream::new(a.seed, 0))?;
        let tol = (3.0 * est.stderr).max(if a.sigma1 == 0.0 { 1e-9 } else { 0.05 });
        r.output("estimate", estimate_json(&est)).output("exact_partial_sum", num(exact));
        r.check(Check::at_most(
            "simulated_vs_exact",
            (est.mean - exact).abs(),
            tol,
            format!("mean {} ± {} vs {}", sig15(est.mean), sig15(est.stderr), sig15(exact)),
        ));
        if a.sigma2 != 0.0 {
            let base = DiffusionParams::new(a.d, a.sigma1, 0.0)?;
            let other = diffusive_estimate(&base, a.k, a.m, a.t_units, &RngStream::new(a.seed, 1))?;
            let se = (est.stderr.powi(2) + other.stderr.powi(2)).sqrt();
            r.output("estimate_sigma2_zero", estimate_json(&other));
            r.output("note", "the exact spectrum does not depend on sigma2");
            r.check(Check::at_most(
                "sigma2_independence",
                if se > 0.0 { (est.mean - other.mean).abs() / se } else { 0.0 },
                3.0,
                format!("σ2 = {} vs σ2 = 0: {} vs {}", a.sigma2, sig15(est.mean), sig15(other.mean)),
            ));
        }
    }
    Ok(r)
}

pub fn cmd_sweep(a: &SweepArgs, ctx: &PrecisionContext) -> Result<RunReport> {
    let mut r = RunReport::new("sweep");
    r.input("profile", a.profile.to_string())
        .input("d_list", a.d_list.clone());
    let sweep = Sweep::run(&a.profile, &a.d_list, ctx)?;
    r.table = Table::new(&["d", "mu1", "digits_used"]);
    for p in &sweep.points {
        r.table.push(vec![
            Cell::Int(p.d as i64),
            Cell::big(&p.mu1, ctx.target_digits),
            Cell::Int(p.digits_used as i64),
        ]);
    }
    let increments = sweep.increments();
    r.output(
        "points",
        sweep
            .points
            .iter()
            .map(|p| json!({"d": p.d, "mu1": big(&p.mu1, ctx), "digits_used": p.digits_used}))
            .collect::<Vec<_>>(),
    )
    .output("increments", increments.iter().map(|v| num(*v)).collect::<Vec<_>>())
    .output("monotone", sweep.is_monotone());
    r.check(Check::at_most(
        "monotone_trend",
        if sweep.is_monotone() { 0.0 } else { 1.0 },
        0.0,
        "μ_1 moves in one direction as d grows",
    ));
    Ok(r)
}
