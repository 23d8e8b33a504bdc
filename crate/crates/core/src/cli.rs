//! Command-line front end. Every command prints one JSON document (or CSV
//! where noted); checks that fail still print the artifact but exit with
//! [`EXIT_CHECK`] and a JSON reason on stderr.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bautin::{bautin_certificate, BautinCertificate};
use crate::bounds::{a0_verify, bernstein_radii, radius_basic, radius_scaled, rho_residual, rho_solve, A0Constants, A0Report};
use crate::error::Error;
use crate::exact::Rational;
use crate::numeric::{
    count_complex_zeros, count_real_cycles, lins_neto_construct, validate_series, ComplexZeroReport, CycleCount,
    LienardSystem, DEFAULT_TOLERANCE,
};
use crate::recurrence::CoefficientTable;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CHECK: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "lienard", version, about = "Return-map coefficients, Bautin certificates and radii for Liénard systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Exact coefficient table v_k(θ), v_k(2π)
    Coeffs,
    /// Ideal certificate and growth envelope
    Bautin,
    /// Convergence radii
    Radius,
    /// Bernstein-class constants and zero-count radii
    Bernstein,
    /// Truncated series against the integrated flow
    Validate,
    /// Real and complex small cycles
    Cycles,
    /// Perturbative system with n prescribed cycles
    LinsNeto,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Options {
    /// Degree of p
    #[arg(long, global = true)]
    pub d: Option<usize>,
    /// Truncation order
    #[arg(long = "K", global = true)]
    pub order: Option<usize>,
    /// Cycle index n (defaults to ⌊d/2⌋)
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Comma-separated coefficients λ1,...,λd (decimals or p/q)
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Option<Vec<String>>,
    /// Integrator tolerance
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Largest sample radius
    #[arg(long, global = true)]
    pub radius: Option<f64>,
    /// Number of sample radii
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Perturbation size for lins-neto
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    /// Write the artifact here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Decimal places for norm comparisons
    #[arg(long, global = true, env = "LIENARD_PRECISION", default_value_t = crate::DEFAULT_PRECISION, hide = true)]
    pub precision: u32,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Dimension { .. } => CliError::Usage(e.to_string()),
            other => CliError::Failed(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failed(_) => EXIT_ERROR,
        }
    }

    pub fn to_json(&self) -> String {
        let (kind, reason) = match self {
            CliError::Usage(r) => ("usage", r.clone()),
            CliError::Failed(e) => ("error", e.to_string()),
        };
        json!({ "status": kind, "reason": reason }).to_string()
    }
}

/// The artifact plus the reasons any asserted check failed.
#[derive(Debug)]
pub struct Outcome {
    pub body: String,
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.failures.is_empty() {
            EXIT_OK
        } else {
            EXIT_CHECK
        }
    }

    pub fn failure_json(&self) -> String {
        json!({ "status": "check_failed", "reasons": self.failures }).to_string()
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

impl Options {
    fn d(&self) -> CliResult<usize> {
        match self.d {
            Some(0) => usage("--d must be at least 1"),
            Some(d) => Ok(d),
            None => usage("--d is required"),
        }
    }

    fn order(&self, default: Option<usize>) -> CliResult<usize> {
        match self.order.or(default) {
            Some(k) if k >= 2 => Ok(k),
            Some(k) => usage(format!("--K must be at least 2, got {k}")),
            None => usage("--K is required"),
        }
    }

    fn lambda(&self) -> CliResult<Vec<Rational>> {
        let Some(raw) = &self.lambda else { return usage("--lambda is required") };
        let lambda = raw.iter().map(|s| s.parse::<Rational>()).collect::<Result<Vec<_>, _>>()?;
        if lambda.is_empty() {
            return usage("--lambda needs at least one value");
        }
        if let Some(d) = self.d {
            if d != lambda.len() {
                return usage(format!("--d {d} disagrees with {} values in --lambda", lambda.len()));
            }
        }
        Ok(lambda)
    }

    fn tol(&self, default: f64) -> CliResult<f64> {
        match self.tol.unwrap_or(default) {
            t if t > 0.0 && t < 1.0 => Ok(t),
            t => usage(format!("--tol must lie in (0, 1), got {t}")),
        }
    }

    fn json_only(&self, command: &str) -> CliResult<()> {
        if self.format == Format::Csv {
            return usage(format!("{command} only supports --format json"));
        }
        Ok(())
    }
}

fn to_f64(lambda: &[Rational]) -> Vec<f64> {
    lambda.iter().map(Rational::to_f64).collect()
}

fn pretty<T: Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value).map(|s| s + "\n").map_err(|e| CliError::Failed(Error::InvalidArgument(e.to_string())))
}

#[derive(Serialize)]
struct BautinOutput {
    certificate: BautinCertificate,
    envelope: A0Report,
}

#[derive(Serialize)]
struct RadiusOutput {
    lambda: Vec<f64>,
    abs_lambda: f64,
    r_basic: f64,
    rho: Option<f64>,
    rho_residual: Option<f64>,
    r_scaled: Option<f64>,
}

#[derive(Serialize)]
struct CyclesOutput {
    n: usize,
    real: CycleCount,
    real_bound: usize,
    complex: Option<ComplexZeroReport>,
    complex_bound: usize,
    /// The complex count is asserted only when the truncation tail is controlled.
    complex_asserted: bool,
}

#[derive(Serialize)]
struct LinsNetoOutput {
    n: usize,
    epsilon: f64,
    d: usize,
    lambda: Vec<f64>,
    expected_radii: Vec<f64>,
    cycles: CycleCount,
}

/// Runs one command and renders its artifact.
pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let o = &cli.options;
    let mut failures = Vec::new();
    let body = match cli.command {
        Command::Coeffs => {
            let table = CoefficientTable::compute(o.d()?, o.order(None)?)?;
            match o.format {
                Format::Json => pretty(&table.to_json())?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    let fail = |e: csv::Error| CliError::Failed(Error::InvalidArgument(e.to_string()));
                    w.write_record(["k", "monomial", "v_2pi"]).map_err(fail)?;
                    for k in 1..=table.order() {
                        for (m, c) in table.v_2pi(k).terms() {
                            w.write_record([k.to_string(), m.to_string(), c.to_string()]).map_err(fail)?;
                        }
                    }
                    let bytes = w.into_inner().map_err(|e| CliError::Failed(Error::InvalidArgument(e.to_string())))?;
                    String::from_utf8_lossy(&bytes).into_owned()
                }
            }
        }
        Command::Bautin => {
            o.json_only("bautin")?;
            let d = o.d()?;
            let table = CoefficientTable::compute(d, o.order(Some(2 * (d / 2) + 4))?)?;
            let certificate = bautin_certificate(&table)?;
            let envelope = a0_verify(&table, &A0Constants::lienard(), o.precision);
            failures.extend(certificate.failures.iter().cloned());
            if !certificate.holds && certificate.failures.is_empty() {
                failures.push("ideal certificate does not hold".into());
            }
            if !envelope.holds {
                failures.push("growth envelope violated".into());
            }
            pretty(&BautinOutput { certificate, envelope })?
        }
        Command::Radius => {
            o.json_only("radius")?;
            let lambda = to_f64(&o.lambda()?);
            let rho = rho_solve(&lambda);
            pretty(&RadiusOutput {
                abs_lambda: crate::param::lambda_abs(&lambda),
                r_basic: radius_basic(&lambda),
                rho,
                rho_residual: rho.map(|r| rho_residual(&lambda, r)),
                r_scaled: radius_scaled(&lambda),
                lambda,
            })?
        }
        Command::Bernstein => {
            o.json_only("bernstein")?;
            let lambda = to_f64(&o.lambda()?);
            let n = o.n.unwrap_or((lambda.len() / 2).max(1));
            pretty(&bernstein_radii(n, &lambda)?)?
        }
        Command::Validate => {
            let lambda = to_f64(&o.lambda()?);
            let sys = LienardSystem::new(lambda)?;
            let order = o.order(Some(20))?;
            let table = CoefficientTable::compute(sys.d(), order)?;
            let radius = o.radius.unwrap_or_else(|| radius_scaled(sys.lambda()).unwrap_or_else(|| radius_basic(sys.lambda())));
            let report = validate_series(&sys, &table, order, radius, o.grid.unwrap_or(16), o.tol(DEFAULT_TOLERANCE)?)?;
            if !report.within_bound {
                failures.push(format!("residual {:e} exceeds the model and truncation allowance", report.max_residual));
            }
            match o.format {
                Format::Json => pretty(&report)?,
                Format::Csv => report.to_csv()?,
            }
        }
        Command::Cycles => {
            o.json_only("cycles")?;
            let exact = o.lambda()?;
            let sys = LienardSystem::new(to_f64(&exact))?;
            let n = sys.n();
            let r_max = o.radius.unwrap_or_else(|| radius_scaled(sys.lambda()).unwrap_or_else(|| radius_basic(sys.lambda())));
            let real = count_real_cycles(&sys, r_max, o.grid.unwrap_or(32), o.tol(1e-9)?)?;
            let real_bound = n.saturating_sub(1);
            if real.count > real_bound {
                failures.push(format!("{} real cycles exceed the bound {real_bound}", real.count));
            }
            let (complex, asserted) = if n >= 1 {
                let order = o.order(Some((2 * n + 4).max(12)))?;
                let table = CoefficientTable::compute(sys.d(), order)?;
                let radius = bernstein_radii(n, sys.lambda())?.r_bernstein;
                let report = count_complex_zeros(&table, &exact, order, radius)?;
                let asserted = report.guard_ok;
                if asserted && report.count > 2 * n {
                    failures.push(format!("{} complex zeros exceed the bound {}", report.count, 2 * n));
                }
                (Some(report), asserted)
            } else {
                (None, false)
            };
            pretty(&CyclesOutput { n, real, real_bound, complex, complex_bound: 2 * n, complex_asserted: asserted })?
        }
        Command::LinsNeto => {
            o.json_only("lins-neto")?;
            let n = match o.n {
                Some(0) | None => return usage("--n (at least 1) is required"),
                Some(n) => n,
            };
            let epsilon = o.epsilon.unwrap_or(0.005);
            let sys = lins_neto_construct(n, epsilon)?;
            let r_max = (n as f64 + 0.6) / (n as f64 + 1.0);
            let cycles = count_real_cycles(&sys, r_max, o.grid.unwrap_or(40), o.tol(1e-9)?)?;
            if epsilon > 0.0 && cycles.count != n {
                failures.push(format!("expected {n} cycles, found {}", cycles.count));
            }
            pretty(&LinsNetoOutput {
                n,
                epsilon,
                d: sys.d(),
                lambda: sys.lambda().to_vec(),
                expected_radii: (1..=n).map(|j| j as f64 / (n + 1) as f64).collect(),
                cycles,
            })?
        }
    };
    Ok(Outcome { body, failures })
}

/// Parses `args`, runs, writes the artifact and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return EXIT_OK;
            }
            eprintln!("{}", CliError::Usage(e.render().to_string().trim().to_string()).to_json());
            return EXIT_USAGE;
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let written = match &cli.options.out {
                Some(path) => std::fs::write(path, &outcome.body).map_err(|e| e.to_string()),
                None => {
                    print!("{}", outcome.body);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("{}", CliError::Failed(Error::InvalidArgument(e)).to_json());
                return EXIT_ERROR;
            }
            if !outcome.failures.is_empty() {
                eprintln!("{}", outcome.failure_json());
            }
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
