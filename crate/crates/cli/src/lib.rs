//! Command-line front end for `lattice-dec`.
//!
//! Every command writes to a caller-supplied sink and returns an exit status:
//! 0 on success, 1 when an asserted property or verdict fails, 2 on usage or
//! configuration errors.

pub mod format;
pub mod suites;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lattice_dec::green::{resolvent_apply, GreenError};
use lattice_dec::io::{load_cochain_from_path, save_cochain, save_cochain_to_path};
use lattice_dec::operators::laplacian;
use lattice_dec::oracle::{compare_kernels, fourier_green, truncated_resolvent_solve, OracleError, ORACLE_AGREEMENT};
use lattice_dec::spectral::{operator_norm_estimate, SpectralError};
use lattice_dec::{green::green_component, make_context, CochainError, Degree, GridIndex, KernelSource, OracleConfig, C64};
use serde_json::json;
use thiserror::Error;

use crate::format::{complex17, parse_complex, sig17};
use crate::suites::{calculus_suite, dirichlet_top, green_suite, spectral_suite, SuiteReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Green(#[from] GreenError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// Oracle disagreement is a verdict; everything else is configuration.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Oracle(OracleError::Disagreement { .. })
            | CliError::Green(GreenError::Oracle(OracleError::Disagreement { .. })) => EXIT_FAILED,
            _ => EXIT_CONFIG,
        }
    }
}

fn io_error(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

#[derive(Debug, Parser)]
#[command(name = "lattice-dec", version, about = "Discrete exterior calculus on ℤ²: verification suites, Green kernels and resolvent audits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an invariant suite and print a JSON report.
    Verify(VerifyArgs),
    /// Print one Green kernel value G_{k,s,m,n}(λ).
    #[command(allow_negative_numbers = true)]
    Green(GreenArgs),
    /// Apply the resolvent to a 0-form read from a file.
    Resolvent(ResolventArgs),
    /// Audit the closed-form kernel against both oracles.
    Report(ReportArgs),
    /// Power-iteration norm estimates over a list of window sizes.
    Spectrum(SpectrumArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Calculus,
    Spectral,
    Green,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Starting truncation half-width of the solve.
    #[arg(long, default_value_t = 64)]
    pub n_trunc: usize,
    /// Starting trapezoid nodes per axis.
    #[arg(long, default_value_t = 64)]
    pub quadrature_points: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub solver_tol: f64,
    #[arg(long, default_value_t = 20_000)]
    pub max_solver_iter: usize,
}

impl OracleArgs {
    fn config(&self) -> Result<OracleConfig, CliError> {
        let config = OracleConfig {
            n_trunc: self.n_trunc,
            quadrature_points: self.quadrature_points,
            solver_tol: self.solver_tol,
            max_solver_iter: self.max_solver_iter,
            ..OracleConfig::default()
        };
        config.validate()?;
        Ok(config)
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Window half-width.
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Random samples per degree.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Spectral parameter for the green suite, "re,im" or "re".
    #[arg(long, default_value = "-4,0", allow_hyphen_values = true, value_parser = parse_complex)]
    pub lambda: C64,
    /// Offset grid half-width for the green suite.
    #[arg(long, default_value_t = 6)]
    pub w: usize,
    #[arg(long, default_value_t = 100_000)]
    pub max_iter: usize,
    /// Power-iteration stopping increment.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub oracle: OracleArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GreenSource {
    Formula,
    Solve,
    Fourier,
}

#[derive(Debug, Args)]
pub struct GreenArgs {
    pub k: i64,
    pub s: i64,
    pub m: i64,
    pub n: i64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub lambda: C64,
    #[arg(long, value_enum, default_value_t = GreenSource::Formula)]
    pub source: GreenSource,
    #[command(flatten)]
    pub oracle: OracleArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ResolventSource {
    Formula,
    Oracle,
}

#[derive(Debug, Args)]
pub struct ResolventArgs {
    /// Input 0-form document.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub lambda: C64,
    #[arg(long, value_enum, default_value_t = ResolventSource::Oracle)]
    pub source: ResolventSource,
    /// Output document; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Apply (-Δ - λ) to the result and report the recovery residual.
    #[arg(long)]
    pub check: bool,
    /// Recovery residual above which `--check` fails.
    #[arg(long, default_value_t = 1e-7)]
    pub check_tol: f64,
    #[command(flatten)]
    pub oracle: OracleArgs,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub lambda: C64,
    /// Offset grid half-width.
    #[arg(long, default_value_t = 10)]
    pub w: usize,
    /// Agreement tolerance between closed form and oracles.
    #[arg(long, default_value_t = ORACLE_AGREEMENT)]
    pub tol: f64,
    /// JSON report path; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// CSV grid path; defaults to the report path with a `.csv` extension.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub oracle: OracleArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, default_value_t = 0)]
    pub degree: i64,
    /// Comma-separated window half-widths.
    #[arg(long, default_value = "2,4,8,16,32", value_delimiter = ',')]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 100_000)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = TableFormat::Json)]
    pub format: TableFormat,
}

/// Parse `args` (including the program name) and run; clap's own messages go
/// to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_CONFIG;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: &Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Verify(args) => cmd_verify(args, out),
        Command::Green(args) => cmd_green(args, out),
        Command::Resolvent(args) => cmd_resolvent(args, out),
        Command::Report(args) => cmd_report(args, out),
        Command::Spectrum(args) => cmd_spectrum(args, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(io_error(std::path::Path::new("<stdout>")))
}

fn status(pass: bool) -> i32 {
    if pass { EXIT_OK } else { EXIT_FAILED }
}

fn pretty(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    text
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if args.samples == 0 {
        return Err(CliError::Config("--samples must be at least 1".into()));
    }
    let config = args.oracle.config()?;
    let mut reports: Vec<SuiteReport> = Vec::new();
    if matches!(args.suite, Suite::All | Suite::Calculus) {
        reports.push(calculus_suite(args.n, args.seed, args.samples));
    }
    if matches!(args.suite, Suite::All | Suite::Spectral) {
        reports.push(spectral_suite(args.n, args.seed, args.samples, args.max_iter, args.tol)?);
    }
    if matches!(args.suite, Suite::All | Suite::Green) {
        reports.push(green_suite(args.lambda, args.w, args.seed, &config)?);
    }
    let pass = reports.iter().all(SuiteReport::passed);
    let doc = json!({ "suites": reports.iter().map(SuiteReport::to_json).collect::<Vec<_>>(), "pass": pass });
    emit(out, &pretty(&doc))?;
    Ok(status(pass))
}

pub fn cmd_green(args: &GreenArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let ctx = make_context(args.lambda)?;
    let (dk, ds) = (args.k - args.m, args.s - args.n);
    let value = match args.source {
        GreenSource::Formula => green_component(args.k, args.s, args.m, args.n, &ctx),
        GreenSource::Solve => {
            let base = args.oracle.config()?;
            let radius = dk.unsigned_abs().max(ds.unsigned_abs()) as usize;
            let config = OracleConfig { n_trunc: base.n_trunc.max(2 * radius + 2), max_n_trunc: base.max_n_trunc.max(4 * radius + 4), ..base };
            truncated_resolvent_solve(GridIndex::ORIGIN, &ctx, &config)?.offset_value(dk, ds)
        }
        GreenSource::Fourier => fourier_green(dk, ds, args.lambda, &args.oracle.config()?)?.value,
    };
    emit(out, &format!("{}\n", complex17(value)))?;
    Ok(EXIT_OK)
}

pub fn cmd_resolvent(args: &ResolventArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let phi = load_cochain_from_path(&args.input)?;
    if phi.degree() != Degree::Zero {
        return Err(GreenError::NotZeroForm(phi.degree()).into());
    }
    let ctx = make_context(args.lambda)?;
    let source = match args.source {
        ResolventSource::Formula => KernelSource::ClosedForm,
        ResolventSource::Oracle => KernelSource::Oracle(args.oracle.config()?),
    };
    let image = resolvent_apply(&phi, &ctx, &source)?;
    match &args.output {
        Some(path) => save_cochain_to_path(&image, path)?,
        None => save_cochain(&image, &mut *out)?,
    }
    if !args.check {
        return Ok(EXIT_OK);
    }
    let back = laplacian(&image).sub(&image.scale(args.lambda))?;
    let (residual, at, _) = back.on_window(phi.window()).max_abs_diff(&phi)?;
    let pass = residual <= args.check_tol;
    let doc = json!({
        "recovery_residual": residual,
        "at": [at.k, at.s],
        "tolerance": args.check_tol,
        "output_half_width": image.window().half_width(),
        "pass": pass,
    });
    // with the image on stdout, the check report goes after it
    emit(out, &pretty(&doc))?;
    Ok(status(pass))
}

pub fn cmd_report(args: &ReportArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if args.tol.is_nan() || args.tol <= 0.0 {
        return Err(CliError::Config("--tol must be positive".into()));
    }
    let config = args.oracle.config()?;
    let ctx = make_context(args.lambda)?;
    let report = compare_kernels(&ctx, args.w, args.tol, &config)?;
    let json = report.to_json();
    let csv_path = args.csv.clone().or_else(|| args.output.as_ref().map(|p| p.with_extension("csv")));
    match &args.output {
        Some(path) => fs::write(path, &json).map_err(io_error(path))?,
        None => emit(out, &json)?,
    }
    if let Some(path) = csv_path {
        fs::write(&path, report.to_csv()).map_err(io_error(&path))?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_spectrum(args: &SpectrumArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let degree = Degree::from_int(args.degree)?;
    if args.n.is_empty() {
        return Err(CliError::Config("--n needs at least one window size".into()));
    }
    let mut rows = Vec::with_capacity(args.n.len());
    for &n in &args.n {
        let est = operator_norm_estimate(degree, n, args.max_iter, args.tol)?;
        rows.push((n, est, dirichlet_top(n)));
    }
    let text = match args.format {
        TableFormat::Csv => {
            let mut text = String::from("n,estimate,dirichlet_top,iterations,final_increment,converged\n");
            for (n, est, top) in &rows {
                text.push_str(&format!(
                    "{n},{},{},{},{},{}\n",
                    sig17(est.estimate),
                    sig17(*top),
                    est.iterations,
                    sig17(est.final_increment),
                    est.converged()
                ));
            }
            text
        }
        TableFormat::Json => pretty(&json!({
            "degree": args.degree,
            "tol": args.tol,
            "max_iter": args.max_iter,
            "rows": rows.iter().map(|(n, est, top)| json!({
                "n": n,
                "estimate": est.estimate,
                "dirichlet_top": top,
                "iterations": est.iterations,
                "final_increment": est.final_increment,
                "converged": est.converged(),
            })).collect::<Vec<_>>(),
        })),
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}
