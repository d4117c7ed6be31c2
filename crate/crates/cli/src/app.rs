//! Argument parsing and the `compute`, `plot` and `verify` commands.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use nrange_core::numrange::{full_report, full_report_allow_zero};
use nrange_core::theorems::{run_suite, CheckResult, SuiteConfig};
use nrange_core::{CMatrix, Error, RangeReport, Tolerances};
use thiserror::Error;

use crate::matrix_file::{parse_matrix, Format, ParseError};
use crate::report::{write_csv, CsvError, ReportJson};
use crate::{json, svg};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRIALS: usize = 25;
pub const DEFAULT_DIMS: (usize, usize) = (2, 8);

#[derive(Debug, Parser)]
#[command(name = "nrange", about = "Numerical range and maximal numerical range toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the JSON report for a matrix; optionally write CSV and SVG.
    Compute(Options),
    /// Render the SVG figure for a matrix (to --svg or stdout).
    Plot(Options),
    /// Run the randomized checker suite; prints a JSON array of results.
    Verify(Options),
}

#[derive(Debug, Args)]
pub struct Options {
    /// Matrix file (compute, plot) or suite config JSON (verify).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Matrix file format; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Number of grid angles for support sampling.
    #[arg(long, value_parser = clap::value_parser!(u64).range(8..=1_000_000))]
    pub angles: Option<u64>,
    /// Set-comparison tolerance.
    #[arg(long)]
    pub tol_set: Option<f64>,
    /// Cluster width for the top eigenvalues of A*A.
    #[arg(long)]
    pub tol_cluster: Option<f64>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: Option<u64>,
    /// Inclusive dimension range, `A..B` or a single `N`.
    #[arg(long, value_parser = parse_dims)]
    pub dims: Option<(usize, usize)>,
    /// Accept the zero matrix (W = W0 = {0}).
    #[arg(long)]
    pub allow_zero: bool,
    /// Print the version and a summary to stderr.
    #[arg(long, short)]
    pub verbose: bool,
}

fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let parse = |w: &str| {
        w.trim()
            .parse::<usize>()
            .map_err(|_| format!("`{w}` is not a dimension"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let n = parse(s)?;
            (n, n)
        }
    };
    if lo == 0 || lo > hi {
        return Err(format!("`{s}` is not a range A..B with 1 <= A <= B"));
    }
    Ok((lo, hi))
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Compute(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Compute(
                Error::ZeroMatrix | Error::InvalidSpec(_) | Error::InvalidMatrix(_),
            ) => 2,
            CliError::Compute(_) | CliError::Io { .. } | CliError::ChecksFailed(_) => 1,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

impl Options {
    pub fn tolerances(&self) -> Result<Tolerances, CliError> {
        let mut tol = Tolerances::default();
        if let Some(n) = self.angles {
            tol.n_angles = n as usize;
        }
        if let Some(x) = self.tol_set {
            tol.tau_set = x;
        }
        if self.tol_cluster.is_some() {
            tol.tau_cluster = self.tol_cluster;
        }
        tol.validate()?;
        Ok(tol)
    }

    fn matrix(&self) -> Result<CMatrix, CliError> {
        let path = self
            .input
            .as_deref()
            .ok_or_else(|| CliError::Usage("--input is required".into()))?;
        let format = match self.format.or_else(|| Format::from_path(path)) {
            Some(f) => f,
            None => {
                return Err(CliError::Usage(format!(
                    "cannot infer the format of {}; pass --format mtx|json",
                    path.display()
                )))
            }
        };
        Ok(parse_matrix(path, format)?)
    }

    fn report(&self, a: &CMatrix) -> Result<RangeReport, CliError> {
        let tol = self.tolerances()?;
        Ok(if self.allow_zero {
            full_report_allow_zero(a, &tol)?
        } else {
            full_report(a, &tol)?
        })
    }

    pub fn suite_config(&self) -> Result<SuiteConfig, CliError> {
        let mut config = match &self.input {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                let mut config: SuiteConfig = serde_json::from_str(&text)
                    .map_err(|e| CliError::Usage(format!("suite config {}: {e}", path.display())))?;
                for entry in config.entries.iter_mut().filter(|e| e.matrix.is_none()) {
                    if let Some(seed) = self.seed {
                        entry.seed = seed;
                    }
                    if let Some(t) = self.trials {
                        entry.trials = t as usize;
                    }
                    if let Some(d) = self.dims {
                        entry.dim_range = d;
                    }
                }
                config
            }
            None => SuiteConfig::standard(
                self.seed.unwrap_or(DEFAULT_SEED),
                self.trials.map_or(DEFAULT_TRIALS, |t| t as usize),
                self.dims.unwrap_or(DEFAULT_DIMS),
            ),
        };
        if self.angles.is_some() || self.tol_set.is_some() || self.tol_cluster.is_some() {
            config.tolerances = self.tolerances()?;
        }
        Ok(config)
    }
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(io_err(path))
}

fn compute(opts: &Options, out: &mut dyn Write) -> Result<(), CliError> {
    let a = opts.matrix()?;
    let report = opts.report(&a)?;
    if let Some(path) = &opts.csv {
        let file = std::fs::File::create(path).map_err(io_err(path))?;
        write_csv(&a, &report, file).map_err(|e| match e {
            CsvError::Compute(e) => CliError::Compute(e),
            CsvError::Write(e) => CliError::Io {
                path: path.display().to_string(),
                source: e.into(),
            },
        })?;
    }
    if let Some(path) = &opts.svg {
        write_file(path, svg::render(&report).as_bytes())?;
    }
    out.write_all(ReportJson::from(&report).to_json().as_bytes())
        .map_err(io_err(Path::new("<stdout>")))
}

fn plot(opts: &Options, out: &mut dyn Write) -> Result<(), CliError> {
    let a = opts.matrix()?;
    let figure = svg::render(&opts.report(&a)?);
    match &opts.svg {
        Some(path) => write_file(path, figure.as_bytes()),
        None => out
            .write_all(figure.as_bytes())
            .map_err(io_err(Path::new("<stdout>"))),
    }
}

fn verify(opts: &Options, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let config = opts.suite_config()?;
    let report = run_suite(&config)?;
    let results: Vec<&CheckResult> = report.results.iter().map(|r| &r.result).collect();
    out.write_all(json::to_string(&results).expect("results serialize").as_bytes())
        .map_err(io_err(Path::new("<stdout>")))?;
    if opts.verbose {
        for (name, s) in &report.summary {
            let _ = writeln!(
                err,
                "{name:<18} runs {:>5}  passed {:>5}  failed {:>5}  inconclusive {:>3}",
                s.runs, s.passed, s.failed, s.inconclusive
            );
        }
    }
    let failures: Vec<&CheckResult> = report.failures().map(|r| &r.result).collect();
    if failures.is_empty() {
        return Ok(());
    }
    let _ = writeln!(err, "failing checks with witnesses:");
    let _ = err.write_all(json::to_string(&failures).expect("results serialize").as_bytes());
    Err(CliError::ChecksFailed(failures.len()))
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code: 0 success, 1 check or computation failure, 2 usage or parse error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                2
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    let (opts, result) = match &cli.command {
        Command::Compute(o) => (o, compute(o, out)),
        Command::Plot(o) => (o, plot(o, out)),
        Command::Verify(o) => (o, verify(o, out, err)),
    };
    if opts.verbose {
        let _ = writeln!(err, "nrange {}", env!("CARGO_PKG_VERSION"));
    }
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
