//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 configuration
//! or usage error (including unusable output paths), 3 numerical failure.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::schrodinger::Dimension;
use config::{Command, OutputFormat, RunConfig};
use output::write_atomic;
use verify::Status;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "RADIALPROP_THREADS";

#[derive(Debug)]
pub enum Failure {
    Config(String),
    Numerical(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Config(_) => EXIT_CONFIG,
            Failure::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Config(m) => write!(f, "config error: {m}"),
            Failure::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::InvalidInput(_) | Error::GridTooSmall { .. } | Error::InsufficientSamples { .. } => {
                Failure::Config(e.to_string())
            }
            Error::SubdivisionLimit { .. }
            | Error::NoSignChange
            | Error::OscillationBudget { .. }
            | Error::OnLightCone
            | Error::TooCloseToFront { .. } => Failure::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Config(format!("cannot write output: {e}"))
    }
}

#[derive(Parser, Debug)]
#[command(name = "radialprop", version, about = "Radial free-particle propagators and retarded wave Green's functions")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Evolve a ring packet and write states plus spreading diagnostics.
    Evolve(Overrides),
    /// Tabulate the radial propagator kernels.
    Green(Overrides),
    /// Tabulate the retarded Green's functions of the wave equation.
    Dalembert(Overrides),
    /// Run the identity and oracle checks and write a JSON report.
    Verify(Overrides),
}

#[derive(Args, Debug)]
struct Overrides {
    /// TOML configuration file; defaults apply without one.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_parser = parse_dimension)]
    dim: Option<Dimension>,
    /// Comma-separated times, e.g. 0.25,0.5.
    #[arg(long = "t", value_delimiter = ',', allow_hyphen_values = true)]
    t: Option<Vec<f64>>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Comma-separated check names (verify only).
    #[arg(long, value_delimiter = ',')]
    only: Option<Vec<String>>,
}

fn parse_dimension(s: &str) -> Result<Dimension, String> {
    match s {
        "2" => Ok(Dimension::Two),
        "3" => Ok(Dimension::Three),
        _ => Err(format!("dimension must be 2 or 3, got {s}")),
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code. Diagnostics go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("radialprop: {f}");
            f.exit_code()
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Failure::Config(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    // A pool may already exist when called repeatedly in one process.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn load(command: Command, o: &Overrides) -> Result<RunConfig, Failure> {
    let mut cfg = match &o.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))?;
            RunConfig::from_toml(&text)?
        }
        None => RunConfig::default(),
    };
    match cfg.command {
        Some(c) if c != command => {
            return Err(Failure::Config(format!(
                "config is for command {c:?} but {command:?} was requested"
            )))
        }
        _ => cfg.command = Some(command),
    }
    if let Some(d) = o.dim {
        cfg.dimension = d;
    }
    if let Some(t) = &o.t {
        cfg.times = t.clone();
    }
    if let Some(out) = &o.out {
        cfg.output_path = out.clone();
    }
    if let Some(f) = o.format {
        cfg.format = f;
    }
    if o.only.is_some() && command != Command::Verify {
        return Err(Failure::Config("--only applies to verify".into()));
    }
    Ok(cfg)
}

fn execute(cli: Cli) -> Result<i32, Failure> {
    configure_threads()?;
    let (command, o) = match &cli.command {
        Sub::Evolve(o) => (Command::Evolve, o),
        Sub::Green(o) => (Command::Green, o),
        Sub::Dalembert(o) => (Command::Dalembert, o),
        Sub::Verify(o) => (Command::Verify, o),
    };
    let cfg = load(command, o)?;
    let written = match command {
        Command::Evolve => commands::run_evolve(&cfg)?,
        Command::Green => commands::run_green(&cfg)?,
        Command::Dalembert => commands::run_dalembert(&cfg)?,
        Command::Verify => return run_verify(&cfg, o.only.as_deref()),
    };
    for path in written {
        println!("{}", path.display());
    }
    Ok(EXIT_OK)
}

/// Runs the selected checks, prints one line per check and writes
/// `verify_report.json`. Exit 1 iff any check fails.
pub fn run_verify(cfg: &RunConfig, only: Option<&[String]>) -> Result<i32, Failure> {
    if let Some(t) = cfg.verify.tolerance {
        if !(t >= 0.0) {
            return Err(Failure::Config(format!("verify.tolerance must be >= 0, got {t}")));
        }
    }
    let all = verify::checks();
    if let Some(names) = only {
        if let Some(bad) = names.iter().find(|n| !all.iter().any(|c| c.name == n.as_str())) {
            return Err(Failure::Config(format!("unknown check {bad:?}")));
        }
    }
    let selected: Vec<_> = all
        .into_iter()
        .filter(|c| only.is_none_or(|names| names.iter().any(|n| n == c.name)))
        .collect();

    let mut report = Vec::with_capacity(selected.len());
    for check in &selected {
        let outcome = check.run(cfg.verify.tolerance);
        let label = match outcome.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        println!(
            "{label} {} max_error={:e} tolerance={:e}",
            outcome.check_name, outcome.max_error, outcome.tolerance
        );
        report.push(outcome);
    }
    let mut json = serde_json::to_string_pretty(&report).expect("report serialises");
    json.push('\n');
    write_atomic(&cfg.output_path.join("verify_report.json"), json.as_bytes())?;
    Ok(if report.iter().all(|o| o.status == Status::Pass) {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}
