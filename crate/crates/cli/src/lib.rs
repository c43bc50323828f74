//! Configuration-driven front end for the `koenigs` crate.
//!
//! The binary `koenigs` has four subcommands (`spectrum`, `verify`,
//! `wavefunction`, `green-scan`). Each reads one TOML file and writes CSV,
//! JSON or a plain-text report. Output is deterministic: the same config
//! gives byte-identical files.
//!
//! Exit codes: 0 success, 2 invalid configuration or arguments, 3 solver
//! failure, 4 verification failure.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod config;
pub mod output;

pub use config::RunConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError { code: EXIT_CONFIG, message: message.into() }
    }

    pub fn solver(message: impl Into<String>) -> Self {
        CliError { code: EXIT_SOLVER, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<koenigs::Error> for CliError {
    fn from(e: koenigs::Error) -> Self {
        CliError::solver(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "koenigs", version, about = "Bound states and Green functions on the Koenigs spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy levels of every quantum-number pair up to a bound.
    Spectrum {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 3)]
        qn_bound: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-checks of the spectrum and a list of known formula discrepancies.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 2)]
        qn_bound: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A normalized bound state sampled on a quadrature grid.
    Wavefunction {
        #[arg(long)]
        config: PathBuf,
        /// Index into the energy-ordered spectrum, from 0.
        #[arg(long)]
        level: usize,
        /// Nodes per axis, `NxM` (radial × angular or x × y).
        #[arg(long, default_value = "64x64")]
        grid: String,
        #[arg(long, default_value_t = 3)]
        qn_bound: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The Green function along an energy line, with its poles.
    GreenScan {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        emin: f64,
        #[arg(long, allow_hyphen_values = true)]
        emax: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[arg(long, default_value_t = 3)]
        qn_bound: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::config(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| CliError::config(e.to_string()))
        }
    }
}

/// Runs one subcommand; returns the exit code.
pub fn execute(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Spectrum { config, qn_bound, format, out } => {
            let cfg = RunConfig::load(&config)?;
            let text = commands::spectrum(&cfg, qn_bound, format)?;
            emit(out.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::Verify { config, qn_bound, out } => {
            // verify reports validation failures instead of refusing the file
            let cfg = RunConfig::load_unchecked(&config)?;
            let report = commands::verify(&cfg, qn_bound)?;
            emit(out.as_deref(), &report.render())?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY })
        }
        Command::Wavefunction { config, level, grid, qn_bound, out } => {
            let cfg = RunConfig::load(&config)?;
            let (n1, n2) = commands::parse_grid(&grid)?;
            let text = commands::wavefunction(&cfg, qn_bound, level, n1, n2)?;
            emit(out.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::GreenScan { config, emin, emax, points, qn_bound, out } => {
            let cfg = RunConfig::load(&config)?;
            let scan = commands::green_scan(&cfg, qn_bound, emin, emax, points)?;
            emit(out.as_deref(), &scan.csv)?;
            if out.is_some() {
                print!("{}", scan.summary);
            }
            Ok(EXIT_OK)
        }
    }
}

/// Parses `argv` (program name first) and runs it, printing diagnostics to
/// stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}
