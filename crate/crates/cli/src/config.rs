use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use epwlab_core::exterior::LagrangianSubspace;
use epwlab_core::Field;
use serde::de::DeserializeOwned;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {reason}")]
    Input { path: String, reason: String },
    #[error("cannot write {path}: {reason}")]
    Output { path: String, reason: String },
    #[error(transparent)]
    Core(#[from] epwlab_core::Error),
}

impl CliError {
    /// 2 for usage and input errors; check failures use 1 and are not errors.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Lattice,
    Mukai,
    EpwOracle,
    EpwDuality,
    All,
}

impl SuiteName {
    pub const ALL: [SuiteName; 4] = [SuiteName::Lattice, SuiteName::Mukai, SuiteName::EpwOracle, SuiteName::EpwDuality];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Lattice => "lattice",
            SuiteName::Mukai => "mukai",
            SuiteName::EpwOracle => "epw-oracle",
            SuiteName::EpwDuality => "epw-duality",
            SuiteName::All => "all",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = CliError;

    fn from_str(s: &str) -> Result<SuiteName, CliError> {
        Ok(match s {
            "lattice" => SuiteName::Lattice,
            "mukai" => SuiteName::Mukai,
            "epw-oracle" => SuiteName::EpwOracle,
            "epw-duality" => SuiteName::EpwDuality,
            "all" => SuiteName::All,
            _ => return Err(CliError::Usage(format!("unknown suite {s:?}"))),
        })
    }
}

/// Suite parameters; `None` means the suite default.
#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub field: Option<Field>,
    pub seed: u64,
    pub samples: Option<usize>,
    pub bound: Option<i64>,
    pub lagrangian: Option<LagrangianSubspace>,
    pub chart: Option<usize>,
}

impl SuiteConfig {
    pub fn with_seed(seed: u64) -> SuiteConfig {
        SuiteConfig { seed, ..SuiteConfig::default() }
    }
}

pub fn parse_field(s: &str) -> Result<Field, CliError> {
    s.parse::<Field>().map_err(|e| CliError::Usage(e.to_string()))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let err = |reason: String| CliError::Input { path: path.display().to_string(), reason };
    let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| err(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable value")
}

/// Writes JSON to `path`, or to stdout when there is no path.
pub fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), CliError> {
    let text = to_json(value);
    match path {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| CliError::Output {
            path: p.display().to_string(),
            reason: e.to_string(),
        }),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// Flags shared by every suite-running command.
#[derive(Clone, Debug, Default, clap::Args)]
pub struct SuiteFlags {
    /// `Q` or an odd prime.
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub bound: Option<i64>,
    /// Lagrangian subspace JSON.
    #[arg(long)]
    pub lagrangian: Option<PathBuf>,
    #[arg(long)]
    pub chart: Option<usize>,
    /// Report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl SuiteFlags {
    pub fn config(&self) -> Result<SuiteConfig, CliError> {
        if let Some(k) = self.chart {
            if !(1..=6).contains(&k) {
                return Err(CliError::Usage(format!("chart must be in 1..=6, got {k}")));
            }
        }
        Ok(SuiteConfig {
            field: self.field.as_deref().map(parse_field).transpose()?,
            seed: self.seed,
            samples: self.samples,
            bound: self.bound,
            lagrangian: self.lagrangian.as_deref().map(read_json).transpose()?,
            chart: self.chart,
        })
    }
}

/// Writes the report, prints the summary to stderr and returns the exit code.
pub fn finish(report: &crate::report::SuiteReport, out: Option<&Path>) -> Result<i32, CliError> {
    write_json(out, report)?;
    for line in report.summary_lines() {
        eprintln!("{line}");
    }
    Ok(if report.passed() { 0 } else { 1 })
}

/// Maps a command result onto the process exit code.
pub fn exit_with(result: Result<i32, CliError>) -> ! {
    match result {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code())
        }
    }
}
