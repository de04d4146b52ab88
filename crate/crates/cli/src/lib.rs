//! Suite runners, JSON reports and shared plumbing for the `epw`, `lattice`,
//! `mukai` and `epwlab` binaries.

pub mod config;
pub mod report;
pub mod suites;

pub use config::{CliError, SuiteConfig, SuiteName};
pub use report::{CheckRecord, Status, SuiteReport, OUT_OF_SCOPE};
pub use suites::run_suite;
