use clap::{Parser, Subcommand};
use epwlab_cli::config::{exit_with, finish, CliError, SuiteFlags};
use epwlab_cli::{run_suite, SuiteName};

#[derive(Parser)]
#[command(name = "epwlab", about = "Run verification suites and write a JSON report")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one suite: lattice, mukai, epw-oracle, epw-duality or all.
    Run {
        suite: String,
        #[command(flatten)]
        flags: SuiteFlags,
    },
}

fn main() {
    let Cmd::Run { suite, flags } = Cli::parse().cmd;
    exit_with((|| -> Result<i32, CliError> {
        let name: SuiteName = suite.parse()?;
        let report = run_suite(name, &flags.config()?)?;
        finish(&report, flags.out.as_deref())
    })())
}
