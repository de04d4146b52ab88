use clap::{Parser, Subcommand};
use epwlab_cli::config::{exit_with, finish, SuiteFlags};
use epwlab_cli::{run_suite, SuiteName};

#[derive(Parser)]
#[command(name = "mukai", about = "Mukai lattice identities")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every identity check and emit the report.
    VerifyAll {
        #[command(flatten)]
        flags: SuiteFlags,
    },
}

fn main() {
    let Cmd::VerifyAll { flags } = Cli::parse().cmd;
    exit_with(
        flags
            .config()
            .and_then(|cfg| run_suite(SuiteName::Mukai, &cfg))
            .and_then(|r| finish(&r, flags.out.as_deref())),
    )
}
