use std::path::PathBuf;

use clap::{Parser, Subcommand};
use epwlab_cli::config::{exit_with, finish, parse_field, read_json, write_json, CliError, SuiteFlags};
use epwlab_cli::{run_suite, SuiteName};
use epwlab_core::epw::{corank_census, sextic_equation};
use epwlab_core::exterior::LagrangianSubspace;
use epwlab_core::Field;

#[derive(Parser)]
#[command(name = "epw", about = "EPW sextics of Lagrangian subspaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normalized sextic of A on one chart; the zero polynomial marks the degenerate case.
    Sextic {
        #[arg(long)]
        lagrangian: PathBuf,
        #[arg(long, default_value_t = 1)]
        chart: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Duality suite on seeded Lagrangians.
    DualCheck {
        #[command(flatten)]
        flags: SuiteFlags,
    },
    /// Corank counts over every point of P^5(F_p).
    Census {
        #[arg(long)]
        lagrangian: PathBuf,
        #[arg(long, default_value = "3")]
        field: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cmd: Cmd) -> Result<i32, CliError> {
    match cmd {
        Cmd::Sextic { lagrangian, chart, out } => {
            let a: LagrangianSubspace = read_json(&lagrangian)?;
            let s = sextic_equation(&a, chart)?;
            write_json(out.as_deref(), &s.to_poly(a.field()))?;
            Ok(0)
        }
        Cmd::DualCheck { flags } => {
            let report = run_suite(SuiteName::EpwDuality, &flags.config()?)?;
            finish(&report, flags.out.as_deref())
        }
        Cmd::Census { lagrangian, field, out } => {
            let Field::Prime(p) = parse_field(&field)? else {
                return Err(CliError::Usage("census needs a prime field".into()));
            };
            let a: LagrangianSubspace = read_json(&lagrangian)?;
            let mut table = corank_census(&a, p)?;
            table.lagrangian = Some(lagrangian.display().to_string());
            write_json(out.as_deref(), &table)?;
            Ok(0)
        }
    }
}

fn main() {
    exit_with(run(Cli::parse().cmd))
}
