use std::path::PathBuf;

use clap::{Parser, Subcommand};
use epwlab_cli::config::{exit_with, finish, read_json, write_json, CliError, SuiteConfig};
use epwlab_cli::suites::lattice::{conto, discriminant_table, fixtures};
use epwlab_cli::SuiteReport;
use epwlab_core::lattice::{EvenLattice, LatticeFixture};

#[derive(Parser)]
#[command(name = "lattice", about = "Even lattices, discriminant forms and the fixture checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Discriminant group, q and b tables, and isotropic elements.
    Discriminant {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Conjugated-reflection checks on seeded (-2)-vectors.
    Conto {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fixture construction; with --verify, run the fixture identity checks.
    Fixtures {
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cmd: Cmd) -> Result<i32, CliError> {
    match cmd {
        Cmd::Discriminant { lattice, out } => {
            let l: EvenLattice = read_json(&lattice)?;
            write_json(out.as_deref(), &discriminant_table(&l)?)?;
            Ok(0)
        }
        Cmd::Conto { samples, bound, seed, out } => {
            let mut rep = SuiteReport::new("lattice-conto", seed, "Q");
            conto(&LatticeFixture::new(), seed, samples, bound, &mut rep)?;
            finish(&rep, out.as_deref())
        }
        Cmd::Fixtures { verify, out } => {
            let fx = LatticeFixture::new();
            if !verify {
                write_json(out.as_deref(), &[&fx.lambda_tilde, &fx.lambda, &fx.l])?;
                return Ok(0);
            }
            let cfg = SuiteConfig::default();
            let mut rep = SuiteReport::new("lattice-fixtures", cfg.seed, "Q");
            fixtures(&fx, &mut rep);
            finish(&rep, out.as_deref())
        }
    }
}

fn main() {
    exit_with(run(Cli::parse().cmd))
}
