pub mod epw;
pub mod lattice;
pub mod mukai;

use std::time::Instant;

use crate::config::{CliError, SuiteConfig, SuiteName};
use crate::report::SuiteReport;

/// Runs one suite, or all four in a fixed order for `All`.
pub fn run_suite(name: SuiteName, cfg: &SuiteConfig) -> Result<SuiteReport, CliError> {
    let t = Instant::now();
    let mut rep = match name {
        SuiteName::Lattice => lattice::run(cfg)?,
        SuiteName::Mukai => mukai::run(cfg)?,
        SuiteName::EpwOracle => epw::run_oracle(cfg)?,
        SuiteName::EpwDuality => epw::run_duality(cfg)?,
        SuiteName::All => {
            let field = cfg.field.map_or("default".to_string(), |f| f.to_string());
            let mut all = SuiteReport::new("all", cfg.seed, &field);
            for s in SuiteName::ALL {
                all.absorb(run_suite(s, &suite_config(s, cfg))?);
            }
            all
        }
    };
    rep.duration_ms = t.elapsed().as_millis() as u64;
    Ok(rep)
}

/// Under `all`, field/samples/bound mean different things per suite, so each suite keeps
/// its defaults; the seed, chart and an explicit Lagrangian pass through. A prime field
/// given to `all` goes to the EPW suites.
fn suite_config(s: SuiteName, cfg: &SuiteConfig) -> SuiteConfig {
    let mut c = cfg.clone();
    c.samples = None;
    c.bound = None;
    if matches!(s, SuiteName::Lattice | SuiteName::Mukai) {
        c.field = None;
    }
    c
}
