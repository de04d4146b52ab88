use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Statements this tool does not attempt; every report lists them.
pub const OUT_OF_SCOPE: [&str; 3] = [
    "degree 40 of the singular surface of Y_A (only corank-2 points over small fields are counted)",
    "multiplicity 3 of the dual sextic at the distinguished point (needs A built from K3 data)",
    "all period-map statements (transcendental)",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    /// The identity or property being checked.
    pub statement: String,
    pub status: Status,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub field: String,
    pub out_of_scope: Vec<String>,
    pub checks: Vec<CheckRecord>,
    /// Wall clock; the only field that varies between identical runs.
    pub duration_ms: u64,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64, field: &str) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            seed,
            field: field.to_string(),
            out_of_scope: OUT_OF_SCOPE.iter().map(|s| s.to_string()).collect(),
            checks: Vec::new(),
            duration_ms: 0,
        }
    }

    pub fn record(&mut self, check: &str, statement: &str, ok: bool, witness: Value) {
        self.checks.push(CheckRecord {
            check: check.to_string(),
            statement: statement.to_string(),
            status: Status::from_bool(ok),
            witness,
        });
    }

    pub fn skip(&mut self, check: &str, statement: &str, reason: &str) {
        self.checks.push(CheckRecord {
            check: check.to_string(),
            statement: statement.to_string(),
            status: Status::Skipped,
            witness: Value::String(reason.to_string()),
        });
    }

    /// Records whether `elapsed` is within `budget`. The witness holds only
    /// the budget so reports stay comparable across runs.
    pub fn runtime(&mut self, check: &str, elapsed: Duration, budget: Duration) {
        self.record(
            check,
            &format!("runtime below {} ms", budget.as_millis()),
            elapsed < budget,
            serde_json::json!({ "budget_ms": budget.as_millis() as u64 }),
        );
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn find(&self, check: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.check == check)
    }

    /// Checks whose names start with any of the prefixes.
    pub fn with_prefix<'a>(&'a self, prefixes: &'a [&'a str]) -> impl Iterator<Item = &'a CheckRecord> {
        self.checks
            .iter()
            .filter(move |c| prefixes.iter().any(|p| c.check.starts_with(p)))
    }

    /// Appends another report's checks, prefixing their names with its suite.
    pub fn absorb(&mut self, other: SuiteReport) {
        for mut c in other.checks {
            c.check = format!("{}/{}", other.suite, c.check);
            self.checks.push(c);
        }
        self.duration_ms += other.duration_ms;
    }

    /// JSON with the timing field zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> SuiteReport {
        SuiteReport { duration_ms: 0, ..self.clone() }
    }

    pub fn summary_lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                let s = match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Skipped => "skip",
                };
                format!("{s:4}  {}", c.check)
            })
            .collect()
    }
}
