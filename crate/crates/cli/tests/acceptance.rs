//! One pass/fail line per acceptance criterion. Exits nonzero if any fails.

use epwlab_cli::{run_suite, Status, SuiteConfig, SuiteName, SuiteReport, OUT_OF_SCOPE};

const SEED: u64 = 42;

struct Criterion {
    id: u32,
    name: &'static str,
    suite: SuiteName,
    prefixes: &'static [&'static str],
}

const CRITERIA: [Criterion; 6] = [
    Criterion {
        id: 1,
        name: "discriminant group, isotropic set, epsilon(r), overlattices",
        suite: SuiteName::Lattice,
        prefixes: &["fixture.", "discriminant.", "isotropic.", "epsilon.", "overlattice."],
    },
    Criterion { id: 2, name: "conjugated reflections of (-2)-vectors", suite: SuiteName::Lattice, prefixes: &["conto."] },
    Criterion { id: 3, name: "Mukai lattice identities", suite: SuiteName::Mukai, prefixes: &[""] },
    Criterion { id: 4, name: "sextic vs corank oracle", suite: SuiteName::EpwOracle, prefixes: &["oracle."] },
    Criterion { id: 5, name: "projective duality", suite: SuiteName::EpwDuality, prefixes: &["duality."] },
    Criterion { id: 6, name: "rank-multiplicity inequality", suite: SuiteName::EpwOracle, prefixes: &["multiplicity."] },
];

fn report_for<'a>(reports: &'a [(SuiteName, SuiteReport)], s: SuiteName) -> &'a SuiteReport {
    &reports.iter().find(|(n, _)| *n == s).expect("suite ran").1
}

fn main() {
    let cfg = SuiteConfig::with_seed(SEED);
    let reports: Vec<(SuiteName, SuiteReport)> = SuiteName::ALL
        .into_iter()
        .map(|s| (s, run_suite(s, &cfg).unwrap_or_else(|e| panic!("suite {s} errored: {e}"))))
        .collect();

    let mut failed = 0;
    for c in &CRITERIA {
        let rep = report_for(&reports, c.suite);
        let checks: Vec<_> = rep.with_prefix(c.prefixes).collect();
        let bad: Vec<&str> = checks.iter().filter(|r| r.status != Status::Pass).map(|r| r.check.as_str()).collect();
        let ok = !checks.is_empty() && bad.is_empty();
        failed += !ok as u32;
        let detail = if ok { format!("{} checks", checks.len()) } else { format!("failing: {}", bad.join(", ")) };
        println!("criterion {} {}: {} ({detail})", c.id, if ok { "PASS" } else { "FAIL" }, c.name);
    }

    let headers_ok = reports.iter().all(|(_, r)| r.out_of_scope == OUT_OF_SCOPE);
    failed += !headers_ok as u32;
    println!(
        "criterion 7 {}: out-of-scope items in every report header ({})",
        if headers_ok { "PASS" } else { "FAIL" },
        OUT_OF_SCOPE.join("; ")
    );

    println!("{} of 7 criteria passed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
