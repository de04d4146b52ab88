use std::path::Path;
use std::process::{Command, Output};

use epwlab_core::epw::{sample_lagrangian, CensusTable};
use epwlab_core::sampler::SeededSampler;
use epwlab_core::{Field, MultiPoly};

fn run(bin: &str, args: &[&str]) -> Output {
    let path = match bin {
        "epw" => env!("CARGO_BIN_EXE_epw"),
        "lattice" => env!("CARGO_BIN_EXE_lattice"),
        "mukai" => env!("CARGO_BIN_EXE_mukai"),
        _ => env!("CARGO_BIN_EXE_epwlab"),
    };
    Command::new(path).args(args).output().unwrap()
}

fn write_lagrangian(dir: &Path, p: u32) -> String {
    let a = sample_lagrangian(&mut SeededSampler::new(5), Field::Prime(p), 0).unwrap();
    let path = dir.join("a.json");
    std::fs::write(&path, serde_json::to_string(&a).unwrap()).unwrap();
    path.display().to_string()
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run("epwlab", &["run", "nonsense"]).status.code(), Some(2));
    assert_eq!(run("epwlab", &["run", "epw-oracle", "--field", "4"]).status.code(), Some(2));
    assert_eq!(run("epwlab", &["run", "epw-oracle", "--field", "Q"]).status.code(), Some(2));
    assert_eq!(run("epwlab", &["run", "epw-oracle", "--lagrangian", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run("epw", &["sextic", "--lagrangian", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run("lattice", &["bogus"]).status.code(), Some(2));
}

#[test]
fn check_failures_exit_1() {
    // The printed -8 coefficient does not hold, so this suite reports a failure.
    let out = run("mukai", &["verify-all"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let failing: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["check"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["reflected_pairing.coefficient_minus_8"]);
}

#[test]
fn passing_suite_exits_0_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run("lattice", &["fixtures", "--verify", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["out_of_scope"].as_array().unwrap().len(), 3);
}

#[test]
fn sextic_and_census_commands() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_lagrangian(dir.path(), 3);
    let s = dir.path().join("s.json");
    assert_eq!(run("epw", &["sextic", "--lagrangian", &a, "--chart", "2", "--out", s.to_str().unwrap()]).status.code(), Some(0));
    let poly: MultiPoly = serde_json::from_str(&std::fs::read_to_string(&s).unwrap()).unwrap();
    assert_eq!(poly.total_degree(), Some(6));

    let c = run("epw", &["census", "--lagrangian", &a, "--field", "3"]);
    assert_eq!(c.status.code(), Some(0));
    let table: CensusTable = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(table.total, 364);
    assert_eq!(table.by_corank.values().sum::<u64>(), 364);
}

#[test]
fn discriminant_command() {
    let dir = tempfile::tempdir().unwrap();
    let l = dir.path().join("l.json");
    std::fs::write(&l, r#"{"rank":2,"gram":[[2,1],[1,-2]]}"#).unwrap();
    let o = run("lattice", &["discriminant", "--lattice", l.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 5);

    std::fs::write(&l, r#"{"rank":2,"gram":[[1,0],[0,2]]}"#).unwrap();
    assert_eq!(run("lattice", &["discriminant", "--lattice", l.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn identical_flags_give_identical_reports() {
    let a = run("epwlab", &["run", "lattice", "--seed", "3"]);
    let b = run("epwlab", &["run", "lattice", "--seed", "3"]);
    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["duration_ms"] = 0.into();
        v
    };
    assert_eq!(strip(&a), strip(&b));
}
