//! End-to-end runs of the binary: worked examples, exit codes, replay
//! determinism and schema conformance of every report kind.

use serde_json::Value;
use std::collections::BTreeSet;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectral-certify")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn sizes(report: &Value) -> &Vec<Value> {
    report["minors"]["scan"]["sizes"].as_array().expect("minor sizes")
}

fn count(v: &Value) -> u64 {
    v.as_u64().expect("count")
}

#[test]
fn fig2_laplacian_has_no_vanishing_minor() {
    let r = json(&["analyze", "--fixture", "fig2", "--operator", "laplacian"]);
    assert_eq!(sizes(&r).len(), 9);
    for s in sizes(&r) {
        assert_eq!(count(&s["vanishing"]), 0, "size {}", s["m"]);
        assert_eq!(count(&s["undecided"]), 0);
    }
    assert_eq!(r["complete"], true);
}

#[test]
fn fig3_laplacian_vanishing_orbit_splits_xi_columns() {
    let r = json(&["analyze", "--fixture", "fig3", "--operator", "laplacian"]);
    let size3 = sizes(&r).iter().find(|s| s["m"] == 3).expect("size 3");
    assert_eq!(count(&size3["vanishing"]), 6);
    let cols: BTreeSet<Vec<u64>> = size3["vanishing_supports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["cols"].as_array().unwrap().iter().map(count).collect())
        .collect();
    let triples: Vec<Vec<u64>> = cols.into_iter().collect();
    assert_eq!(triples.len(), 2);
    let union: BTreeSet<u64> = triples.iter().flatten().copied().collect();
    // Column 0 is the kernel; the other six belong to the degree-6 factor.
    assert_eq!(union, (1..=6).collect());
    for s in sizes(&r).iter().filter(|s| s["m"] != 3 && s["m"] != 4) {
        assert_eq!(count(&s["vanishing"]), 0);
    }
}

#[test]
fn shift_five_has_all_minors_nonzero() {
    let r = json(&["analyze", "--fixture", "shift", "--p", "5"]);
    assert!(sizes(&r).iter().all(|s| count(&s["vanishing"]) == 0 && count(&s["undecided"]) == 0));
    let total: u64 = sizes(&r).iter().map(|s| count(&s["minors"])).sum();
    assert_eq!(total, 251);
}

#[test]
fn walk_ranks() {
    assert_eq!(json(&["walk", "--fixture", "fig1", "--x", "e1"])["rank"], 8);
    assert_eq!(json(&["walk", "--fixture", "cycle", "--size", "4", "--x", "ones"])["rank"], 1);
    let lap = json(&["walk", "--fixture", "fig2", "--operator", "laplacian", "--x", "ones"]);
    assert_eq!(lap["rank"], 1);
    assert_eq!(lap["rank_identity"], true);
}

#[test]
fn campaign_agreement_on_certified_instances() {
    let c = json(&["campaign", "--n", "5", "--samples", "50", "--entries=-10..10", "--seed", "1"]);
    let certified = count(&c["counts"]["an_certified"]);
    assert!(certified > 0);
    assert_eq!(count(&c["agreeing"]), certified);
    assert!(c["violations"].as_array().unwrap().is_empty());
    let counts = &c["counts"];
    assert_eq!(count(&counts["an_certified"]) + count(&counts["inconclusive"]) + count(&counts["smaller"]), 50);
}

#[test]
fn campaign_degenerate_zero_one_entries() {
    let c = json(&["campaign", "--n", "2", "--samples", "40", "--support", "0,1", "--seed", "3"]);
    assert!(count(&c["counts"]["inconclusive"]) + count(&c["counts"]["smaller"]) > 0);
    assert!(c["violations"].as_array().unwrap().is_empty());
}

/// Pilot run measured 25 of 25 certified with full scan agreement; frozen here.
#[test]
fn campaign_n8_pilot_threshold() {
    let c = json(&["campaign", "--n", "8", "--samples", "25", "--seed", "7"]);
    assert_eq!(count(&c["counts"]["an_certified"]), 25);
    assert_eq!(count(&c["agreeing"]), 25);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "--fixture", "path", "--size", "3"]).status.code(), Some(0));
    assert_eq!(run(&["analyze", "--fixture", "nosuch"]).status.code(), Some(3));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(3));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    let dir = std::env::temp_dir().join(format!("spectral-certify-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "2 2\n1 x\n0 1\n").unwrap();
    assert_eq!(run(&["analyze", "--matrix", bad.to_str().unwrap()]).status.code(), Some(3));
    std::fs::remove_dir_all(&dir).ok();
    let capped = Command::new(env!("CARGO_BIN_EXE_spectral-certify"))
        .args(["analyze", "--fixture", "fig1"])
        .env("SPECTRAL_CERTIFY_MAX_BITS", "64")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert_eq!(run(&["campaign", "--n", "13", "--samples", "1"]).status.code(), Some(1));
}

fn without_timings(mut v: Value) -> String {
    if let Some(obj) = v.as_object_mut() {
        obj.remove("timings");
    }
    serde_json::to_string(&v).unwrap()
}

#[test]
fn replay_is_deterministic() {
    let args = ["analyze", "--fixture", "fig1", "--probe", "random:5", "--probe", "e2"];
    assert_eq!(without_timings(json(&args)), without_timings(json(&args)));
    let campaign = ["--json", "campaign", "--n", "5", "--samples", "10", "--seed", "42"];
    let sequential: Vec<&str> = std::iter::once("--sequential").chain(campaign).collect();
    assert_eq!(run(&campaign).stdout, run(&sequential).stdout, "parallel and sequential runs must match byte for byte");
}

#[test]
fn every_report_kind_matches_the_schema() {
    let schema: Value =
        serde_json::from_str(include_str!("../../../report.schema.json")).expect("schema is valid JSON");
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let reports = [
        json(&["analyze", "--fixture", "fig3", "--operator", "laplacian", "--probe", "e1", "--probe", "ones"]),
        json(&["analyze", "--fixture", "fig1", "--probe", "1,0,-1/2,0,0,0,0,3", "--max-witnesses", "2"]),
        json(&["analyze", "--fixture", "path", "--size", "4", "--skip-minors"]),
        json(&["campaign", "--n", "3", "--samples", "6", "--support", "-1,0,1", "--weights", "1/4,1/2,1/4"]),
        json(&["walk", "--fixture", "fig2", "--operator", "laplacian", "--x", "random:9"]),
        json(&["krylov", "--fixture", "fig1", "--vertices", "1,5", "--radii", "1,1", "--columns", "1,2", "--gram", "1,0,5,1"]),
        json(&["selfcheck", "--only", "4"]),
    ];
    for report in &reports {
        let errors: Vec<String> = validator.iter_errors(report).map(|e| format!("{} at {}", e, e.instance_path)).collect();
        assert!(errors.is_empty(), "{errors:?}");
    }
    let mut broken = reports[0].clone();
    broken.as_object_mut().unwrap().remove("charpoly");
    assert!(!validator.is_valid(&broken));
}
