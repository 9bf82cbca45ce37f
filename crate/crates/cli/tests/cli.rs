use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multiutil"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), value)
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn check_chain() {
    let (code, v) = run_json(&["check", &path("chain.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["weak"]["complete"], true);
    assert_eq!(v["weak"]["transitive"], true);
    assert_eq!(v["topology"]["is_closed"], true);
}

#[test]
fn check_under_sierpinski_topology() {
    let (code, v) = run_json(&[
        "check",
        &path("chain.json"),
        "--topology",
        &path("sierpinski.json"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["topology"]["is_closed"], false);
}

#[test]
fn embed_single_pair() {
    let (code, v) = run_json(&["embed", &path("one_pair.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["k"], 2);
    assert_eq!(v["verified"], true);
    assert_eq!(v["embedding"]["semantics"], "existential");
    assert_eq!(v["embedding"]["columns"].as_object().unwrap().len(), 2);
}

#[test]
fn dimension_of_standard_example() {
    let (code, v) = run_json(&["dimension", &path("s3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["dimension"], 3);
    assert_eq!(v["open_dimension"], 3);
}

#[test]
fn dimension_budget_exceeded() {
    let out = run(&["dimension", &path("s3.json"), "--max-k", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn realize_and_pareto_verify() {
    let (code, v) = run_json(&["realize", &path("s3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["verified"], true);
    let (code, v) = run_json(&["pareto", &path("s3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["verified"], true);
    assert_eq!(v["decomposition"], true);
}

#[test]
fn hasse_points_and_edges() {
    let (code, v) = run_json(&["hasse", &path("chain.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["points"].as_object().unwrap().len(), 3);
    assert_eq!(v["edges"], serde_json::json!([["a", "b"], ["b", "c"]]));
}

#[test]
fn semiorder_report_and_csv() {
    let csv = std::env::temp_dir().join(format!("multiutil-semiorder-{}.csv", std::process::id()));
    let csv_arg = csv.to_string_lossy().into_owned();
    let (code, v) = run_json(&["semiorder", "--pair-step", "0.25", "--csv", &csv_arg]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["failed"], 0);
    let rows = std::fs::read_to_string(&csv).unwrap();
    assert!(rows.starts_with("x,y,in_p,witness_alpha,margin\n"));
    assert_eq!(rows.lines().count(), 1 + 25 * 25);
    let _ = std::fs::remove_file(csv);
}

#[test]
fn probe_identity_family() {
    let (code, v) = run_json(&["probe", &path("probe_identity.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["violation"]["failed_side"], "weak_intersection");
}

#[test]
fn malformed_json_names_the_field() {
    let out = run(&["check", &path("bad_pairs.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("pairs[1]"));

    let out = run(&["embed", &path("unknown_element.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("pairs[0]"));
}

#[test]
fn precondition_failure_is_a_validation_error() {
    // Pareto ignores the topology; the chain is not closed under it
    let out = run(&[
        "pareto",
        &path("one_pair.json"),
        "--topology",
        &path("sierpinski.json"),
    ]);
    assert!(out.status.success());
    let out = run(&[
        "embed",
        &path("chain.json"),
        "--topology",
        &path("sierpinski.json"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("closed"));
}

#[test]
fn no_continuous_embedding_is_a_validation_error() {
    // every continuous real map on this space is constant
    let out = run(&[
        "embed",
        &path("one_pair.json"),
        "--topology",
        &path("glued.json"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no continuous embedding"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["embed", "one_pair.json"],
        vec!["realize", "s3.json"],
        vec!["pareto", "s3.json"],
        vec!["hasse", "one_pair.json"],
    ] {
        let full = [args[0].to_owned(), path(args[1])];
        let full: Vec<&str> = full.iter().map(String::as_str).collect();
        let first = run(&full).stdout;
        let second = run(&full).stdout;
        assert!(!first.is_empty());
        assert_eq!(first, second, "{args:?}");
    }
}

#[test]
fn compact_output_is_one_line() {
    let out = run(&["--output", "compact", "dimension", &path("s3.json")]);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout)
            .trim_end()
            .lines()
            .count(),
        1
    );
}
