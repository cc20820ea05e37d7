use std::process::{Command, Output};

use serde_json::Value;
use vnlw::harness::{ExperimentReport, CSV_HEADER, SCHEMA_VERSION};

fn vnlw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vnlw")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn thresholds_are_exact_rationals() {
    let v = json(&vnlw(&["thresholds", "--d", "1", "--k", "2"]));
    assert_eq!(v["s_scal"], "-3/2");
    assert_eq!(v["s_vis"], "-1/2");
    assert_eq!(v["s_m"], "-1/2");
}

#[test]
fn ck_plan_is_feasible_below_the_exponent_threshold() {
    let v = json(&vnlw(&["plan", "ck", "--d", "1", "--k", "2", "--s", "-0.75"]));
    assert_eq!(v["feasible"], true);
    assert_eq!(v["growth_exponent"], 0.5);
    let v = json(&vnlw(&["plan", "ck", "--d", "1", "--k", "2", "--s", "-0.25"]));
    assert_eq!(v["feasible"], false);
}

#[test]
fn xi1_single_coefficient() {
    let v = json(&vnlw(&["xi1", "--d", "1", "--k", "2", "--N", "16", "--t", "0.5", "--xi", "0"]));
    let re = v["value"]["re"].as_f64().unwrap();
    // frozen from the closed form
    assert!((re + 0.056_642_069_248_312_04).abs() < 1e-14, "{re}");
    assert_eq!(v["value"]["im"], 0.0);
}

#[test]
fn data_describe_counts() {
    let v = json(&vnlw(&["data", "describe", "--d", "1", "--k", "3", "--N", "16", "--A", "8"]));
    assert_eq!(v["support_count"], 12);
    assert_eq!(v["zero_sum_tuples"], 6);
    assert_eq!(v["sigma"].as_array().unwrap().len(), 4);
}

#[test]
fn short_inflation_writes_report_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("r.json");
    let csv_path = dir.path().join("r.csv");
    let out = vnlw(&[
        "inflate",
        "short",
        "--N",
        "64,128",
        "--json",
        json_path.to_str().unwrap(),
        "--csv",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = ExperimentReport::from_json(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(report.schema_version, SCHEMA_VERSION);
    assert!(report.verdict);
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    assert_eq!(lines.count(), report.samples.len());
}

#[test]
fn short_inflation_rejects_overlapping_boxes() {
    let out = vnlw(&["inflate", "short", "--N", "64", "--A", "1000"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error:") && err.contains("overlap"), "{err}");
}

#[test]
fn config_file_overrides_and_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.conf");
    std::fs::write(&good, "# lab defaults\nmargin = 20\nseed = 3\n").unwrap();
    let v = json(&vnlw(&["--config", good.to_str().unwrap(), "verify"]));
    assert_eq!(v["seed"], 3);
    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "bogus = 1\n").unwrap();
    let out = vnlw(&["--config", bad.to_str().unwrap(), "thresholds", "--d", "1", "--k", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown key"));
}

#[test]
fn bad_arguments_fail_cleanly() {
    assert!(!vnlw(&["thresholds", "--d", "1", "--k", "1"]).status.success());
    assert!(!vnlw(&["xi1", "--d", "1", "--k", "2", "--N", "16", "--t", "-1"]).status.success());
}
