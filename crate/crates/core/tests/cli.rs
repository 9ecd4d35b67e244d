use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gpcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpcode")).args(args).env("GPCODE_THREADS", "2").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn construct(dir: &Path, family: &str, q: &str) -> String {
    let path = dir.join(format!("{family}{q}.gpg"));
    let out = gpcode(&["construct", "--family", family, "--q", q, "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path.to_str().unwrap().to_string()
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let w2 = construct(dir.path(), "wq", "2");
    let out = gpcode(&["verify", "--in", &w2, "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["expected_counts"], serde_json::json!([15, 15]));

    let out = gpcode(&["verify", "--in", &w2, "--n", "6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!json(&out)["report"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn dual_construction_swaps_counts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dual.gpg");
    let out = gpcode(&["construct", "--family", "q5minus", "--q", "2", "--dual", "--out", path.to_str().unwrap()]);
    let v = json(&out);
    assert_eq!((v["points"].as_u64(), v["lines"].as_u64()), (Some(45), Some(27)));
}

#[test]
fn mutated_file_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let w2 = construct(dir.path(), "wq", "2");
    let text = std::fs::read_to_string(&w2).unwrap();
    let mutated: String = text
        .lines()
        .map(|l| if l.starts_with("1:") { l.rsplit_once(' ').unwrap().0.to_string() } else { l.to_string() })
        .collect::<Vec<_>>()
        .join("\n");
    let bad = dir.path().join("bad.gpg");
    std::fs::write(&bad, mutated + "\n").unwrap();
    let out = gpcode(&["verify", "--in", bad.to_str().unwrap(), "--n", "4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn code_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let w2 = construct(dir.path(), "wq", "2");
    let v = json(&gpcode(&["code", "--in", &w2, "--p", "2", "--min-weight", "--classify"]));
    assert_eq!(v["rank"], 10);
    assert_eq!(v["min_weight"], 3);
    let words = v["words"].as_array().unwrap();
    assert_eq!(words.len(), 15);
    assert!(words.iter().all(|w| w["is_line_multiple"] == true && w["trace_match"]["d"] == 1));

    assert_eq!(gpcode(&["code", "--in", &w2, "--p", "3", "--w-max", "9"]).status.code(), Some(3));
    assert_eq!(gpcode(&["code", "--in", &w2, "--p", "4"]).status.code(), Some(2));
}

#[test]
fn blocking_traces_and_perp() {
    let dir = tempfile::tempdir().unwrap();
    let w2 = construct(dir.path(), "wq", "2");
    let v = json(&gpcode(&["blocking", "--in", &w2]));
    assert_eq!(v["min_x_blocking"]["size"], 3);
    assert_eq!(v["line_blocking_bound"], 5);

    let v = json(&gpcode(&["traces", "--in", &w2, "--d", "1"]));
    assert_eq!(v["count"], 15);
    assert_eq!(gpcode(&["traces", "--in", &w2, "--d", "3"]).status.code(), Some(2));

    let v = json(&gpcode(&["perp", "--in", &w2]));
    assert_eq!(v["projective_points"], 15);
    let v = json(&gpcode(&["perp", "--in", &w2, "--variant", "literal"]));
    assert_eq!(v["projective_points"], 0);
}

#[test]
fn report_from_file_config() {
    let dir = tempfile::tempdir().unwrap();
    construct(dir.path(), "wq", "2");
    let config = dir.path().join("run.json");
    std::fs::write(&config, r#"{"geometry": {"file": "wq2.gpg", "n": 4}, "fields": [3], "checks": ["axioms", "minwt"], "output": "out.json"}"#).unwrap();
    let out = gpcode(&["report", "--config", config.to_str().unwrap(), "--out", dir.path().join("out.json").to_str().unwrap(), "--text"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[PASS]"));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("out.json")).unwrap()).unwrap();
    assert_eq!(report["status"], "ok");
    assert_eq!(report["fields"][0]["min_weight"]["weight"], 3);
    assert!(report.get("timing_ms").is_none());
}

#[test]
fn bad_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.gpg");
    assert_eq!(gpcode(&["verify", "--in", missing.to_str().unwrap(), "--n", "4"]).status.code(), Some(2));
    assert_eq!(gpcode(&["frobnicate"]).status.code(), Some(2));
    let config = dir.path().join("bad.json");
    std::fs::write(&config, r#"{"geometry": {"family": "wq", "q": 2}, "fields": [2], "unknown": 1}"#).unwrap();
    assert_eq!(gpcode(&["report", "--config", config.to_str().unwrap()]).status.code(), Some(2));
}
