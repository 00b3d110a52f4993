use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const NULL_CORRELATION: &str = r#"{"schema":"net/v1","n":1,"ambient":4,"blocks":{"12":[["1"]],"13":[["0"]],"14":[["0"]],"23":[["0"]],"24":[["0"]],"34":[["1"]]}}"#;

const ASYMMETRIC_C: &str = r#"{"schema":"octuple/v1","n":2,
  "A1":[["1","0"],["0","2"]],"A2":[["0","0"],["0","0"]],
  "B1":[["0","0"],["0","0"]],"B2":[["0","1"],["1","0"]],
  "a1":["1","0"],"a2":["0","1"],"b1":["0","1"],"b2":["1","0"]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monadforge")).args(args).env_remove("MONADFORGE_PRIME").output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn dims_prints_five_rows() {
    let out = run(&["dims", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for (i, r) in rows.iter().enumerate() {
        let n = i as i64 + 1;
        assert_eq!(r["dimS"], 3 * n * (n + 1));
        assert_eq!(r["eqCount"], 2 * n * n - 5 * n + 3);
        assert_eq!(r["lowerBound"], n * n + 8 * n - 3);
        assert_eq!(r["wDim"], 2 * n + 2);
    }
}

#[test]
fn null_correlation_verifies_exactly() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "null_correlation.json", NULL_CORRELATION);
    let out = run(&["verify", "net", s(&file), "--mode", "exact"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out);
    let entries = report["entries"].as_array().unwrap();
    assert!(entries.iter().all(|e| e["verdict"] == "PASS"));
    assert_eq!(entries[1]["certificate"]["exponents"], serde_json::json!([1, 1, 1, 1]));
}

#[test]
fn fast_mode_exits_with_blocker_code() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "nc.json", NULL_CORRELATION);
    assert_eq!(run(&["verify", "net", s(&file), "--mode", "fast"]).status.code(), Some(2));
}

#[test]
fn asymmetric_octuple_fails_closed_condition() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "bad.json", ASYMMETRIC_C);
    let out = run(&["verify", "octuple", s(&file)]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    let closed = report["entries"].as_array().unwrap().iter().find(|e| e["label"] == "(i)_Γ").unwrap();
    assert_eq!(closed["verdict"], "FAIL");
    assert!(closed["detail"].as_str().unwrap().contains("C ≠ Cᵀ"));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "broken.json", r#"{"schema":"net/v1","n":1,"ambient":4,"blocks":{"12":[["1"]],"13":[["0"]],"14":[["0"]],"23":[["q"]],"24":[["0"]],"34":[["1"]]}}"#);
    let out = run(&["verify", "net", s(&file)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("blocks.23[0][0]"));
    let truncated = write(&dir, "truncated.json", "{\"schema\": \"net/v1\",\n");
    let out = run(&["verify", "net", s(&truncated)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
    assert_eq!(run(&["verify", "octuple", s(&dir.path().join("missing.json"))]).status.code(), Some(3));
    assert_eq!(run(&["dims"]).status.code(), Some(3));
    assert_eq!(run(&["verify", "gamma", s(&file)]).status.code(), Some(3));
}

#[test]
fn cohomology_and_restriction_round_trip() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "nc.json", NULL_CORRELATION);
    let out = run(&["cohomology", s(&file), "--twists", "-2..0"]);
    assert_eq!(out.status.code(), Some(0));
    let t = json(&out);
    assert_eq!(t["h"][1], serde_json::json!([0, 1, 0]));
    let plane = dir.path().join("plane.json");
    assert_eq!(run(&["restrict", s(&file), "--out", s(&plane)]).status.code(), Some(0));
    let restricted: Value = serde_json::from_str(&std::fs::read_to_string(&plane).unwrap()).unwrap();
    assert_eq!(restricted["ambient"], 3);
    assert!(matches!(run(&["verify", "plane", s(&plane)]).status.code(), Some(0..=2)));
}

#[test]
fn split_line_on_null_correlation() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "nc.json", NULL_CORRELATION);
    let out = run(&["split-line", s(&file), "--p1", "1,0,0,0", "--p2", "0,0,1,-1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["d"], 1);
    let out = run(&["split-line", s(&file), "--p1", "1,0,0,0", "--p2", "0,0,1,0"]);
    assert_eq!(json(&out)["d"], 1);
}

#[test]
fn search_hit_flows_through_fiber_and_orbit() {
    let dir = TempDir::new().unwrap();
    let found = dir.path().join("search.json");
    let out = run(&["search", "--n", "2", "--seed", "1", "--trials", "4", "--out", s(&found)]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&found).unwrap();
    let again = dir.path().join("again.json");
    run(&["search", "--n", "2", "--seed", "1", "--trials", "4", "--sequential", "--out", s(&again)]);
    assert_eq!(std::fs::read_to_string(&again).unwrap(), text);

    let outcome: Value = serde_json::from_str(&text).unwrap();
    let hit = &outcome["hits"][0]["octuple"];
    let file = write(&dir, "hit.json", &hit.to_string());
    assert_eq!(run(&["verify", "octuple", s(&file)]).status.code(), Some(0));
    let fiber = run(&["fiber", s(&file), "--samples", "2"]);
    assert_eq!(fiber.status.code(), Some(0));
    assert_eq!(json(&fiber)["source_member"], true);
    assert_eq!(run(&["orbit-test", s(&file), "--seed", "3", "--samples", "1"]).status.code(), Some(0));
}

#[test]
fn prime_override_from_environment() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "nc.json", NULL_CORRELATION);
    let out = Command::new(env!("CARGO_BIN_EXE_monadforge")).args(["verify", "net", s(&file), "--mode", "fast"]).env("MONADFORGE_PRIME", "12").output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_monadforge")).args(["verify", "net", s(&file), "--mode", "fast"]).env("MONADFORGE_PRIME", "1000003").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
