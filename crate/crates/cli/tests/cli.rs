use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperwagner"))
        .args(args)
        .output()
        .expect("binary runs");
    let code = out.status.code().expect("exit code");
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, report)
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const TETRA: &str = r#"{"d":3,"n":4,"facets":[[0,1,2],[0,1,3],[0,2,3],[1,2,3]]}"#;

fn petersen_json() -> String {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push(format!("[{},{}]", i, (i + 1) % 5));
        e.push(format!("[{},{}]", i, 5 + i));
        let (a, b) = (5 + i, 5 + (i + 2) % 5);
        e.push(format!("[{},{}]", a.min(b), a.max(b)));
    }
    format!(r#"{{"d":2,"n":10,"facets":[{}]}}"#, e.join(","))
}

#[test]
fn report_shape() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.json", TETRA);
    let (code, r) = run(&["validate", s(&t)]);
    assert_eq!(code, 0);
    assert_eq!(r["tool"], "hyperwagner");
    assert_eq!(r["command"], "validate");
    assert_eq!(r["status"], "valid");
    assert!(r["input_digest"].as_str().unwrap().starts_with("sha256:"));
    assert_eq!(r["result"]["facets"], 4);
    assert_eq!(r["result"]["closed"], true);
}

#[test]
fn homology_of_the_projective_plane() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("rp2.json");
    let (code, _) = run(&["generate", "rp2", "--out", s(&out)]);
    assert_eq!(code, 0);
    let (code, r) = run(&["homology", s(&out)]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["reduced_betti"], serde_json::json!([0, 0, 0]));
    assert_eq!(r["result"]["torsion"][1], serde_json::json!([2]));
    assert_eq!(r["result"]["general"]["verdict"], "FAIL");
}

#[test]
fn witnesses_round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "petersen.json", &petersen_json());
    let (code, r) = run(&["minor", s(&p), "--target", "complete"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "found");
    let w = write(&dir, "report.json", &r.to_string());
    let (code, v) = run(&["verify-witness", s(&p), "--witness", s(&w)]);
    assert_eq!((code, &v["status"]), (0, &Value::from("valid")));

    let mut tampered = r.clone();
    tampered["result"]["witness"]["witness"]["branch_sets"][0] = serde_json::json!([]);
    let w = write(&dir, "bad.json", &tampered.to_string());
    let (code, v) = run(&["verify-witness", s(&p), "--witness", s(&w)]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["valid"], false);
}

#[test]
fn embeddability_and_budgets() {
    let dir = TempDir::new().unwrap();
    let k6 = dir.path().join("k6.json");
    run(&[
        "generate",
        "complete",
        "--n",
        "6",
        "--i",
        "3",
        "--out",
        s(&k6),
    ]);
    let (code, r) = run(&["embeddable", s(&k6)]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "non-embeddable");
    assert_eq!(r["result"]["which"], "complete");

    let t = write(&dir, "t.json", TETRA);
    let (code, r) = run(&["embeddable", s(&t)]);
    assert_eq!((code, r["status"].as_str()), (0, Some("embeddable")));

    let k7 = dir.path().join("k7.json");
    run(&[
        "generate",
        "complete",
        "--n",
        "7",
        "--i",
        "3",
        "--out",
        s(&k7),
    ]);
    let (code, r) = run(&[
        "minor",
        s(&k7),
        "--target",
        "complete",
        "--budget-nodes",
        "1",
    ]);
    assert_eq!(code, 3);
    assert_eq!(r["status"], "budget-exhausted");
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"d":3,"n":4,"facets":[[0,0,1]]}"#);
    let (code, r) = run(&["validate", s(&bad)]);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "error");
    assert!(
        r["result"]["error"]
            .as_str()
            .unwrap()
            .contains("repeats a vertex"),
        "{r}"
    );

    let (code, _) = run(&["validate", s(&dir.path().join("missing.json"))]);
    assert_eq!(code, 2);
    let (code, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);
    let t = write(&dir, "t.json", TETRA);
    let (code, _) = run(&["decompose", s(&t), "--cut", "0,1,2"]);
    assert_eq!(code, 2);
}

#[test]
fn seeded_generation_is_reproducible() {
    let args = [
        "generate",
        "procedure-x",
        "--d",
        "3",
        "--steps",
        "10",
        "--seed",
        "7",
    ];
    let (code, a) = run(&args);
    let (_, b) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    assert_eq!(a["seed"], 7);
    assert!(a["result"]["trace"]["steps"].as_array().unwrap().len() <= 10);
}
