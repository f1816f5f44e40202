use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aschbacher")).args(args).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_classify_verify_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let member = dir.path().join("borel.json");
    let verdict = dir.path().join("verdict.json");
    let o = run(&["construct", "--class", "1", "--n", "2", "--q", "3", "--k", "1", "--out", path(&member)]);
    assert!(o.status.success());
    let m: Value = serde_json::from_str(&std::fs::read_to_string(&member).unwrap()).unwrap();
    assert_eq!(m["expected_order"], "12");
    for key in ["tool_version", "seed", "caps"] {
        assert!(m.get(key).is_some(), "{key}");
    }

    let o = run(&["classify", "--in", path(&member), "--seed", "5", "--out", path(&verdict)]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&verdict).unwrap()).unwrap();
    assert_eq!(v["tag"], "C1");
    assert_eq!(v["seed"], 5);
    assert_eq!(v["verified"], true);

    let o = run(&["verify", "--in", path(&member), "--verdict", path(&verdict)]);
    assert!(o.status.success());
    assert_eq!(json(&o)["passed"], true);
    let o = run(&["verify", "--in", path(&member)]);
    assert!(o.status.success());
    assert_eq!(json(&o)["closure_order"], "12");
}

#[test]
fn outputs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let member = dir.path().join("q8.json");
    assert!(run(&["construct", "--class", "3", "--n", "2", "--q", "3", "--r", "2", "--out", path(&member)]).status.success());
    let a = run(&["classify", "--in", path(&member), "--seed", "9"]);
    let b = run(&["classify", "--in", path(&member), "--seed", "9"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["tag"], "C3");
    let c = run(&["construct", "--class", "6", "--q", "3", "--r", "2", "--m", "1", "--variant", "-"]);
    let d = run(&["construct", "--class", "6", "--q", "3", "--r", "2", "--m", "1", "--variant", "-"]);
    assert_eq!(c.stdout, d.stdout);
    assert_eq!(json(&c)["expected_order"], "48");
}

#[test]
fn info_and_forms() {
    let o = run(&["info", "GL(2,2)"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["order"], "6");
    assert_eq!(json(&o)["closure_order"], "6");
    let o = run(&["info", "Sp(4,2)"]);
    assert_eq!(json(&o)["order"], "720");
    let o = run(&["info", "R(r=2,m=1,-)"]);
    assert_eq!(json(&o)["order"], 8);
    let o = run(&["forms", "GO+(4,3)"]);
    let f = &json(&o)["form"];
    assert_eq!(f["subtype"], "Plus");
    assert_eq!(f["witt_index"], 2);
    let o = run(&["forms", "GO-(4,2)"]);
    assert_eq!(json(&o)["form"]["witt_index"], 1);
}

#[test]
fn invariant_forms_of_a_generator_file() {
    let dir = tempfile::tempdir().unwrap();
    let member = dir.path().join("sp.json");
    assert!(run(&["construct", "--class", "8", "--n", "4", "--q", "2", "--form", "symplectic", "--out", path(&member)]).status.success());
    let o = run(&["forms", "--in", path(&member)]);
    assert!(o.status.success());
    let spaces = &json(&o)["invariant_forms"];
    assert_eq!(spaces[0]["dimension"], 1);
    assert_eq!(spaces[0]["basis"][0]["kind"], "Symplectic");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["construct", "--class", "1", "--n", "2", "--q", "6", "--k", "1"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--class", "1", "--n", "2", "--q", "3"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--class", "2", "--n", "3", "--q", "3", "--m", "2", "--k", "2"]).status.code(), Some(2));
    assert_eq!(run(&["info", "GO(2,3)"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--in", "/nonexistent.json"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let member = dir.path().join("c2.json");
    assert!(run(&["construct", "--class", "2", "--n", "2", "--q", "3", "--m", "1", "--k", "2", "--out", path(&member)]).status.success());
    assert_eq!(run(&["classify", "--in", path(&member), "--caps", "closure=5"]).status.code(), Some(3));

    let mut m: Value = serde_json::from_str(&std::fs::read_to_string(&member).unwrap()).unwrap();
    m["expected_order"] = Value::String("9".into());
    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, m.to_string()).unwrap();
    let o = run(&["verify", "--in", path(&tampered)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["passed"], false);
}

#[test]
fn selftest_subset() {
    let o = run(&["selftest", "--only", "1,3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 2);
    assert_eq!(run(&["selftest", "--only", "11"]).status.code(), Some(2));
}
