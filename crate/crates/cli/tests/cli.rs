use std::path::PathBuf;
use std::process::{Command, Output};

fn raney(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_raney")).args(args).output().expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_then_analyze() {
    let out = raney(&["gen", "boolean", "2"]);
    assert!(out.status.success());
    let path = scratch("b2.json", &stdout(&out));
    let out = raney(&["--format", "json", "analyze", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["lattice"]["size"], 4);
    assert_eq!(v["summary"]["homset_size"], 16);
    assert_eq!(v["summary"]["is_girard"], true);
    assert_eq!(v["summary"]["dualizing_count"], 2);
}

#[test]
fn not_a_lattice_exits_2() {
    let path = scratch("vee.json", r#"{"elements":["0","a","b"],"covers":[[0,1],[0,2]]}"#);
    let out = raney(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a lattice"));
}

#[test]
fn unknown_check_exits_2() {
    let out = raney(&["--checks", "no-such-check", "m5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_selected_checks_on_n5() {
    let gen = raney(&["gen", "n5"]);
    let path = scratch("n5.json", &stdout(&gen));
    let out = raney(&["--checks", "girard-cd,tight-unit", "--format", "json", "verify", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["check_id"].as_str().unwrap()).collect();
    // Canonical suite order, not command-line order.
    assert_eq!(ids, ["tight-unit", "girard-cd"]);
    assert_eq!(v["summary"]["is_girard"], false);
}

#[test]
fn strict_turns_cap_skips_into_exit_3() {
    let gen = raney(&["gen", "chain", "5"]);
    let path = scratch("c5.json", &stdout(&gen));
    let file = path.to_str().unwrap();
    let relaxed = raney(&["--max-homset", "10", "--checks", "girard-cd", "verify", file]);
    assert_eq!(relaxed.status.code(), Some(0));
    let strict = raney(&["--max-homset", "10", "--checks", "girard-cd", "--strict", "verify", file]);
    assert_eq!(strict.status.code(), Some(3));
}

#[test]
fn m5_and_quantale_files() {
    let out = raney(&["--format", "json", "m5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dualizing"], serde_json::json!(["d"]));
    assert_eq!(v["unit"], "u");

    // The two-element chain with x·y = x ∧ y.
    let q = r#"{"carrier":{"elements":["0","1"],"covers":[[0,1]]},"mult":[[0,0],[0,1]]}"#;
    let path = scratch("frame2.json", q);
    let out = raney(&["--format", "json", "verify", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["unit"], "1");
    assert_eq!(v["dualizing"], serde_json::json!(["0"]));

    let bad = scratch("bad-quantale.json", r#"{"carrier":{"elements":["0","1"],"covers":[[0,1]]},"mult":[[0,1],[1,1]]}"#);
    assert_eq!(raney(&["verify", bad.to_str().unwrap()]).status.code(), Some(2));
}
