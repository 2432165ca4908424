use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lazard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lazard"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn classify_examples() {
    let out = lazard(&["--p", "5", "classify", "0,0,5,0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "nilpotent s=1");

    assert_eq!(stdout(&lazard(&["classify", "0,0,0,0"])).trim(), "zero");

    let out = lazard(&["--p", "5", "--N", "3", "classify", "1,1,0,1"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("tracecore"), "{}", stdout(&out));
}

#[test]
fn classify_reads_a_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(&path, r#"{"rows": 2, "entries": [0, 0, 5, 0]}"#).unwrap();
    let out = lazard(&["classify", path.to_str().unwrap()]);
    assert_eq!(stdout(&out).trim(), "nilpotent s=1");
}

#[test]
fn verify_fixtures() {
    for name in ["dim-p", "p3-pair", "two-dim"] {
        let out = lazard(&["verify", name]);
        assert!(out.status.success(), "{name}: {}", stdout(&out));
        assert!(stdout(&out).trim_end().ends_with("PASS"));
    }
}

#[test]
fn construct_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g4.json");
    let out = lazard(&["construct", "G4", "--s", "0", "--r", "1", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v = read_json(&path);
    assert_eq!(v["name"], "G4(0,1)");
    assert_eq!(v["lattice"]["p"], 5);
    assert_eq!(v["lattice"]["labels"], serde_json::json!(["x", "y1", "y2"]));
    assert_eq!(v["group"]["fiber_dim"], 2);
    assert_eq!(v["action"]["entries"], serde_json::json!([0, 5, 1, 0]));
}

#[test]
fn every_manifest_entry_constructs() {
    let out = lazard(&["manifest", "--json"]);
    let entries: Value = serde_json::from_slice(&out.stdout).unwrap();
    for e in entries.as_array().unwrap() {
        let name = e["name"].as_str().unwrap();
        let args: Vec<&str> = match name {
            "two-dim" | "G1" => vec!["construct", name, "--s", "1"],
            "G0" => vec!["construct", name, "--s", "inf"],
            "G2" => vec!["construct", name, "--s", "1", "--r", "1", "--d", "-1"],
            "G3" => vec!["construct", name, "--s", "1", "--r", "0", "--d", "2"],
            "G4" | "G5" => vec!["construct", name, "--s", "1", "--r", "0"],
            "p2-plus" | "p2-minus" => vec!["--p", "2", "construct", name, "--s", "2"],
            _ => vec!["construct", name],
        };
        let out = lazard(&args);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn iso_and_bch_on_constructed_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    lazard(&["construct", "G4", "--s", "1", "--r", "0", "-o", a.to_str().unwrap()]);
    lazard(&["construct", "G5", "--s", "1", "--r", "0", "-o", b.to_str().unwrap()]);
    let same = lazard(&["iso", a.to_str().unwrap(), a.to_str().unwrap()]);
    assert!(stdout(&same).starts_with("true"));
    let diff = lazard(&["iso", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert!(stdout(&diff).starts_with("false"), "{}", stdout(&diff));

    let h = dir.path().join("h.json");
    lazard(&["construct", "G0", "--s", "0", "-o", h.to_str().unwrap()]);
    // x * y = x + y + [x, y] / 2, with 1/2 = -195312 mod 5^8
    let out = lazard(&["bch", "mul", h.to_str().unwrap(), "x", "y"]);
    assert_eq!(stdout(&out).trim(), "(1,1,-195312)");
    let out = lazard(&["bch", "commutator", h.to_str().unwrap(), "x", "y", "--json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"], serde_json::json!([0, 0, 1]));
}

#[test]
fn exit_codes() {
    let bad = lazard(&["classify", "1,2,3"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error: "));

    assert_eq!(lazard(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(lazard(&["construct", "G9"]).status.code(), Some(2));
    assert_eq!(lazard(&["--p", "6", "classify", "0,0,0,0"]).status.code(), Some(2));
    assert_eq!(lazard(&["--N", "3", "classify", "0,5,25,0"]).status.code(), Some(2));
    assert_eq!(lazard(&["--N", "3", "classify", "--exact", "0,5,25,0"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "--seed", "7", "construct", "dim-p"];
    assert_eq!(lazard(&args).stdout, lazard(&args).stdout);
    let table = ["bch", "table", "--weight", "5"];
    assert_eq!(lazard(&table).stdout, lazard(&table).stdout);
}

#[test]
fn acceptance_passes() {
    let out = lazard(&["--json", "acceptance"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true, "{v:#}");
    assert!(out.status.success());
    assert_eq!(v["checks"].as_array().unwrap().len(), 12);
    let again = lazard(&["--json", "acceptance"]);
    assert_eq!(out.stdout, again.stdout);
}
