use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tensor-cone"))
        .args(args)
        .env_remove("TENSOR_CONE_TYPE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("valid json")
}

#[test]
fn sl2_facets_text() {
    let o = run(&["facets", "--type", "A1", "--s", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("3 facets"));
    assert_eq!(text.lines().filter(|l| l.contains(">= 0")).count(), 3);
}

#[test]
fn sl2_facets_json_schema() {
    let o = run(&["facets", "--type", "A1", "--s", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["cartan_type"], "A1");
    let facets = v["facets"].as_array().unwrap();
    assert_eq!(facets.len(), 3);
    for f in facets {
        assert_eq!(f["codim"], 1);
        assert_eq!(f["parabolic_complement"], serde_json::json!([1]));
        assert_eq!(f["reps"].as_array().unwrap().len(), 3);
        assert_eq!(f["equations"][0]["k"], 1);
        assert_eq!(f["relation"], ">=");
        assert_eq!(f["coefficients"].as_array().unwrap().len(), 3);
    }
}

#[test]
fn bad_type_is_a_config_error() {
    let o = run(&["facets", "--type", "Z9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Z9"));
}

#[test]
fn budget_error_exit_code() {
    let o = run(&["facets", "--type", "A2", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn faces_sl2_and_empty() {
    let o = run(&["faces", "--type", "A1", "--s", "2", "--max-codim", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["faces"].as_array().unwrap().len(), 3);
    assert_eq!(v["edges"].as_array().unwrap().len(), 0);
    let o = run(&["faces", "--type", "A1", "--max-codim", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["faces"].as_array().unwrap().is_empty());
}

#[test]
fn sl3_lattice_is_graded() {
    let o = run(&["faces", "--type", "A2", "--s", "2", "--max-codim", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let faces = v["faces"].as_array().unwrap();
    for e in v["edges"].as_array().unwrap() {
        let (a, b) = (e[0].as_u64().unwrap() as usize, e[1].as_u64().unwrap() as usize);
        assert_eq!(faces[a]["codim"], 2);
        assert_eq!(faces[b]["codim"], 1);
    }
}

#[test]
fn verify_passes() {
    let o = run(&["verify", "--type", "A1", "--s", "2", "--box", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
    let o = run(&["verify", "--type", "A2", "--s", "2", "--box", "4", "--depth", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn corrupted_inequality_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.csv");
    let o = run(&["facets", "--type", "A1", "--format", "csv", "--out", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&good).unwrap();
    let o = run(&["verify", "--type", "A1", "--inequalities", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    // tighten one facet: a + b - c >= 0 becomes a + b - 2c >= 0
    let bad_text = text.replace(">=,1,1,-1", ">=,1,1,-2");
    assert_ne!(bad_text, text);
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, bad_text).unwrap();
    let o = run(&["verify", "--type", "A1", "--inequalities", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL validity"));
    assert!(out.contains("counterexample"));
}

#[test]
fn tables() {
    let o = run(&["cup-table", "--type", "A2", "--parabolic", "1,2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let row = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["left"] == serde_json::json!([1]) && e["right"] == serde_json::json!([2]))
        .unwrap();
    let terms = row["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert!(terms.iter().all(|t| t["coeff"] == 1));

    let cup = run(&["cup-table", "--type", "A3", "--parabolic", "2", "--format", "csv"]);
    let bk = run(&["bk-table", "--type", "A3", "--parabolic", "2", "--format", "csv"]);
    assert_eq!(cup.status.code(), Some(0));
    assert_eq!(cup.stdout, bk.stdout);

    let o = run(&["bk-table", "--type", "A2", "--parabolic", ""]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn membership_examples() {
    let classify = |p: &str| {
        let o = run(&["membership", "--type", "A1", "--point", p, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        json(&o)
    };
    let v = classify("1;1;2");
    assert_eq!(v["classification"], "boundary");
    assert_eq!(v["active_faces"].as_array().unwrap().len(), 1);
    assert_eq!(classify("1;1;1")["classification"], "interior");
    assert_eq!(classify("3;1;1")["classification"], "outside");
}

#[test]
fn deterministic_output() {
    let a = run(&["faces", "--type", "B2", "--format", "json", "--jobs", "1"]);
    let b = run(&["faces", "--type", "B2", "--format", "json", "--jobs", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn env_fallback() {
    let o = Command::new(env!("CARGO_BIN_EXE_tensor-cone"))
        .args(["facets"])
        .env("TENSOR_CONE_TYPE", "A1")
        .env("TENSOR_CONE_FORMAT", "json")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["facets"].as_array().unwrap().len(), 3);
}
