use std::process::{Command, Output};

use serde_json::Value;

fn cosimplex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cosimplex"))
        .args(args)
        .env("COSIMPLEX_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = cosimplex(&all);
    let v = serde_json::from_slice(&out.stdout).expect("json on stdout");
    (out.status.code().unwrap(), v)
}

#[test]
fn tensor_sco_passes() {
    let (code, v) = json(&["verify", "sco", "--example", "tensor", "--n-max", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["schema_version"], 1);
    assert!(v["checked"].as_u64().unwrap() > 0);
    assert_eq!(v["witnesses"], Value::Array(vec![]));
}

#[test]
fn tl_projections_are_spreadable() {
    let (code, v) = json(&["spreadability", "--example", "tl", "--q", "2", "0", "--m", "8", "--degree", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["spreadable"], true);
    assert_eq!(v["data"]["coface_invariant"], true);
}

#[test]
fn trivial_cohomology_vanishes() {
    let (code, v) = json(&["cohomology", "--action", "trivial", "--n-max", "4"]);
    assert_eq!(code, 0);
    let table = v["data"]["table"].as_array().unwrap();
    assert!(!table.is_empty());
    assert!(table.iter().all(|row| row["h"] == 0));
}

#[test]
fn broken_table_fails_with_witness() {
    let (code, v) = json(&["spreadability", "--example", "broken", "--degree", "2", "--pos-bound", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "fail");
    let w = &v["witnesses"][0];
    assert_eq!(w["element"], "(0,b)(1,b)");
    assert_eq!(w["k"], 1);
    assert_eq!(w["lhs"], "1");
    assert_eq!(w["rhs"], "0");
}

#[test]
fn non_solution_is_reported() {
    let (code, v) = json(&["ybe", "--rule", "xor2"]);
    assert_eq!(code, 1);
    assert!(v["witnesses"][0]["lhs"] != v["witnesses"][0]["rhs"]);
}

#[test]
fn json_is_deterministic() {
    let args = ["braid-check", "--example", "burau", "--n-max", "2", "--big-n", "2", "--seed", "5", "--format", "json"];
    let a = cosimplex(&args);
    let b = cosimplex(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["timings"], serde_json::json!({}));
}

#[test]
fn bad_configuration_exits_2() {
    for args in [
        &["verify", "sco", "--example", "nope"][..],
        &["tl", "--q", "0", "0"],
        &["tl", "--q", "-1", "0"],
        &["tl", "--q", "1/x", "0"],
        &["spreadability", "--example", "tl", "--q", "2", "0", "--star"],
        &["spreadability", "--example", "tl", "--m", "4", "--pos-bound", "3"],
        &["cohomology", "--action", "trivial", "--n-max", "0"],
    ] {
        let out = cosimplex(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn list_covers_every_subcommand() {
    let out = cosimplex(&["--list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["verify sco", "verify shifts", "spreadability", "cohomology", "braid-check", "ybe", "tl"] {
        assert!(text.contains(name), "{name} missing from --list");
    }
}

#[test]
fn text_summary_names_the_status() {
    let out = cosimplex(&["tl", "--q", "0", "1", "--m", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("status: PASS"));
    assert!(text.contains("g_n g_n* = 1"));
}
