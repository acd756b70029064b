use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gdwl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gdwl"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn gen_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).display().to_string();
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &path]);
    let out = gdwl(&full);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    path
}

#[test]
fn distinguish_counterexample_pair() {
    let dir = tempfile::tempdir().unwrap();
    let g1 = gen_to(
        dir.path(),
        "g1.el",
        &["example1", "2", "2", "--member", "1"],
    );
    let g2 = gen_to(
        dir.path(),
        "g2.g6",
        &["example1", "2", "2", "--member", "2", "--format", "graph6"],
    );
    let out = gdwl(&["distinguish", "--algo", "1wl", &g1, &g2]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "indistinguishable");
    let out = gdwl(&["distinguish", "--algo", "gdwl", &g1, &g2]);
    assert_eq!(stdout(&out).trim(), "distinguishable");
}

#[test]
fn biconnect_json_on_a_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("path4.el");
    std::fs::write(&path, "4 3\n0 1\n1 2\n2 3\n").unwrap();
    let out = gdwl(&["biconnect", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["cut_vertices"], serde_json::json!([1, 2]));
    assert_eq!(v["cut_edges"], serde_json::json!([[0, 1], [1, 2], [2, 3]]));
    assert_eq!(v["bce_tree"]["edges"].as_array().unwrap().len(), 3);
}

#[test]
fn distances_in_both_kinds() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = gen_to(dir.path(), "c4.el", &["cycle", "4"]);
    let out = gdwl(&["distances", &c4, "--kind", "rd", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["matrix"][0][1], "3/4");
    let out = gdwl(&["distances", &c4, "--kind", "spd"]);
    assert_eq!(stdout(&out).lines().next().unwrap(), "0 1 2 1");
}

#[test]
fn refine_shares_colors_across_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = gen_to(dir.path(), "a.el", &["example2", "4", "--member", "1"]);
    let b = gen_to(dir.path(), "b.el", &["example2", "4", "--member", "2"]);
    let out = gdwl(&["refine", "--algo", "rdwl", &a, &b, "--json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["algorithm"], "rdwl");
    assert_ne!(
        v["graphs"][0]["representation"],
        v["graphs"][1]["representation"]
    );
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(gdwl(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(gdwl(&["check", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(gdwl(&["gen", "example1", "2", "2"]).status.code(), Some(2));
    assert_eq!(
        gdwl(&["gen", "example1", "1", "2", "--member", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        gdwl(&["distinguish", "--algo", "4wl", "a", "b"])
            .status
            .code(),
        Some(2)
    );
    let out = gdwl(&["biconnect", "/nonexistent/graph.el"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn check_negative_suite_passes() {
    let out = gdwl(&["check", "--suite", "negative", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["verdict"] == "pass"));
}

#[test]
fn gen_outputs_parse_back() {
    let out = gdwl(&["gen", "named", "petersen", "--format", "graph6"]);
    assert_eq!(stdout(&out), "IheA@GUAo\n");
    let out = gdwl(&["gen", "gnp", "10", "1/2", "7"]);
    assert_eq!(
        stdout(&out),
        stdout(&gdwl(&["gen", "gnp", "10", "1/2", "7"]))
    );
}
