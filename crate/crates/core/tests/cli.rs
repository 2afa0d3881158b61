//! End-to-end runs of the `etymograph` binary.

mod common;

use std::process::{Command, Output};

use common::*;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_etymograph"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env_remove("ETYMOGRAPH_REGISTRY")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn lint_printed_chef_fails_with_duplicate_id() {
    let o = run(&["lint", "fixtures/ex04_chef_as_printed.xml"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("E-ID-DUP"));
    assert!(stderr(&o).contains("7 findings"));
}

#[test]
fn lint_clean_fixture_is_silent() {
    let o = run(&["lint", "fixtures/minimal_clean.xml"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn lint_json_lines() {
    let o = run(&["lint", "--format", "json", "fixtures/besides_as_printed.xml"]);
    assert_eq!(o.status.code(), Some(1));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 12);
    assert!(lines.iter().all(|l| l["file"] == "fixtures/besides_as_printed.xml"));
}

#[test]
fn lint_overrides_and_disables() {
    let o = run(&[
        "lint",
        "fixtures/ex04_chef_as_printed.xml",
        "--disable",
        "E-ID-DUP",
        "--severity",
        "E-CHAIN-SELF=warning",
    ]);
    let out = stdout(&o);
    assert!(!out.contains("E-ID-DUP"));
    assert!(out.contains("warning [E-CHAIN-SELF]"));
    assert_eq!(o.status.code(), Some(1), "dangling and asym remain errors");

    let o = run(&["lint", "fixtures/ex03_semper.xml", "--no-registry"]);
    assert!(!stdout(&o).contains("W-LANG-UNREGISTERED"));
}

#[test]
fn lint_rules_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("rules.json");
    std::fs::write(
        &cfg,
        r#"{"disabled_rules":["W-LANG-UNREGISTERED"],"severity_overrides":{"W-CIT-REDUNDANT":"error"}}"#,
    )
    .unwrap();
    let o = run(&["lint", "fixtures/ex03_semper.xml", "--rules", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).lines().count(), 1);
    assert!(stdout(&o).contains("error [W-CIT-REDUNDANT]"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["lint"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["lint", "fixtures/minimal_clean.xml", "--disable", "NO-SUCH-RULE"]).status.code(), Some(2));
    assert_eq!(run(&["lint", "fixtures/minimal_clean.xml", "--severity", "E-ID-DUP"]).status.code(), Some(2));
    assert_eq!(run(&["graph", "fixtures/minimal_clean.xml", "--format", "svg"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn input_errors_exit_1() {
    let o = run(&["parse", "fixtures/no_such_file.xml"]);
    assert_eq!(o.status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.xml");
    std::fs::write(&bad, "<TEI><text><body><entry></body></TEI>").unwrap();
    assert_eq!(run(&["lint", bad.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn parse_counts() {
    let o = run(&["parse", "--format", "json", "fixtures/ex04_chef_as_printed.xml"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["entries"], 1);
    assert_eq!(v["etymons"], 10);
}

#[test]
fn trace_kiti() {
    let o = run(&["trace", "fixtures/ex12_kiti.xml", "--anchor", "animal-horse"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.matches("path ").count(), 1, "{out}");
    assert!(out.contains("metonymy") && out.contains("1517"), "{out}");
}

#[test]
fn trace_chef_json() {
    let o = run(&["trace", "fixtures/ex04_chef_cleaned.xml", "--anchor", "chef", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let paths = v.as_array().unwrap();
    assert_eq!(paths.len(), 1);
    assert_eq!(paths[0]["stages"].as_array().unwrap().len(), 9);
    assert_eq!(run(&["trace", "fixtures/ex04_chef_cleaned.xml", "--anchor", "nope"]).status.code(), Some(1));
}

#[test]
fn graph_formats() {
    let o = run(&["graph", "fixtures/ex17_handschuh.xml", "--format", "dot"]);
    assert!(stdout(&o).starts_with("digraph etymograph {"));
    let o = run(&["graph", "fixtures/ex17_handschuh.xml", "--format", "graphml"]);
    let xml = stdout(&o);
    roxmltree::Document::parse(&xml).expect("graphml is XML");
    let o = run(&["graph", "fixtures/ex17_handschuh.xml", "--format", "json"]);
    let g = etymograph::graph::from_json(stdout(&o).trim()).unwrap();
    assert!(g.invariant_violations().is_empty());

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.json");
    let o = run(&["graph", "fixtures/ex16_utsi_uni_etym.xml", "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(out).unwrap().contains("\"sameAs\""));
}

#[test]
fn graph_is_deterministic() {
    let args = ["graph", "--format", "json"];
    let files: Vec<String> = all_fixtures().iter().map(|p| p.display().to_string()).collect();
    let mut argv: Vec<&str> = args.to_vec();
    argv.extend(files.iter().map(String::as_str));
    assert_eq!(run(&argv).stdout, run(&argv).stdout);
}

#[test]
fn convert_lifts_and_normalizes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["convert", "fixtures/abend_legacy.xml", "fixtures/ex04_chef_as_printed.xml", "--out", out, "--aggressive"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("1 etymologies lifted"));
    assert!(stderr(&o).contains("I-NORM-DUPCIT"));
    let abend = std::fs::read_to_string(dir.path().join("abend_legacy.xml")).unwrap();
    assert!(abend.contains(r#"<cit type="etymon" xml:lang="gmh">"#));
    let chef = dir.path().join("ex04_chef_as_printed.xml");
    let lint = run(&["lint", "--format", "json", chef.to_str().unwrap()]);
    let out = stdout(&lint);
    assert!(!out.contains("E-ID-DUP") && !out.contains("E-CHAIN-SELF"), "{out}");
}

#[test]
fn convert_with_user_abbreviations() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("abbrev.json");
    std::fs::write(&table, r#"{"Ahd.": "de"}"#).unwrap();
    let out = dir.path().join("out");
    let o = run(&[
        "convert",
        "fixtures/abend_legacy.xml",
        "--out",
        out.to_str().unwrap(),
        "--abbrev",
        table.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let abend = std::fs::read_to_string(out.join("abend_legacy.xml")).unwrap();
    assert!(abend.contains(r#"<cit type="etymon" xml:lang="de">"#), "{abend}");
}

#[test]
fn link_across_files() {
    let o = run(&["lint", "fixtures/ex14_utsi_uni.xml"]);
    assert!(stdout(&o).contains("E-REF-UNRESOLVED"));
    let o = run(&["lint", "--link-across-files", "fixtures/ex14_utsi_uni.xml", "fixtures/ex16_utsi_uni_etym.xml"]);
    let out = stdout(&o);
    assert!(!out.contains("#num-10\" names no"), "{out}");
}
