use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_slspec"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn repo(path: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").join(path)
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("missing golden {}: {e}", path.display()))
}

fn validate(doc: &str) {
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(repo("schema/report.schema.json")).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let value: Value = serde_json::from_str(doc).expect("report is JSON");
    let errors: Vec<String> = validator.iter_errors(&value).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "schema errors: {errors:#?}");
}

#[test]
fn analyze_goldens() {
    for (instance, name) in [("Z6 | (0)", "analyze_z6"), ("Z8 | (0)", "analyze_z8"), ("Z2 | (0),(0)", "analyze_z2_plane")] {
        let text = run(&["analyze", instance]);
        assert_eq!(text.status.code(), Some(0));
        assert_eq!(stdout(&text), golden(&format!("{name}.txt")), "{name}.txt");
        let json = run(&["analyze", instance, "--json"]);
        assert_eq!(json.status.code(), Some(0));
        assert_eq!(stdout(&json), golden(&format!("{name}.json")), "{name}.json");
        validate(&stdout(&json));
    }
}

#[test]
fn verify_golden() {
    let out = run(&["verify", "Z6 | (0)", "all"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), golden("verify_z6.txt"));
    let json = run(&["verify", "Z8 | (0)", "--json", "--witnesses"]);
    assert_eq!(json.status.code(), Some(0));
    validate(&stdout(&json));
}

#[test]
fn spec_dump_lists_registry() {
    let out = run(&["spec-dump", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    validate(&stdout(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 36);
    assert_eq!(stdout(&run(&["spec-dump"])), golden("spec_dump.txt"));
}

#[test]
fn exit_codes() {
    let unknown = run(&["verify", "Z6 | (0)", "T9.9"]);
    assert_eq!(unknown.status.code(), Some(2));
    let err = String::from_utf8(unknown.stderr).unwrap();
    assert!(err.contains("T9.9") && err.contains("T2.1") && err.contains("C4.16"), "{err}");

    let parse = run(&["analyze", "Z8 | (3)"]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8(parse.stderr).unwrap().contains("column 7"));

    assert_eq!(run(&["analyze", "Z1 | (0)"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "Z6xZ2 | (2)"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "Z8 | (0),(0)", "--max-elements", "32"]).status.code(), Some(3));
    assert_eq!(run(&["corpus", "/nonexistent/corpus.txt"]).status.code(), Some(2));
}

#[test]
fn over_z_reduction() {
    let out = run(&["analyze", "Z6 | (0)", "--over-Z"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("reduction: finite Z-module of exponent 6"), "{text}");
    assert!(text.contains("instance: Z6 | (0)"));
}

#[test]
fn corpus_file_is_deterministic_and_valid() {
    let dir = std::env::temp_dir().join(format!("slspec-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("small.txt");
    std::fs::write(&file, "# small\nZ6 | (0)\nZ8 | (0)\nZ8 | (4)\nZ2 | (0),(0)\nZ4xZ2 | (0,0)\n").unwrap();
    let args = ["corpus", file.to_str().unwrap(), "--json", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    validate(&stdout(&a));
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["instances"], 5);
    assert_eq!(v["totals"]["fail"], 0);

    let empty = run(&["corpus", file.to_str().unwrap(), "--json", "--results", ""]);
    let v: Value = serde_json::from_str(&stdout(&empty)).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn default_corpus_file_matches_expansion() {
    let text = std::fs::read_to_string(repo("corpus/default.txt")).unwrap();
    let listed: Vec<String> = slspec::instance::parse_corpus(&text, false).unwrap().into_iter().map(|i| i.module.to_string()).collect();
    let expanded: Vec<String> =
        slspec::theorems::corpus::CorpusSpec::default_corpus().expand().unwrap().into_iter().map(|m| m.to_string()).collect();
    assert_eq!(listed, expanded);
}
