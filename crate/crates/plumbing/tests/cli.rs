use std::path::PathBuf;

use assert_cmd::Command;
use plumbing::cli::run_captured;
use plumbing::formats::rational_from_json;
use plumbing::{EXIT_INVALID, EXIT_OK, EXIT_UNKNOWN};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    run_captured(std::iter::once("plumbing").chain(args.iter().copied()))
}

fn json_of(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert!(code == EXIT_OK || code == EXIT_UNKNOWN, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"))
}

fn schema() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/output.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

#[test]
fn classify_reports_the_worked_example() {
    let (code, out, _) = run(&["classify", &data("example21.graph"), "--area", "3,2"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "Concave (positive GS witness z = 1,1)");
    assert!(lines.iter().any(|l| l.starts_with("boundary group: finite cyclic of order 1")));
    assert!(lines.iter().any(|l| l.starts_with("compactifying: ")));
}

#[test]
fn nonstandard_graph_is_realizable() {
    let (code, out, _) = run(&["classify", &data("nonstandard.graph")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("realizable: yes"), "{out}");
}

#[test]
fn pi1_of_e8() {
    let (code, out, _) = run(&["pi1", &data("e8.graph")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("abelianization order 1\n"));
    assert!(out.contains("finiteness: finite non-cyclic"));
}

#[test]
fn enumerate_tables() {
    let (code, out, _) = run(&["enumerate", "conjugate-exceptions"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("conjugate-exceptions (y <= 20): 7 pairs, 4 realizable\n"));
    assert_eq!(out.lines().filter(|l| l.contains(". T = <")).count(), 7);

    let doc = json_of(&["enumerate", "qhd-exceptions", "--json", "--jobs", "2"]);
    assert_eq!(doc["count"], 4);
    assert_eq!(doc["realizable_count"], 3);
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["frobnicate"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("Graph files"));

    let (code, _, err) = run(&["chern", "/nonexistent/graph"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.starts_with("error: "));

    let (code, out, _) = run(&["equivalent", &data("zero_zero.graph"), &data("plus_one.graph"), "--budget", "0"]);
    assert_eq!((code, out.as_str()), (EXIT_UNKNOWN, "unknown within budget\n"));

    let (code, out, _) = run(&["equivalent", &data("e8.graph"), &data("plus_one.graph")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("not equivalent"));

    let (code, _, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn equivalence_proof_with_one_extra_vertex() {
    let (code, out, _) = run(&["equivalent", &data("zero_zero.graph"), &data("plus_one.graph"), "--budget", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("equivalent: "));
}

#[test]
fn binary_exit_statuses() {
    Command::cargo_bin("plumbing").unwrap().args(["pi1", &data("e8.graph")]).assert().success();
    Command::cargo_bin("plumbing").unwrap().arg("bogus").assert().code(EXIT_INVALID);
    Command::cargo_bin("plumbing")
        .unwrap()
        .args(["equivalent", &data("zero_zero.graph"), &data("plus_one.graph"), "--budget", "0"])
        .assert()
        .code(EXIT_UNKNOWN);
    // stdin input
    Command::cargo_bin("plumbing")
        .unwrap()
        .arg("chern")
        .write_stdin("v a g0 s-1\n")
        .assert()
        .success()
        .stdout("w = -1\nc1^2 = -1\nn = 0\n");
}

#[test]
fn output_is_deterministic() {
    for args in [vec!["enumerate", "qhd-exceptions", "--max-y", "8"], vec!["classify", "--json"], vec!["minimize"]] {
        let mut args: Vec<String> = args.into_iter().map(String::from).collect();
        if args[0] != "enumerate" {
            args.insert(1, data("nonstandard.graph"));
        }
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = run(&args);
        assert_eq!(first, run(&args));
    }
}

#[test]
fn dot_export() {
    let (code, out, _) = run(&["export-dot", &data("example21.graph")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "graph plumbing {\n  \"v1\" [label=\"v1: s=2, g=0\"];\n  \"v2\" [label=\"v2: s=1, g=0\"];\n  \"v1\" -- \"v2\";\n}\n"
    );
}

#[test]
fn convert_round_trips_through_the_dsl() {
    let (_, dsl, _) = run(&["convert", &data("e8.graph")]);
    let tmp = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(tmp.path(), &dsl).unwrap();
    let path = tmp.path().to_string_lossy().into_owned();
    assert_eq!(json_of(&["convert", &path, "--json"]), json_of(&["convert", &data("e8.graph"), "--json"]));

    let doc = json_of(&["apply-move", &data("example21.graph"), "--move", "blow-up-edge", "--edge", "v1,v2", "--json"]);
    assert_eq!(doc["graph"]["vertices"].as_array().unwrap().len(), 3);
}

#[test]
fn areas_survive_json() {
    let tmp = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(tmp.path(), "v c g0 s0 a1/2\n").unwrap();
    let path = tmp.path().to_string_lossy().into_owned();
    let doc = json_of(&["convert", &path, "--json"]);
    let area = rational_from_json(&doc["graph"]["vertices"][0]["area"]).unwrap();
    assert_eq!(plumbing_core::format_rational(&area), "1/2");
}

#[test]
fn dihedral_presentations() {
    let tmp = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(tmp.path(), "v c g0 s0; v a g0 s-2; v b g0 s-2; v d g0 s-3; e c a; e c b; e c d\n").unwrap();
    let path = tmp.path().to_string_lossy().into_owned();
    let (code, out, _) = run(&["convert", &path, "--dihedral"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().filter(|l| l.starts_with("v ")).count() >= 2, "{out}");
    // The converted graph is related to the original by moves.
    std::fs::write(tmp.path().with_extension("out"), &out).unwrap();
    let converted = tmp.path().with_extension("out").to_string_lossy().into_owned();
    let (code, verdict, _) = run(&["equivalent", &path, &converted]);
    std::fs::remove_file(&converted).unwrap();
    assert_eq!(code, EXIT_OK, "{verdict}");
    assert!(verdict.starts_with("equivalent: "), "{verdict}");
}

#[test]
fn tables_override() {
    let bad = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(bad.path(), "{ not json").unwrap();
    let path = bad.path().to_string_lossy().into_owned();
    let (code, _, err) = run(&["classify", &data("nonstandard.graph"), "--tables", &path]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.starts_with("error: "));
    let (code, _, _) = run(&["enumerate", "qhd-exceptions", "--max-y", "4", "--tables", &path]);
    assert_eq!(code, EXIT_INVALID);
}

#[test]
fn json_outputs_match_the_schema() {
    let validator = schema();
    assert!(!validator.is_valid(&serde_json::json!({ "command": "chern", "w": [] })));
    assert!(!validator
        .is_valid(&serde_json::json!({ "command": "convert", "graph": { "vertices": [{ "id": "a" }], "edges": [] } })));
    let (e8, ex, ns) = (data("e8.graph"), data("example21.graph"), data("nonstandard.graph"));
    let (zz, p1) = (data("zero_zero.graph"), data("plus_one.graph"));
    let cases: Vec<Vec<&str>> = vec![
        vec!["classify", &ex, "--area", "3,2", "--json"],
        vec!["classify", &ex, "--area", "1,1", "--json"],
        vec!["classify", &ns, "--json"],
        vec!["classify", &e8, "--json"],
        vec!["gs", &ex, "--area", "3,2", "--json"],
        vec!["gs", &e8, "--area", "1,1,1,1,1,1,1,1", "--json"],
        vec!["minimize", &ns, "--json"],
        vec!["apply-move", &ex, "--move", "blow-up-vertex", "--vertex", "v1", "--json"],
        vec!["apply-move", &ex, "--move", "dual-blow-up", "--vertex", "v2", "--json"],
        vec!["equivalent", &zz, &p1, "--budget", "1", "--json"],
        vec!["equivalent", &zz, &p1, "--budget", "0", "--json"],
        vec!["equivalent", &e8, &p1, "--json"],
        vec!["pi1", &e8, "--json"],
        vec!["pi1", &zz, "--json"],
        vec!["chern", &e8, "--json"],
        vec!["enumerate", "conjugate-exceptions", "--max-y", "8", "--json"],
        vec!["convert", &ns, "--json"],
    ];
    for args in cases {
        let doc = json_of(&args);
        let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}\n{doc:#}");
    }
}
