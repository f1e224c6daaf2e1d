use std::path::Path;
use std::process::{Command, Output};

use dynbrace::enumeration::EnumerationJson;
use dynbrace::quiver::QuiverJson;
use dynbrace::structures::{BraidingEntry, BracoidJson, DsbJson};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynbrace")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn round_trip<T: Serialize + DeserializeOwned>(text: &str) {
    let parsed: T = serde_json::from_str(text).unwrap();
    let mut again = serde_json::to_string_pretty(&parsed).unwrap();
    again.push('\n');
    assert_eq!(again, text);
}

#[test]
fn enumerate_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    for group in ["cyclic:3", "cyclic:4", "klein4", "sym:3"] {
        for full in [false, true] {
            let mut args = vec!["enumerate", group, "--json"];
            if full {
                args.push("--full");
            }
            let json = stdout(&args);
            let path = write(dir.path(), "e.json", &json);
            let out = run(&["verify", "--input", &path]);
            assert!(out.status.success(), "{group} {full}: {}", String::from_utf8_lossy(&out.stdout));
            let text = String::from_utf8(out.stdout).unwrap();
            assert!(!text.contains("FAIL"));
            assert!(text.contains("PASS YBE"));
        }
    }
    let bracoid = stdout(&["enumerate", "cyclic:4", "--json", "--emit", "bracoid"]);
    let path = write(dir.path(), "b.json", &bracoid);
    assert!(run(&["verify", "--input", &path]).status.success());
}

#[test]
fn tampered_dsb_reports_da_witness() {
    let dir = tempfile::tempdir().unwrap();
    let mut d: DsbJson = serde_json::from_str(&stdout(&["enumerate", "cyclic:4", "--json"])).unwrap();
    let v = d.vertices[1].clone();
    d.ops.get_mut(&v).unwrap()[1].swap(2, 3);
    let path = write(dir.path(), "t.json", &serde_json::to_string(&d).unwrap());
    let out = run(&["verify", "--input", &path]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("FAIL DA axiom=DA vertex=v1"), "{err}");
}

#[test]
fn json_outputs_round_trip() {
    let args = ["enumerate", "cyclic:4", "--json", "--seed-examples"];
    round_trip::<EnumerationJson>(&stdout(&args));
    let with = |e: &'static str| [&args[..], &["--emit", e]].concat();
    round_trip::<BracoidJson>(&stdout(&with("bracoid")));
    round_trip::<Vec<BraidingEntry>>(&stdout(&with("braiding")));
    round_trip::<QuiverJson>(&stdout(&with("quiver")));
    round_trip::<dynbrace::enumeration::InvariantTable>(&stdout(&["invariants", "klein4", "--json"]));
}

#[test]
fn invariants_table() {
    let text = stdout(&["invariants", "--group", "cyclic:4"]);
    let rows: Vec<Vec<&str>> = text.lines().skip(2).take(3).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!([rows[0][1], rows[1][1], rows[2][1]], ["2", "1", "1"]);
    let text = stdout(&["invariants", "--group", "prod:cyclic:2,cyclic:2", "--check"]);
    assert!(text.contains("N_1 = 4"));
    let text = stdout(&["invariants", "cyclic:3", "--full", "--check"]);
    assert!(!text.contains("FAIL"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["invariants", "cyclic:99"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "quaternion8"]).status.code(), Some(3));
    assert_eq!(run(&["invariants", "cyclic:4", "--cap", "3"]).status.code(), Some(3));
    assert_eq!(run(&["verify", "--input", "/nonexistent.json"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "z4.json", &stdout(&["enumerate", "cyclic:4", "--json"]));
    let out = run(&["parallelise", "--input", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unreachable"));
}

#[test]
fn parallelise_and_heap() {
    let dir = tempfile::tempdir().unwrap();
    let k = stdout(&["enumerate", "cyclic:4", "--json", "--seed-examples", "--component", "1", "--emit", "bracoid"]);
    let path = write(dir.path(), "k.json", &k);
    let d: DsbJson = serde_json::from_str(&stdout(&["parallelise", "--input", &path, "--base", "s7"])).unwrap();
    assert_eq!(d.vertices.len(), 4);
    let out = path.replace("k.json", "d.json");
    stdout(&["parallelise", "--input", &path, "--out", &out]);
    assert!(run(&["verify", "--input", &out]).status.success());
    let heap = stdout(&["heap", "--input", &path, "--point", "s4"]);
    assert!(heap.contains("<s4,s5,s4> = s7"));
    assert!(heap.contains("isomorphic to cyclic:4"));
    assert!(heap.contains("PASS pointedHeapGroup"));
    let all = stdout(&["enumerate", "cyclic:4", "--json", "--emit", "bracoid"]);
    let path = write(dir.path(), "all.json", &all);
    let parts: Vec<DsbJson> = serde_json::from_str(&stdout(&["parallelise", "--input", &path, "--per-component"])).unwrap();
    assert_eq!(parts.len(), 4);
}

#[test]
fn dot_export() {
    let a = stdout(&["export-dot", "cyclic:3", "--seed-examples"]);
    assert_eq!(a, stdout(&["export-dot", "cyclic:3", "--seed-examples"]));
    assert_eq!(a.matches(" -> ").count(), 12);
    assert!(a.contains("\"s0\" -> \"s0\" [label=\"0\"];"));
    let c = stdout(&["export-dot", "cyclic:3", "--seed-examples", "--collapse-labels", "--component", "0"]);
    assert!(c.contains("\"s0\" -> \"s0\" [label=\"0,1,2 ×3\"];"), "{c}");
    let dir = tempfile::tempdir().unwrap();
    let q = stdout(&["enumerate", "cyclic:3", "--json", "--emit", "quiver", "--seed-examples"]);
    let path = write(dir.path(), "q.json", &q);
    assert_eq!(stdout(&["export-dot", "--input", &path]), a);
}
