//! End-to-end tests of the `heytlab` binary: exit-code contract, report
//! shapes, ceiling refusals, and determinism.

use serde_json::Value;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.topo"))
}

/// Runs the binary with a scrubbed environment so ambient ceiling overrides
/// cannot leak into tests.
fn heytlab(args: &[&str]) -> Output {
    heytlab_with_env(args, &[])
}

fn heytlab_with_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_heytlab"));
    for var in heytlab_cli::CEILING_VARS {
        cmd.env_remove(var);
    }
    cmd.args(args).envs(env.iter().copied());
    cmd.output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn write_file(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(content.as_bytes()).unwrap();
    path
}

#[test]
fn valid_topology_exits_zero() {
    let out = heytlab(&["check-topology", corpus("chain3").to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert_eq!(doc["valid"], Value::Bool(true));
    assert!(doc["violations"].as_array().unwrap().is_empty());
}

#[test]
fn broken_cover_exits_one_with_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    // Axiom 1 fails: no atom covers anything, not even the sets containing it.
    let path = write_file(dir.path(), "broken.topo", "atoms: a b\ncover:\na: {}\nb: {}\n");
    let out = heytlab(&["check-topology", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let doc = stdout_json(&out);
    assert_eq!(doc["valid"], Value::Bool(false));
    assert!(!doc["violations"].as_array().unwrap().is_empty());
}

#[test]
fn missing_file_exits_two() {
    let out = heytlab(&["check-topology", "/no/such/file.topo"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_topology_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "bad.topo", "atoms: a\ncover: sideways\n");
    let out = heytlab(&["check-topology", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("sideways"));
}

#[test]
fn carrier_ceiling_exits_three_unless_raised() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "wide.topo", "atoms: a b c d e f g\ncover: downset\n");
    let out = heytlab(&["check-topology", path.to_str().unwrap()]);
    assert_eq!(code(&out), 3);

    let out = heytlab_with_env(
        &["check-topology", path.to_str().unwrap()],
        &[("HEYTLAB_CARRIER", "7")],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn frame_report_matches_the_known_chain() {
    let out = heytlab(&["frame", corpus("chain2").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    let elements = doc["elements"].as_array().unwrap();
    assert_eq!(elements.len(), 3);
    assert_eq!(doc["boolean"], Value::Bool(false));
    let meet = doc["tables"]["meet"].as_array().unwrap();
    assert_eq!(meet.len(), 3);
}

#[test]
fn names_ceiling_exits_three() {
    let out = heytlab(&["names", corpus("chain2").to_str().unwrap(), "--rank", "9"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn eval_lem_base_versus_boolean() {
    let dir = tempfile::tempdir().unwrap();
    let fml = write_file(
        dir.path(),
        "lem.fml",
        "empty in name{empty: [0]} | ~empty in name{empty: [0]}\n",
    );
    let topo = corpus("chain3");
    let base = heytlab(&["eval", fml.to_str().unwrap(), topo.to_str().unwrap()]);
    assert_eq!(code(&base), 0, "{}", String::from_utf8_lossy(&base.stderr));
    let doc = stdout_json(&base);
    assert_eq!(doc["mode"], "base");
    assert_eq!(doc["is_top"], Value::Bool(false));
    assert_eq!(doc["value"], serde_json::json!(["0"]));

    let boolean = heytlab(&[
        "eval",
        fml.to_str().unwrap(),
        topo.to_str().unwrap(),
        "--mode",
        "boolean",
    ]);
    assert_eq!(code(&boolean), 0);
    let doc = stdout_json(&boolean);
    assert_eq!(doc["is_top"], Value::Bool(true));
}

#[test]
fn eval_bot_is_bottom() {
    let dir = tempfile::tempdir().unwrap();
    let fml = write_file(dir.path(), "bot.fml", "bot\n");
    let out = heytlab(&["eval", fml.to_str().unwrap(), corpus("chain3").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["value"], serde_json::json!([]));
    assert_eq!(doc["is_top"], Value::Bool(false));
    assert!(doc.get("note").is_none(), "bot is bounded, no truncation label");
}

#[test]
fn eval_unbound_identifier_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let fml = write_file(dir.path(), "open.fml", "x = x\n");
    let out = heytlab(&["eval", fml.to_str().unwrap(), corpus("chain3").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("x"));
}

#[test]
fn eval_unknown_atom_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let fml = write_file(dir.path(), "oops.fml", "empty in name{empty: [9]}\n");
    let out = heytlab(&["eval", fml.to_str().unwrap(), corpus("chain3").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn eval_relativized_labels_truncation() {
    let dir = tempfile::tempdir().unwrap();
    let fml = write_file(dir.path(), "all.fml", "all x. x = x\n");
    let out = heytlab(&[
        "eval",
        fml.to_str().unwrap(),
        corpus("chain2").to_str().unwrap(),
        "--mode",
        "relativized",
        "--format",
        "md",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.contains("truncated at rank 2"), "{text}");
}

#[test]
fn census_covers_the_known_rows() {
    let out = heytlab(&["census", "--max-rank", "3", "--max-size", "8"]);
    assert_eq!(code(&out), 0);
    let rows = stdout_json(&out);
    let rows = rows.as_array().unwrap();
    let find = |set: &str| {
        rows.iter().find(|r| r["set"] == set).unwrap_or_else(|| panic!("no row for {set}"))
    };
    let singleton = find("{{}}");
    assert_eq!(singleton["regular"], Value::Bool(true));
    let two = find("{{},{{}}}");
    assert_eq!(two["regular"], Value::Bool(false));
    assert!(two["witnesses"][0].as_str().unwrap().contains("no bound"));
}

#[test]
fn census_empty_range_yields_zero_rows() {
    let out = heytlab(&["census", "--min-rank", "9", "--max-rank", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out), serde_json::json!([]));
}

#[test]
fn census_rank_ceiling_exits_three() {
    let out = heytlab(&["census", "--max-rank", "6"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn inductive_reaches_the_fixed_point() {
    let dir = tempfile::tempdir().unwrap();
    let rules = write_file(dir.path(), "rules.ind", "=> 0\n0 => 1\n0, 1 => 2\n");
    let out = heytlab(&["inductive", rules.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["fixed_point"], serde_json::json!([0, 1, 2]));
    assert_eq!(doc["minimal"], Value::Bool(true));
    assert_eq!(doc["stabilization"], 2);
}

#[test]
fn inductive_bad_rule_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let rules = write_file(dir.path(), "rules.ind", "0 -> 1\n");
    let out = heytlab(&["inductive", rules.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn suite_filter_selects_an_area() {
    let out = heytlab(&["suite", "--filter", "formula_lang"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    let suites = doc["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 2);
    assert!(suites
        .iter()
        .all(|s| s["name"].as_str().unwrap().starts_with("formula_lang/")));
    assert_eq!(doc["passed"], Value::Bool(true));
}

#[test]
fn suite_timings_go_to_stderr_not_stdout() {
    let out = heytlab(&["suite", "--filter", "name_universe"]);
    assert_eq!(code(&out), 0);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("ms"), "{stderr}");
    // stdout must stay pure JSON.
    stdout_json(&out);
}

#[test]
fn suite_runs_are_byte_identical() {
    let args = ["suite", "--filter", "name_universe", "--seed", "7"];
    let a = heytlab(&args);
    let b = heytlab(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn injected_fault_fails_the_suite() {
    let out = heytlab(&["suite", "--inject-fault"]);
    assert_eq!(code(&out), 1);
    let doc = stdout_json(&out);
    assert_eq!(doc["passed"], Value::Bool(false));
    let suites = doc["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 1);
    assert!(suites[0]["failures"].as_u64().unwrap() > 0);
    let first = suites[0]["messages"][0].as_str().unwrap();
    assert!(first.contains("adjunction"), "{first}");
}
