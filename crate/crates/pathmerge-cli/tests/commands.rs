use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathmerge")).args(args).output().unwrap()
}

fn run_with_input(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pathmerge"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture_file(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", &format!("{name}.json")].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn analyze_reports_reroutable_fixture() {
    let o = run(&["analyze", &fixture_file("picgv")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().next(), Some("reroutable: true; mergings: 4"));
}

#[test]
fn analyze_shows_walks_and_blocks() {
    let o = run(&["analyze", "--fixture", "two-five"]);
    let out = stdout(&o);
    assert!(out.starts_with("reroutable: false; mergings: 11\n"));
    assert!(out.contains("identity holds"));
    assert!(out.contains("blocks: x="));
    let o = run(&["analyze", "--fixture", "two-five", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mergings"], 11);
    assert_eq!(v["blocks"]["check"]["count_identity"], true);
}

#[test]
fn bounds_line() {
    let o = run(&["bounds", "--m", "3", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("lower 13 upper 19"));
    let o = run(&["bounds", "--star", "--n", "4"]);
    assert_eq!(stdout(&o).lines().next(), Some("lower 9 upper 10"));
}

#[test]
fn gen_e4_sequence_has_nine_strokes() {
    let o = run(&["gen", "--family", "e", "--n", "4", "--format", "seq"]);
    let line = stdout(&o);
    assert!(line.starts_with("4 4 :"));
    assert_eq!(line.matches('(').count(), 9);
}

#[test]
fn gen_json_is_byte_stable() {
    let a = run(&["gen", "--family", "two-n", "--n", "3"]);
    let b = run(&["gen", "--family", "two-n", "--n", "3"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn export_round_trip_through_sequence() {
    let json = stdout(&run(&["gen", "--fixture", "aa-distinct"]));
    let seq = stdout(&run_with_input(&["export", "-", "--to", "seq"], &json));
    assert_eq!(seq.trim(), "2 2 : (1,1) (2,1) (2,2) (1,2) (1,1)");
    let back = stdout(&run_with_input(&["export", "-", "--from", "seq", "--to", "json"], &seq));
    let again = stdout(&run_with_input(&["export", "-", "--to", "seq"], &back));
    assert_eq!(again, seq);
}

#[test]
fn export_dot() {
    let o = run(&["export", &fixture_file("butterfly"), "--to", "dot"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph network {"));
    assert!(dot.contains("style=filled"));
}

#[test]
fn search_outputs_json_outcome() {
    let o = run(&["search", "--type", "m", "--params", "2,2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], 5);
    assert_eq!(v["complete"], true);
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 2);
    let o = run(&["search", "--type", "added-path", "--params", "1,2,2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], 8);
}

#[test]
fn count_gives_pell_number() {
    let o = run(&["count", "--n", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 5);
}

#[test]
fn exhausted_budget_warns() {
    let o = run(&["search", "--type", "m", "--params", "2,4", "--max-nodes", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("lower bound"));
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("pathmerge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("stack.json");
    let o = run(&["gen", "--fixture", "stack-a", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("\"groups\""));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn usage_and_input_errors_exit_one() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    let o = run(&["gen", "--family", "nope", "--n", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--family"));
    let o = run(&["analyze", "--seq", "2 2 : (3,1)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--seq"));
    let o = run(&["analyze", "no-such-file.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no-such-file.json"));
    let o = run_with_input(&["analyze", "-"], "{\"edges\": []");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn edge_limit_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_pathmerge"))
        .args(["gen", "--family", "two-n", "--n", "10"])
        .env("MERGE_MAX_EDGES", "20")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn verify_table_reports_each_entry() {
    let o = run(&["verify", "--table-only", "--max-seconds", "120"]);
    let out = stdout(&o);
    assert!(out.lines().all(|l| l.starts_with("PASS ") || l.starts_with("FAIL ")));
    assert!(out.contains("PASS M(2,4) expected 11 found 11 [reproduced]"));
    assert_eq!(o.status.code(), Some(if out.contains("FAIL") { 2 } else { 0 }));
}
