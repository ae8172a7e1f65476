use std::io::Write;
use std::process::{Command, Output, Stdio};

fn qo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn qo_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qo"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_prints_surface() {
    let o = qo(&["eval", "[ a #1 b #2 ; (#1 #2) ]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{ ( a ) ( b ) }^0\n");
}

#[test]
fn eval_json() {
    let o = qo(&["eval", "--json", "[ #1 #2 #3 #4 ; (#1 #3) (#2 #4) ]"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!({"cycles": [[]], "g": 1}));
}

#[test]
fn glue_same_cycle() {
    let o = qo(&["glue", "{ ( a 1 b 2 ) }^0", "a", "b"]);
    assert_eq!(stdout(&o), "{ ( 1 ) ( 2 ) }^0\n");
}

#[test]
fn compose_and_rename() {
    let o = qo(&["compose", "{ ( c 1 2 ) }^0", "c", "{ ( 3 c' ) }^0", "c'"]);
    assert_eq!(stdout(&o), "{ ( 1 2 3 ) }^0\n");
    let o = qo(&["rename", "{ ( a b ) ( c ) }^1", "a=x, c=a"]);
    assert_eq!(stdout(&o), "{ ( a ) ( b x ) }^1\n");
}

#[test]
fn hz_table() {
    let o = qo(&["hz-table", "--chords", "2"]);
    assert_eq!(stdout(&o), "g=0: 2\ng=1: 1\ntotal: 3\n");
    let o = qo(&["hz-table", "--chords", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total"], 15);
    assert_eq!(v["counts"]["0"], 5);
    assert_eq!(v["counts"]["1"], 10);
}

#[test]
fn canon_round_trips_through_eval() {
    let o = qo(&["canon", "{ ( 1 ) ( 2 ) }^1"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    let d = lines.next().unwrap();
    assert_eq!(d, "[ 1 #1 2 #2 #3 #4 #5 #6 ; (#1 #2) (#3 #5) (#4 #6) ]");
    assert!(lines.next().unwrap().starts_with("structure: b=2 g=1"));
    assert_eq!(stdout(&qo(&["eval", d])), "{ ( 1 ) ( 2 ) }^1\n");
    let o = qo(&["canon", "--all", "{ ( 1 2 ) ( 3 ) }^0"]);
    assert_eq!(stdout(&o).matches("structure:").count(), 4);
}

#[test]
fn stdin_input() {
    let o = qo_stdin(&["eval", "-"], "[ a #1 b #2 ;\n (#1 #2) ]\n");
    assert_eq!(stdout(&o), "{ ( a ) ( b ) }^0\n");
}

#[test]
fn equal_with_certificate() {
    let o = qo(&[
        "equal",
        "--certificate",
        "--depth",
        "2",
        "[ A B #1 C #2 ; (#1 #2) ]",
        "[ B A #1 C #2 ; (#1 #2) ]",
    ]);
    let out = stdout(&o);
    assert!(out.starts_with("equivalent\n"), "{out}");
    assert!(out.contains("certificate: 1 moves"), "{out}");
    let o = qo(&[
        "equal",
        "[ #1 #2 #3 #4 ; (#1 #3) (#2 #4) ]",
        "[ #1 #2 #3 #4 ; (#1 #2) (#3 #4) ]",
    ]);
    assert!(stdout(&o).starts_with("not equivalent\n"));
}

#[test]
fn render_dot() {
    let o = qo(&["render", "--format", "dot", "[ a #1 b #2 ; (#1 #2) ]"]);
    let out = stdout(&o);
    assert!(out.starts_with("graph chord_diagram {"));
    assert_eq!(out.matches("color=red").count(), 1);
}

#[test]
fn exit_codes() {
    let parse = qo(&["eval", "[ a #1 b ; (#1 #2) ]"]);
    assert_eq!(parse.status.code(), Some(1));
    assert!(stderr(&parse).contains("1:1"), "{}", stderr(&parse));
    let bad = qo(&["eval", "{ ( a ) }^"]);
    assert_eq!(bad.status.code(), Some(1));
    let usage = qo(&["hz-table"]);
    assert_eq!(usage.status.code(), Some(1));
    let pre = qo(&["glue", "{ ( a ) }^0", "a", "b"]);
    assert_eq!(pre.status.code(), Some(2));
    assert!(stderr(&pre).contains("`b`"));
    let ok = qo(&["check-axioms", "--max-labels", "2", "--max-g", "1"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let failing = qo(&[
        "check-axioms",
        "--max-labels",
        "2",
        "--mutation",
        "compose-genus-dropped",
    ]);
    assert_eq!(failing.status.code(), Some(3));
    assert!(stdout(&failing).contains("FAIL"));
}

#[test]
fn checks_are_reproducible() {
    let args = [
        "check-axioms",
        "--target",
        "qo",
        "--max-labels",
        "2",
        "--seed",
        "7",
        "--random",
        "300",
        "--json",
    ];
    let a = stdout(&qo(&args));
    let b = stdout(&qo(&args));
    let mut seq = vec!["--sequential"];
    seq.extend(args);
    let c = stdout(&qo(&seq));
    assert_eq!(a, b);
    assert_eq!(a, c);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["families"].as_array().unwrap().len(), 11);
}

#[test]
fn terminal_and_envelope() {
    let o = qo(&[
        "check-axioms",
        "--target",
        "terminal",
        "--max-labels",
        "3",
        "--random",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = qo(&["check-envelope", "--max-labels", "2", "--max-g", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("extension is identity"));
}
