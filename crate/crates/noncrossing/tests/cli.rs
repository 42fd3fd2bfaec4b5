//! End-to-end checks of the command-line interface: documented outputs,
//! exit codes and byte-for-byte determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_noncrossing"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn sequence_text_output() {
    let out = run(&["sequence", "--kind", "a", "--n", "6"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1,2,6,22,90,394\n");
}

#[test]
fn sequence_csv_output() {
    let out = run(&[
        "sequence", "--kind", "b", "--n", "4", "--N", "2", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kind,n,N,enumeration,series,match"));
    assert_eq!(lines.last(), Some("b,4,2,76,76,true")); // 22*2 + 8*4 = 76
}

#[test]
fn constants_text_output() {
    let out = run(&["constants", "--N", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("z0 = 0.238999"), "{text}");
    assert!(text.contains("pisier = 9.8585"), "{text}");
}

#[test]
fn constants_csv_has_certificate() {
    let out = run(&["constants", "--N", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.starts_with("N,z0_lo,z0_hi,khinchin,certified\n2,"),
        "{text}"
    );
    assert!(text.trim_end().ends_with(",true"), "{text}");
}

#[test]
fn kreweras_and_mobius() {
    let out = run(&["kreweras", "--pi", "1,2|3"]);
    assert_eq!(stdout(&out), "1|2,3\n");
    let out = run(&["mobius", "--n", "4", "--lattice", "nc"]);
    assert_eq!(stdout(&out), "-5\n");
    let out = run(&["mobius", "--n", "4", "--lattice", "set"]);
    assert_eq!(stdout(&out), "-6\n");
    let out = run(&[
        "mobius",
        "--sigma",
        "1,2|3,4|5",
        "--pi",
        "1,2,3,4,5",
        "--lattice",
        "nc",
    ]);
    assert!(out.status.success());
}

#[test]
fn enumerate_counts_and_format() {
    let out = run(&["enumerate", "--n", "4", "--lattice", "nc"]);
    assert_eq!(stdout(&out).lines().count(), 14);
    let out = run(&["enumerate", "--n", "4", "--lattice", "set"]);
    assert_eq!(stdout(&out).lines().count(), 15);
    let out = run(&[
        "enumerate",
        "--n",
        "3",
        "--lattice",
        "nc",
        "--format",
        "json",
    ]);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed.as_array().unwrap().len(), 5);
}

#[test]
fn transform_round_trip_via_stdin() {
    let input = r#"{"n":4,"mode":"sequence","moments":["0","1","0","2"]}"#;
    let mut child = bin()
        .args(["transform", "--lattice", "nc"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // Semicircle moments have free cumulant sequence 0, 1, 0, 0.
    assert_eq!(value["moments"], serde_json::json!(["0", "1", "0", "0"]));
}

#[test]
fn verify_exit_codes() {
    let out = run(&[
        "verify",
        "--suite",
        "brillinger",
        "--n",
        "3",
        "--lattice",
        "nc",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["passed"], true);
    assert_eq!(value["rows"][2]["nonzero_terms"], serde_json::json!([]));

    // Unknown suite and missing seed are usage errors (exit 2).
    let out = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "--suite", "roundtrip", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    // Malformed partition text is a usage error too.
    let out = run(&["kreweras", "--pi", "1,2|x"]);
    assert_eq!(out.status.code(), Some(2));
    // Crossing input to kreweras is a domain error.
    let out = run(&["kreweras", "--pi", "1,3|2,4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_config_gives_identical_bytes() {
    let args = [
        "verify",
        "--suite",
        "roundtrip",
        "--n",
        "4",
        "--seed",
        "7",
        "--format",
        "json",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let args = [
        "sequence", "--kind", "btilde", "--n", "6", "--N", "2", "--format", "csv",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("noncrossing-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("seq.txt");
    let out = run(&[
        "sequence",
        "--kind",
        "a",
        "--n",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "1,2,6,22\n");
    std::fs::remove_dir_all(&dir).ok();
}
