//! End-to-end tests of the binary: every model written by `embed` must be
//! accepted by `verify` running as a separate process, outputs must be
//! byte-deterministic, and exit codes must follow the 0/1/2 contract.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cubeminor"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(path: &Path, content: &str) {
    fs::write(path, content).unwrap();
}

const PETERSEN: &str =
    "# petersen\n0 1\n1 2\n2 3\n3 4\n4 0\n0 5\n1 6\n2 7\n3 8\n4 9\n5 7\n7 9\n9 6\n6 8\n8 5\n";
const K4: &str = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

#[test]
fn embed_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("petersen.txt");
    let model = dir.path().join("model.json");
    write(&graph, PETERSEN);

    let out = run(&[
        "embed",
        "-i",
        graph.to_str().unwrap(),
        "-o",
        model.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("a=5 L=10 k_t=4 d=13"));

    let out = run(&[
        "verify",
        "-i",
        graph.to_str().unwrap(),
        "-m",
        model.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("valid"));
}

#[test]
fn verify_rejects_corrupted_model_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("petersen.txt");
    let model = dir.path().join("model.json");
    write(&graph, PETERSEN);
    let out = run(&[
        "embed",
        "-i",
        graph.to_str().unwrap(),
        "-o",
        model.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    // Copy branch set 0 over branch set 1: a forced overlap.
    let mut value: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&model).unwrap()).unwrap();
    let set0 = value["branch_sets"]["0"].clone();
    value["branch_sets"]["1"] = set0;
    write(&model, &value.to_string());

    let out = run(&[
        "verify",
        "-i",
        graph.to_str().unwrap(),
        "-m",
        model.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("BranchOverlap"), "{}", stderr(&out));
}

#[test]
fn embed_with_infeasible_dimension_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("petersen.txt");
    write(&graph, PETERSEN);
    let out = run(&[
        "embed",
        "-i",
        graph.to_str().unwrap(),
        "-d",
        "12",
        "-o",
        dir.path().join("m.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("minimal feasible d is 13"));
}

#[test]
fn missing_file_and_bad_flags_exit_2() {
    let out = run(&[
        "verify",
        "-i",
        "/nonexistent/g.txt",
        "-m",
        "/nonexistent/m.json",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["embed", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decompose_checks_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let perm = dir.path().join("perm.txt");
    let factors = dir.path().join("factors.txt");
    write(&perm, "# a 4-cycle on the square\n1\n3\n0\n2\n");

    let args = [
        "decompose",
        "--shape",
        "2,2",
        "-i",
        perm.to_str().unwrap(),
        "-o",
        factors.to_str().unwrap(),
        "--check",
    ];
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("factors=3 directions=2,1,2"));
    assert!(stdout(&out).contains("check=ok"));
    let first = fs::read(&factors).unwrap();

    let out = run(&args);
    assert!(out.status.success());
    assert_eq!(
        fs::read(&factors).unwrap(),
        first,
        "output must be byte-stable"
    );
}

#[test]
fn expander_gen_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("cubic.txt");
    let args = [
        "expander",
        "gen",
        "--n2",
        "10",
        "--seed",
        "7",
        "-o",
        graph.to_str().unwrap(),
    ];
    let out = run(&args);
    assert!(out.status.success(), "{}", stderr(&out));
    let first = fs::read(&graph).unwrap();
    let out = run(&args);
    assert!(out.status.success());
    assert_eq!(fs::read(&graph).unwrap(), first, "same seed, same bytes");

    let out = run(&["--json", "expander", "check", "-i", graph.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["beta"], "9/50");
    assert!(report["worst_ratio"].is_string());

    let out = run(&[
        "expander",
        "check",
        "-i",
        graph.to_str().unwrap(),
        "--beta",
        "1/1000",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("passes=true"));
}

#[test]
fn bound_workflows() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("k4.txt");
    write(&graph, K4);

    let out = run(&[
        "bound",
        "certify",
        "-i",
        graph.to_str().unwrap(),
        "--d",
        "2",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("certified=true"));
    assert!(text.contains("min_lower_bound=6"));

    let placement = dir.path().join("place.txt");
    write(&placement, "0 00\n1 10\n2 01\n3 11\n");
    let out = run(&[
        "--json",
        "bound",
        "place",
        "-i",
        graph.to_str().unwrap(),
        "-p",
        placement.to_str().unwrap(),
        "--d",
        "2",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["hamming_sum"], 8);
    assert_eq!(report["lower_bound"], 6);
    assert_eq!(report["host_capacity"], 4);

    let out = run(&["--json", "bound", "theorem", "--d", "2001"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["holds"], true);
    assert_eq!(report["tail_ok"], true);

    let out = run(&["bound", "theorem", "--d", "100"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("holds=false"));

    let out = run(&["bound", "tail", "--d", "8"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("tail=37"));
}

#[test]
fn embed_output_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("k4.txt");
    write(&graph, K4);
    let model_a = dir.path().join("a.json");
    let model_b = dir.path().join("b.json");
    let out = run(&[
        "embed",
        "-i",
        graph.to_str().unwrap(),
        "-o",
        model_a.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&[
        "embed",
        "-i",
        graph.to_str().unwrap(),
        "-o",
        model_b.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(fs::read(&model_a).unwrap(), fs::read(&model_b).unwrap());
}
