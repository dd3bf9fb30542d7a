use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn leavitt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leavitt"))
        .args(args)
        .env_remove("LPA_FIELD")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const R2: &str = "vertex v\nedge d v v\nedge e v v\nspecial v e\n";

#[test]
fn graph_file_and_special_override() {
    let g = file(R2);
    let path = g.path().to_str().unwrap();
    let out = leavitt(&["--graph", path, "validate"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("special v e"));
    let out = leavitt(&["--graph", path, "--special", "d", "validate"]);
    assert!(stdout(&out).contains("special v d"));
}

#[test]
fn basis_counts() {
    let out = leavitt(&[
        "--example",
        "two-loops",
        "--special",
        "d",
        "basis",
        "--max-len",
        "2",
    ]);
    assert_eq!(stdout(&out).lines().count(), 16);
    let out = leavitt(&[
        "--example",
        "two-loops",
        "--format",
        "json",
        "basis",
        "--max-len",
        "1",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
}

#[test]
fn multiplication_over_both_fields() {
    let out = leavitt(&["--example", "two-loops", "--special", "d", "mul", "d", "d*"]);
    assert_eq!(stdout(&out), "v - e.e*\n");
    let out = Command::new(env!("CARGO_BIN_EXE_leavitt"))
        .args([
            "--example",
            "two-loops",
            "--special",
            "d",
            "mul",
            "2*d",
            "3*d*",
        ])
        .env("LPA_FIELD", "gf:5")
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "v + 4*e.e*\n");
    let bad = Command::new(env!("CARGO_BIN_EXE_leavitt"))
        .args(["--example", "two-loops", "mul", "d", "d"])
        .env("LPA_FIELD", "gf:4")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn erg_round_trips_through_classify() {
    let out = leavitt(&["--example", "two-cycle", "erg", "cycle:g.h", "--depth", "4"]);
    assert!(out.status.success());
    let f = file(&stdout(&out));
    let path = f.path().to_str().unwrap();
    let valid = leavitt(&["--example", "two-cycle", "validate", "--erg", path]);
    assert!(stdout(&valid).starts_with("valid"), "{}", stdout(&valid));
    let class = leavitt(&["--example", "two-cycle", "classify", "--erg", path]);
    assert_eq!(stdout(&class), "cycle:g.h\n");
}

#[test]
fn truncations_cannot_be_classified() {
    let out = leavitt(&["--example", "two-loops", "erg", "source:v", "--depth", "1"]);
    let f = file(&stdout(&out));
    let class = leavitt(&[
        "--example",
        "two-loops",
        "classify",
        "--erg",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(class.status.code(), Some(1));
}

#[test]
fn dot_output_marks_frontier_and_ghosts() {
    let out = leavitt(&[
        "--example",
        "two-loops",
        "--format",
        "dot",
        "erg",
        "cycle:e*",
        "--depth",
        "2",
    ]);
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("style=dashed"));
    assert!(dot.contains("style=dotted"));
}

#[test]
fn ghost_spine_action() {
    let args = [
        "--example",
        "two-loops",
        "--special",
        "d",
        "act",
        "--descriptor",
        "cycle:e*",
        "--depth",
        "6",
    ];
    let run = |v: &str, a: &str| {
        stdout(&leavitt(
            &[&args[..], &["--vertex", v, "--element", a]].concat(),
        ))
    };
    assert_eq!(run("w_{1}", "d*"), "w_{1,d*}\n");
    assert_eq!(run("w_{1,d*}", "d*"), "w_{1,d*.d*}\n");
    assert_eq!(run("w_{1,d*}", "d"), "w_{1}\n");
    assert_eq!(run("w_{1,d*}", "e"), "0\n");
    assert!(run("w_{1,d*.d*.d*.d*.d*.d*}", "d*").starts_with("undefined"));
}

#[test]
fn schur_exit_codes() {
    let pass = leavitt(&[
        "--example",
        "two-loops",
        "--special",
        "e",
        "check-schur",
        "e",
        "--depths",
        "4,5",
    ]);
    assert_eq!(pass.status.code(), Some(0));
    assert!(stdout(&pass).ends_with("PASS\n"));
    let no_exit = leavitt(&["--example", "one-loop", "check-schur", "e"]);
    assert_eq!(no_exit.status.code(), Some(1));
    assert!(stdout(&no_exit).contains("note: no exit"));
    let json = leavitt(&[
        "--example",
        "two-loops",
        "--special",
        "d",
        "--format",
        "json",
        "check-schur",
        "e",
        "--depths",
        "3",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["preconditions"]["all_special"], false);
    assert_eq!(json.status.code(), Some(1));
    let ghost = leavitt(&["--example", "two-loops", "check-schur", "e*"]);
    assert_eq!(ghost.status.code(), Some(1));
}

#[test]
fn hom_between_disjoint_loops() {
    let out = leavitt(&[
        "--example",
        "disjoint-loops",
        "--format",
        "json",
        "check-hom",
        "cycle:c",
        "cycle:c'",
        "--depths",
        "4,5,6",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dimensions"], serde_json::json!([0, 0, 0]));
}

#[test]
fn representatives_listing() {
    let out = leavitt(&[
        "--example",
        "two-loops",
        "representatives",
        "--max-cycle",
        "1",
        "--max-period",
        "1",
    ]);
    assert_eq!(stdout(&out).lines().count(), 9);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(leavitt(&["basis"]).status.code(), Some(2));
    assert_eq!(
        leavitt(&["--example", "nope", "basis"]).status.code(),
        Some(2)
    );
    assert_eq!(
        leavitt(&["--example", "two-loops", "--format", "dot", "mul", "d", "e"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        leavitt(&["--example", "two-loops", "frobnicate"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn domain_errors_exit_with_one() {
    let bad = file("vertex v\nedgy d v v\n");
    let out = leavitt(&["--graph", bad.path().to_str().unwrap(), "validate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(
        leavitt(&["--example", "two-loops", "mul", "d", "q"])
            .status
            .code(),
        Some(1)
    );
}
