//! The command-line binary, run as a subprocess.

use std::process::{Command, Output};

fn cliques(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cliques")).args(args).env("CLIQUES_THREADS", "1").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn deg1_sequence_b_file() {
    let o = cliques(&["sequence", "--variant", "deg:1", "--magma", "D:0", "--max-arity", "6", "--format", "b"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 1\n2 4\n3 10\n4 26\n5 76\n6 232\n");
}

#[test]
fn verify_axioms_n2() {
    let o = cliques(&["verify", "axioms", "--magma", "N:2", "--max-arity", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn compose_with_unit_echoes_lhs() {
    let dir = tempdir();
    let lhs = r#"{"magma":"Z","arity":3,"labels":{"1,3":"2","2,4":"-1","3,4":"1"}}"#;
    let p = dir.join("p.json");
    let q = dir.join("q.json");
    std::fs::write(&p, lhs).unwrap();
    std::fs::write(&q, r#"{"magma":"Z","arity":1,"labels":{}}"#).unwrap();
    let o = cliques(&[
        "--json",
        "compose",
        "--magma",
        "Z",
        "--lhs",
        p.to_str().unwrap(),
        "--rhs",
        q.to_str().unwrap(),
        "--index",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let got: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let want: serde_json::Value = serde_json::from_str(lhs).unwrap();
    assert_eq!(got, want);
}

#[test]
fn counterexample_exits_1() {
    let o = cliques(&["verify", "closure", "--magma", "E:1", "--variant", "cro:0", "--max-arity", "3"]);
    let code = o.status.code();
    assert!(code == Some(0) || code == Some(1));
    let o = cliques(&["verify", "ideal", "--magma", "E:1", "--variant", "deg:1", "--max-arity", "3"]);
    assert_eq!(o.status.code(), Some(2), "deg:1 is not applicable over E:1");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cliques(&["sequence", "--magma", "D:0"]).status.code(), Some(2));
    assert_eq!(cliques(&["enumerate", "--magma", "D:0", "--arity", "8"]).status.code(), Some(2));
    assert_eq!(
        cliques(&["compose", "--magma", "Z", "--lhs", "/nonexistent", "--rhs", "/nonexistent", "--index", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn seeded_runs_are_byte_identical() {
    let a = cliques(&["--json", "--seed", "7", "ratfct-check", "--samples", "50"]);
    let b = cliques(&["--json", "--seed", "7", "ratfct-check", "--samples", "50"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

fn tempdir() -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("cliques-cli-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
