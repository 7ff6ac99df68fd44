//! End-to-end tests of the binary against checked-in golden outputs.

use std::fs;
use std::path::Path;
use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_torus-classify");

fn run(args: &[&str]) -> (String, String, Option<i32>) {
    let out = Command::new(BIN)
        .args(args)
        .env_remove("TORUS_PSI_BOUND")
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code(),
    )
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    fs::read_to_string(path).unwrap()
}

#[test]
fn tables_match_golden() {
    let (stdout, stderr, code) = run(&["tables", "--paper"]);
    assert_eq!(stderr, "");
    assert_eq!(code, Some(0));
    assert_eq!(stdout, golden("tables.txt"));
}

#[test]
fn classify_outputs_match_golden() {
    let cases = [
        (vec!["classify", "SU(2)xSU(2)"], "classify_su2su2.txt"),
        (
            vec!["classify", "SO(3)xT^1", "--json"],
            "classify_so3t1.jsonl",
        ),
        (
            vec!["classify", "SO(4)xSO(4)", "--family"],
            "family_so4so4.txt",
        ),
        (vec!["classify", "SU(2)xSO(5)xT^1"], "classify_su2so5t1.txt"),
    ];
    for (args, file) in cases {
        let (stdout, stderr, code) = run(&args);
        assert_eq!(stderr, "", "{:?}", args);
        assert_eq!(code, Some(0), "{:?}", args);
        assert_eq!(stdout, golden(file), "{:?}", args);
    }
}

#[test]
fn output_is_deterministic() {
    let a = run(&["classify", "SO(3)xSO(3)xT^1"]);
    let b = run(&["classify", "SO(3)xSO(3)xT^1"]);
    assert_eq!(a, b);
    assert_eq!(a.2, Some(0));
}

#[test]
fn exit_codes() {
    // usage errors
    let (_, _, code) = run(&["frobnicate"]);
    assert_eq!(code, Some(2));
    let (_, _, code) = run(&["classify"]);
    assert_eq!(code, Some(2));
    let (_, stderr, code) = run(&["classify", "G2"]);
    assert_eq!(code, Some(2));
    assert!(stderr.contains("parse error"));
    let (_, _, code) = run(&["classify", "SU(2)", "--bogus"]);
    assert_eq!(code, Some(2));

    // classification errors
    let (_, stderr, code) = run(&["classify", "SO(4)xSO(3)"]);
    assert_eq!(code, Some(1));
    assert!(stderr.contains("SO(2l)"), "{}", stderr);
    let (_, stderr, code) = run(&["classify", "Sp(3)"]);
    assert_eq!(code, Some(1), "{}", stderr);
    assert!(stderr.contains("Sp(3)"), "{}", stderr);

    // torus rank outside the catalog
    let (_, stderr, code) = run(&["classify", "SU(2)xT^3"]);
    assert_eq!(code, Some(1));
    assert!(stderr.contains("torus rank"), "{}", stderr);

    // check passes
    let (stdout, _, code) = run(&["check"]);
    assert_eq!(code, Some(0));
    assert_eq!(stdout.lines().count(), 10);
    assert!(stdout.lines().all(|l| l.contains("PASS")));
}

#[test]
fn psi_bound_env_var() {
    let out = Command::new(BIN)
        .args(["classify", "SU(2)xT^1"])
        .env("TORUS_PSI_BOUND", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let wide = String::from_utf8(out.stdout).unwrap();
    let narrow = run(&["classify", "SU(2)xT^1"]).0;
    // widening the bound adds the weight-two bundle class
    assert!(wide.lines().count() > narrow.lines().count());
    assert!(wide.contains("psi=[(-2)]"));
}
