//! The documented examples, byte for byte, through the real binary.

use std::path::Path;
use std::process::Command;

fn check(args: &[&str], golden: &str, code: i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_ordo"))
        .args(args)
        .env_remove("ORDO_BUDGET")
        .output()
        .expect("run ordo");
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(golden);
    let expected = std::fs::read(&path).expect("golden file");
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&expected),
        "{golden}"
    );
    assert_eq!(out.status.code(), Some(code), "{golden}");
    // the in-process entry point agrees with the binary
    let inproc = ordo_cli::run(std::iter::once("ordo").chain(args.iter().copied()));
    assert_eq!(inproc.stdout.as_bytes(), &expected[..]);
    assert_eq!(inproc.code, code);
}

#[test]
fn extreme_points_golden() {
    check(&["extreme-points", "--group", "zn:1", "--window", "ball:2"], "extreme_points.json", 0);
}

#[test]
fn check_axioms_golden() {
    check(
        &["check-axioms", "--group", "zn:1", "--construct", "iota", "--window", "ball:3", "--total"],
        "check_axioms_iota.json",
        1,
    );
}

#[test]
fn solve_peel_golden() {
    check(
        &["solve", "peel", "--group", "zn:1", "--window", "ball:1", "--R", "[\"1\"]", "--total"],
        "solve_peel.json",
        0,
    );
}
