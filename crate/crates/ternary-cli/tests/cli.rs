//! End-to-end command-line behavior: the gen -> verify and
//! gen -> lower -> verify pipelines, exit codes, and the classical-run
//! and matrix commands.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_ternary")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ternary-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn ternary(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn ternary_path(args: &[&str], path: &Path, tail: &[&str]) -> Output {
    Command::new(bin()).args(args).arg(path).args(tail).output().unwrap()
}

#[test]
fn gen_verify_pipeline_all_kinds() {
    let kinds: Vec<(Vec<&str>, &str)> = vec![
        (vec!["gen", "ripple-adder"], "add"),
        (vec!["gen", "ripple-adder", "--mod"], "add-mod"),
        (vec!["gen", "cla-adder", "--variant", "out-of-place"], "add"),
        (vec!["gen", "cla-adder", "--variant", "in-place"], "add"),
        (vec!["gen", "cla-adder", "--variant", "out-of-place", "--mod"], "add-mod"),
        (vec!["gen", "cla-adder", "--variant", "in-place", "--mod"], "add-mod"),
        (vec!["gen", "subtractor", "--method", "ripple"], "sub"),
        (vec!["gen", "subtractor", "--method", "ripple", "--borrow"], "sub"),
        (vec!["gen", "subtractor", "--method", "cla"], "sub"),
        (vec!["gen", "subtractor", "--method", "cla", "--borrow"], "sub"),
        (vec!["gen", "comparator", "--method", "ripple"], "cmp"),
        (vec!["gen", "comparator", "--method", "cla"], "cmp"),
    ];
    for n in 1..=5usize {
        let n_str = n.to_string();
        for (i, (gen_args, spec)) in kinds.iter().enumerate() {
            let file = tmp(&format!("pipe{n}_{i}.t3"));
            let mut args = gen_args.clone();
            args.extend(["--n", &n_str, "-o"]);
            let out = ternary_path(&args, &file, &[]);
            assert!(
                out.status.success(),
                "{gen_args:?} n={n}: {}",
                String::from_utf8_lossy(&out.stderr)
            );
            let v = ternary_path(
                &["verify", "--spec", spec, "--n", &n_str, "-i"],
                &file,
                &["--exhaustive", "--jobs", "2"],
            );
            assert_eq!(
                v.status.code(),
                Some(0),
                "{gen_args:?} n={n}: {}",
                String::from_utf8_lossy(&v.stdout)
            );
        }
    }
}

#[test]
fn gen_summaries_quote_headline_resources() {
    let file = tmp("headline.t3");
    let out = ternary_path(
        &["gen", "cla-adder", "--n", "10", "--variant", "out-of-place", "-o"],
        &file,
        &[],
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("ancillas=5"), "{stdout}");
    assert!(stdout.contains("depth=10"), "{stdout}");

    let out = ternary_path(&["gen", "ripple-adder", "--n", "3", "-o"], &file, &[]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("depth=12"), "{stdout}");
}

#[test]
fn gen_lower_verify_both_bases() {
    let src = tmp("lower-src.t3");
    let out = ternary_path(&["gen", "ripple-adder", "--n", "2", "-o"], &src, &[]);
    assert!(out.status.success());

    let cx = tmp("lower-cx.t3");
    let out = Command::new(bin())
        .args(["lower", "--basis", "cx", "-i"])
        .arg(&src)
        .arg("-o")
        .arg(&cx)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = ternary_path(&["verify", "--spec", "add", "--n", "2", "-i"], &cx, &["--exhaustive"]);
    assert_eq!(v.status.code(), Some(0), "{}", String::from_utf8_lossy(&v.stdout));

    let sm = tmp("lower-superm.t3");
    let out = Command::new(bin())
        .args(["lower", "--basis", "superm", "-i"])
        .arg(&cx)
        .arg("-o")
        .arg(&sm)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    // the supermetaplectic circuit is verified through the exact sparse
    // simulator; keep the sample count modest
    let v = ternary_path(
        &["verify", "--spec", "add", "--n", "2", "-i"],
        &sm,
        &["--samples", "25", "--seed", "9"],
    );
    assert_eq!(v.status.code(), Some(0), "{}", String::from_utf8_lossy(&v.stdout));
}

#[test]
fn lower_cx_to_superm_counts() {
    // a single CX lowers to exactly three P9 gates
    let src = tmp("one-cx.t3");
    std::fs::write(&src, "QUTRITS 2\nCX[2] 0 1\n").unwrap();
    let out = ternary_path(&["lower", "--basis", "superm", "-i"], &src, &[]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("P9=3"), "{stdout}");

    // a supermetaplectic circuit has no CX lowering
    let p9 = tmp("one-p9.t3");
    std::fs::write(&p9, "QUTRITS 1\nP9 0\n").unwrap();
    let out = ternary_path(&["lower", "--basis", "cx", "-i"], &p9, &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_detects_mutation() {
    let file = tmp("mutant.t3");
    let out = ternary_path(&["gen", "ripple-adder", "--n", "2", "-o"], &file, &[]);
    assert!(out.status.success());
    // drop the final SUM gate
    let text = std::fs::read_to_string(&file).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    let last_sum = lines.iter().rposition(|l| l.starts_with("SUM")).unwrap();
    lines.remove(last_sum);
    std::fs::write(&file, lines.join("\n") + "\n").unwrap();

    let v = ternary_path(&["verify", "--spec", "add", "--n", "2", "-i"], &file, &["--exhaustive"]);
    assert_eq!(v.status.code(), Some(1));
    let stdout = String::from_utf8(v.stdout).unwrap();
    assert!(stdout.contains("FAIL"));
    assert!(stdout.contains("counterexample"), "{stdout}");
    // the worker pool reports the same first-in-order counterexample
    let v4 = ternary_path(
        &["verify", "--spec", "add", "--n", "2", "-i"],
        &file,
        &["--exhaustive", "--jobs", "4"],
    );
    assert_eq!(v4.status.code(), Some(1));
    let with_jobs = String::from_utf8(v4.stdout).unwrap();
    assert_eq!(
        stdout.lines().skip(1).collect::<Vec<_>>(),
        with_jobs.lines().skip(1).collect::<Vec<_>>(),
    );
}

#[test]
fn run_applies_the_circuit() {
    // ripple n=2: a=5 (trits 21), b=7 (trits 12), cin=0 -> sum 12
    let file = tmp("run.t3");
    assert!(ternary_path(&["gen", "ripple-adder", "--n", "2", "-o"], &file, &[]).status.success());
    // wires: CIN=0, A0=1, B0=2, A1=3, B1=4, OVF=5
    // a=5 -> a0=2,a1=1; b=7 -> b0=1,b1=2
    let out = ternary_path(&["run", "-i"], &file, &["--input", "021120"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    // 5+7 = 12 = 110_3: B holds s0=0, s1=1, OVF=1; A and CIN restored
    assert_eq!(stdout.trim(), "020111");
}

#[test]
fn run_rejects_non_classical() {
    let p9 = tmp("run-p9.t3");
    std::fs::write(&p9, "QUTRITS 1\nP9 0\n").unwrap();
    let out = ternary_path(&["run", "-i"], &p9, &["--input", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn matrix_prints_exact_entries() {
    let h = tmp("h.t3");
    std::fs::write(&h, "QUTRITS 1\nH 0\n").unwrap();
    let out = ternary_path(&["matrix", "-i"], &h, &[]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("/3^1"), "entries over a common power-of-3 denominator: {stdout}");

    // monomial fast path past the dense bound
    let wide = tmp("wide.t3");
    std::fs::write(&wide, "QUTRITS 4\nSUM 0 1\nP9 3\n").unwrap();
    let out = ternary_path(&["matrix", "-i"], &wide, &[]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("monomial"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(ternary(&["gen", "cla-adder", "--n", "0"]).status.code(), Some(2));
    assert_eq!(ternary(&["gen", "mystery", "--n", "3"]).status.code(), Some(2));
    assert_eq!(ternary(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ternary(&[]).status.code(), Some(2));
    // parse error in the input file
    let bad = tmp("bad.t3");
    std::fs::write(&bad, "QUTRITS 2\nSUM 0\n").unwrap();
    assert_eq!(ternary_path(&["report", "-i"], &bad, &[]).status.code(), Some(2));
}

#[test]
fn exhaustive_bound_refuses_politely() {
    let file = tmp("big.t3");
    assert!(ternary_path(&["gen", "ripple-adder", "--n", "8", "-o"], &file, &[]).status.success());
    let out = Command::new(bin())
        .args(["verify", "--spec", "add", "--n", "8", "-i"])
        .arg(&file)
        .arg("--exhaustive")
        .env("TERNARY_MAX_STATES", "531441")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--samples"));
}

#[test]
fn selftest_passes() {
    let out = ternary(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
