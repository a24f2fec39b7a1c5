use std::fs;
use std::path::Path;
use std::process::Command;

use mme_cli::{evaluate_file, parse_instance};
use mme_core::{Backend, BigInt, Rational};

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn mme(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mme")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const INT: &str = "mode int\nm 1\nd 2\nn 1\ns 8\ncoefficients\n0 1\npoints\n3\n";
const RAT: &str = "mode rat\nm 1\nd 2\nn 1\ns 2\ncoefficients\n0 1\npoints\n2/3\n";
const APPROX: &str = "mode approx\nm 2\nd 2\nn 1\nt 10\ncoefficients\n0 0 0 1\npoints\n1/2 1/2\n";

#[test]
fn eval_int_prints_value() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "int.txt", INT);
    assert_eq!(mme(&["eval-int", "--input", &input]), (0, "3\n".into(), String::new()));
}

#[test]
fn eval_int_without_s_uses_naive_bound() {
    let dir = tempfile::tempdir().unwrap();
    let text = "mode int\nm 2\nd 3\nn 2\ncoefficients\n1 0 0 0 -2 0 0 0 5\npoints\n-4 9\n1000 -1000\n";
    let input = write(dir.path(), "int.txt", text);
    // 1 - 2 x y + 5 x^2 y^2
    let (code, out, _) = mme(&["eval-int", "--input", &input, "--backend", "monomial"]);
    assert_eq!(code, 0);
    assert_eq!(out, "6553\n5000002000001\n");
}

#[test]
fn eval_rat_prints_fraction() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "rat.txt", RAT);
    assert_eq!(mme(&["eval-rat", "--input", &input]).1, "2/3\n");
}

#[test]
fn eval_approx_is_within_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "approx.txt", APPROX);
    let output = dir.path().join("out.txt");
    let code = mme_cli::run(["mme", "eval-approx", "--input", &input, "--output", output.to_str().unwrap()]);
    assert_eq!(code, 0);
    let line = fs::read_to_string(&output).unwrap();
    let (b, exp) = line.trim().split_once("/2^").unwrap();
    assert_eq!(exp, "10");
    let b: i64 = b.parse().unwrap();
    // |1/4 - b/1024| < 1/1024
    assert!((b - 256).abs() < 1, "b = {b}");
}

#[test]
fn eval_approx_complex() {
    let dir = tempfile::tempdir().unwrap();
    let text = "mode approx-complex\nm 1\nd 3\nn 1\ncoefficients\n0,0 0,0 1,0\npoints\n0,1/2\n";
    let input = write(dir.path(), "c.txt", text);
    let (code, out, _) = mme(&["eval-approx-complex", "--input", &input, "--t", "8"]);
    assert_eq!(code, 0);
    let (re, im) = out.trim().split_once(',').unwrap();
    let parse = |x: &str| x.split_once("/2^").unwrap().0.parse::<i64>().unwrap();
    assert!((parse(re) + 64).abs() < 1, "{out}");
    assert!(parse(im).abs() < 1, "{out}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // 49/81 cannot be reconstructed with s = 4
    let bad_rat = "mode rat\nm 1\nd 3\nn 1\ns 4\ncoefficients\n0 0 1\npoints\n7/9\n";
    let input = write(dir.path(), "bad.txt", bad_rat);
    assert_eq!(mme(&["eval-rat", "--input", &input]).0, 2);

    let dishonest = "mode int\nm 1\nd 4\nn 1\ns 4\ncoefficients\n0 0 0 1\npoints\n7\n";
    let input = write(dir.path(), "dishonest.txt", dishonest);
    assert_eq!(mme(&["eval-int", "--input", &input]).0, 2);

    let truncated = "mode int\nm 2\nd 2\nn 1\ncoefficients\n1 2 3\npoints\n1 1\n";
    let input = write(dir.path(), "trunc.txt", truncated);
    let (code, _, err) = mme(&["eval-int", "--input", &input]);
    assert_eq!(code, 1);
    assert!(err.contains("line 7") && err.contains("d^m = 4"), "{err}");

    let input = write(dir.path(), "int.txt", INT);
    assert_eq!(mme(&["eval-rat", "--input", &input]).0, 1);
    assert_eq!(mme(&["eval-int", "--input", &input, "--backend", "fft"]).0, 1);
    assert_eq!(mme(&["eval-int", "--input", "/nonexistent/instance"]).0, 1);
    assert_eq!(mme(&["frobnicate"]).0, 1);
    let no_t = write(dir.path(), "no_t.txt", &APPROX.replace("t 10\n", ""));
    assert_eq!(mme(&["eval-approx", "--input", &no_t]).0, 1);
    assert_eq!(mme(&["--help"]).0, 0);
}

#[test]
fn output_has_one_line_per_point() {
    let text = "mode rat\nm 2\nd 2\nn 4\ns 8\ncoefficients\n0 1/2 1/3 -1\npoints\n1/2 1/3\n-1/5 0\n0 0\n3/7 -2/9\n";
    let file = parse_instance(text).unwrap();
    let lines = evaluate_file(&file, Backend::default(), None, None).unwrap();
    assert_eq!(lines.len(), 4);
    // y/2 + x/3 - x y
    let expect = |x: Rational, y: Rational| -> Rational {
        &y / Rational::from_integer(BigInt::from(2)) + &x / Rational::from_integer(BigInt::from(3)) - &x * &y
    };
    let q = |a: i64, b: i64| Rational::new(a.into(), b.into());
    assert_eq!(lines[0], mme_core::numerics::format_rational(&expect(q(1, 2), q(1, 3))));
    assert_eq!(lines[2], "0/1");
}

#[test]
fn canonical_files_round_trip() {
    for text in [INT, RAT, APPROX] {
        let once = parse_instance(text).unwrap().serialize();
        assert_eq!(parse_instance(&once).unwrap().serialize(), once);
    }
}

#[test]
fn stdin_input() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_mme"))
        .args(["eval-int", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(INT.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "3\n");
}
