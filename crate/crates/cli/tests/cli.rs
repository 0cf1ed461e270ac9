use std::path::Path;
use std::process::{Command, Output};

use ohtsuki_core::harness::{congruence_sweep, Corpus, Report, SweepReport};
use ohtsuki_core::skein::SkeinEngine;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ohtsuki"))
        .args(args)
        .env_remove("OHTSUKI_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn jones_output() {
    let o = run(&["invariant", "braid:2:1,1,1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l == "t + t^3 - t^4"));
    let o = run(&["invariant", "braid:1:"]);
    assert!(stdout(&o).lines().any(|l| l == "1"));
    let o = run(&["invariant", "--which", "conway", "4_1"]);
    assert!(stdout(&o).lines().any(|l| l == "1 - z^2"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(code(&run(&["invariant", "X(1,2,3"])), 2);
    assert_eq!(code(&run(&["invariant", "no-such-knot"])), 2);
    assert_eq!(code(&run(&["lambda", "braid:2:1,1", "--framing", "1,1"])), 2);
    assert_eq!(code(&run(&["lambda", "trefoil+"])), 2);
    assert_eq!(code(&run(&["--primes", "9", "fermat", "gauss"])), 2);
}

#[test]
fn resource_and_precision_exit_three() {
    assert_eq!(code(&run(&["--max-crossings", "2", "invariant", "trefoil+"])), 3);
    let o = run(&["--precision-m", "1", "fermat", "tau", "--entry", "trefoil-", "--prime", "5"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--precision-m"));
    assert_eq!(code(&run(&["--max-cable", "2", "fermat", "tau", "--entry", "trefoil-", "--prime", "11"])), 3);
}

fn lambdas(args: &[&str]) -> (String, String) {
    let o = run(args);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let l = &v["body"]["lambda"];
    (l["lambda1"].as_str().unwrap().to_string(), l["lambda2"].as_str().unwrap().to_string())
}

#[test]
fn lambda_reports() {
    let pair = |e: &str, n: &str| lambdas(&["--format", "json", "lambda", e, "--n", n]);
    assert_eq!(pair("trefoil+", "1"), ("6".into(), "63".into()));
    assert_eq!(pair("trefoil-", "1"), ("6".into(), "39".into()));
    assert_eq!(pair("unknot", "5"), ("0".into(), "0".into()));
    assert_eq!(pair("4_1", "1"), ("-6".into(), "69".into()));
    let asl = lambdas(&["--format", "json", "lambda", "trefoil-", "--framing", "+1"]);
    assert_eq!(asl, ("6".into(), "39".into()));
}

#[test]
fn sweep_bundled_corpus() {
    let o = run(&["sweep"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains(" 0 violations"));
}

#[test]
fn sweep_json_round_trip() {
    let o = run(&["--format", "json", "sweep", "--n", "-1,1"]);
    assert_eq!(code(&o), 0);
    let report: Report<SweepReport> = serde_json::from_str(&stdout(&o)).unwrap();
    let direct = congruence_sweep(&SkeinEngine::default(), &Corpus::bundled(), &[-1, 1]);
    assert_eq!(report.body, direct);
    assert!(report.pass);
    assert_eq!(report.header.command_line[1..], ["--format", "json", "sweep", "--n", "-1,1"]);
}

#[test]
fn sweep_corpus_files() {
    let dir = tempfile::tempdir().unwrap();
    let single = dir.path().join("single.txt");
    std::fs::write(&single, "u | braid | 1:\n").unwrap();
    let o = run(&["sweep", "--corpus", single.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("4 rows, 0 violations"));

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "# c\nt | braid | 2:1,1,1\nbroken line\n").unwrap();
    let o = run(&["sweep", "--corpus", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(code(&run(&["sweep", "--corpus", "/nonexistent/corpus.txt"])), 4);
}

#[test]
fn fermat_reports() {
    let o = run(&["fermat", "gauss", "--l", "1", "--primes", "5,7,11", "--order", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains(" 0 failures"));
    let o = run(&["fermat", "fixtures", "--max-prime", "199"]);
    assert_eq!(code(&o), 0);
    let o = run(&["--format", "json", "fermat", "tau", "--entry", "trefoil-", "--framing", "+1", "--prime", "5"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let a1 = v["body"]["records"].as_array().unwrap().iter().find(|r| r["index"] == 1).unwrap().clone();
    assert_eq!(a1["computed"], 1);
    assert_eq!(a1["verdict"], "pass");
    assert_eq!(code(&run(&["fermat", "hlimit", "--primes", "5,7,11,13"])), 0);
}

fn body(o: &Output) -> Value {
    serde_json::from_str::<Value>(&stdout(o)).unwrap()["body"].clone()
}

#[test]
fn cache_is_a_pure_memo() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["--format", "json", "--order", "3", "lambda", "5_2", "--framing", "-1"];
    let plain = run(&args);
    let mut cached_args = vec!["--cache", cache];
    cached_args.extend(args);
    let cold = run(&cached_args);
    assert!(Path::new(cache).join("jones-cache.tsv").exists());
    let warm = run(&cached_args);
    assert_eq!(body(&plain), body(&cold));
    assert_eq!(body(&plain), body(&warm));

    let env_dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_ohtsuki"))
        .args(["--cache", cache, "invariant", "6_1"])
        .env("OHTSUKI_CACHE_DIR", env_dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(env_dir.path().join("jones-cache.tsv").exists());
}
