use std::io::Write;
use std::process::{Command, Output};

use proptest::prelude::*;
use sigbkg_cli::format::{sig, sig3};

fn sigbkg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigbkg")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = sigbkg(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn csv_records(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn estimate_worked_example() {
    let out = stdout(&["estimate", "--b", "15.8", "--n", "15"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[1].split_whitespace().collect::<Vec<_>>(), ["p_hat", "0.206"]);
    assert_eq!(lines[2].split_whitespace().collect::<Vec<_>>(), ["p_mle", "1"]);
    assert_eq!(lines[3].split_whitespace().collect::<Vec<_>>(), ["theta_hat", "0"]);
}

#[test]
fn bayes_interval() {
    let out = stdout(&["interval", "--method", "bayes", "--b", "1", "--n", "1", "--level", "0.9", "--format", "csv"]);
    let (_, rows) = csv_records(&out);
    assert_eq!(rows, vec![vec!["1", "1", "bayes", "0.162", "0.862"]]);
}

#[test]
fn table2_block() {
    let out = stdout(&["table2", "--level", "0.1", "--format", "csv"]);
    let (header, rows) = csv_records(&out);
    assert_eq!(header, ["b", "classical_n0", "modified_n0"]);
    let classical: Vec<&str> = rows.iter().map(|r| r[1].as_str()).collect();
    let modified: Vec<&str> = rows.iter().map(|r| r[2].as_str()).collect();
    assert_eq!(classical, ["3", "5", "6", "8", "9", "10", "11", "13", "14", "15"]);
    // from an independent series evaluation of the modified rate
    assert_eq!(modified, ["2", "4", "5", "6", "7", "8", "9", "10", "11", "12"]);
}

#[test]
fn table1_records() {
    let out = stdout(&["table1", "--format", "csv"]);
    let (header, rows) = csv_records(&out);
    assert_eq!(header, ["b", "n", "method", "lower", "upper"]);
    assert_eq!(rows.len(), 51);
    let find = |b: &str, n: &str, m: &str| {
        rows.iter()
            .find(|r| r[0] == b && r[1] == n && r[2] == m)
            .map(|r| (r[3].clone(), r[4].clone()))
            .unwrap()
    };
    assert_eq!(find("1", "2", "bayes"), ("6.78e-3".into(), "0.495".into()));
    assert_eq!(find("5", "7", "conditional"), ("1.37e-3".into(), "1".into()));
    assert_eq!(find("5", "7", "unified"), ("1.61e-3".into(), "1".into()));
    for r in &rows {
        let (lo, hi): (f64, f64) = (r[3].parse().unwrap(), r[4].parse().unwrap());
        assert!(lo <= hi, "{r:?}");
    }
}

#[test]
fn tables_are_deterministic() {
    for args in [&["table1", "--format", "csv"][..], &["table2"][..]] {
        let a = sigbkg(args);
        let b = sigbkg(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn every_emitted_number_round_trips() {
    let out = stdout(&["table1", "--format", "csv"]);
    let (_, rows) = csv_records(&out);
    for r in rows {
        for cell in &r[3..] {
            let x: f64 = cell.parse().unwrap();
            assert_eq!(&sig3(x), cell);
        }
    }
    let out = stdout(&["fig-data", "--which", "mse", "--b", "2", "--format", "csv"]);
    let (_, rows) = csv_records(&out);
    for r in rows {
        let x: f64 = r[2].parse().unwrap();
        assert_eq!(sig(x, 6), r[2]);
    }
}

fn series(rows: &[Vec<String>], name: &str) -> Vec<(f64, f64)> {
    rows.iter()
        .filter(|r| r[1] == name)
        .map(|r| (r[0].parse().unwrap(), r[2].parse().unwrap()))
        .collect()
}

#[test]
fn mse_figure_crossover() {
    let out = stdout(&["fig-data", "--which", "mse", "--b", "5", "--format", "csv"]);
    let (header, rows) = csv_records(&out);
    assert_eq!(header, ["x", "series", "value"]);
    let hat = series(&rows, "p_hat");
    let mle = series(&rows, "p_mle");
    assert_eq!(hat.len(), mle.len());
    let at = |s: &[(f64, f64)], x: f64| s.iter().find(|p| (p.0 - x).abs() < 1e-9).unwrap().1;
    assert!(at(&hat, 0.0) > at(&mle, 0.0));
    assert!(at(&hat, 8.0) < at(&mle, 8.0));
}

#[test]
fn conditional_risk_figure_starts_at_zero() {
    let out = stdout(&["fig-data", "--which", "cond-risk", "--b", "5", "--format", "csv"]);
    let (_, rows) = csv_records(&out);
    for name in ["p_hat", "p_mle"] {
        let s = series(&rows, name);
        assert_eq!(s.len(), 41);
        assert_eq!(s[0], (0.0, 0.0));
    }
}

#[test]
fn unified_coverage_figure_above_level() {
    let out = stdout(&["fig-data", "--which", "coverage", "--b", "2", "--method", "unified", "--format", "csv"]);
    let (_, rows) = csv_records(&out);
    let s = series(&rows, "unified");
    assert!(!s.is_empty());
    assert!(s.iter().all(|&(_, c)| c >= 0.9), "{:?}", s.iter().find(|p| p.1 < 0.9));
}

#[test]
fn exit_codes() {
    assert_eq!(sigbkg(&["bogus"]).status.code(), Some(2));
    assert_eq!(sigbkg(&["estimate", "--b", "0", "--n", "1"]).status.code(), Some(2));
    assert_eq!(sigbkg(&["estimate", "--b", "1", "--n", "-1"]).status.code(), Some(2));
    assert_eq!(sigbkg(&["interval", "--b", "1", "--n", "1", "--level", "1"]).status.code(), Some(2));
    // an HPD search with one iteration cannot converge
    let out = sigbkg(&["interval", "--method", "bayes", "--b", "1", "--n", "3", "--max-iter", "1"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(!out.stderr.is_empty());
    assert_eq!(sigbkg(&["--help"]).status.code(), Some(0));
}

#[test]
fn config_file_and_flag_precedence() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "max_iter = 1").unwrap();
    let path = file.path().to_str().unwrap();
    let base = ["interval", "--method", "bayes", "--b", "1", "--n", "3", "--config", path];
    assert_eq!(sigbkg(&base).status.code(), Some(3));
    let mut with_flag = base.to_vec();
    with_flag.extend(["--max-iter", "500"]);
    assert_eq!(sigbkg(&with_flag).status.code(), Some(0));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "no_such_key = 3").unwrap();
    let out = sigbkg(&["table2", "--config", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn strict_qpmf_flag_changes_conditional_intervals() {
    let args = ["interval", "--method", "conditional", "--b", "5", "--n", "4", "--format", "csv"];
    let plain = stdout(&args);
    let mut strict_args = args.to_vec();
    strict_args.push("--strict-paper-qpmf");
    let strict = stdout(&strict_args);
    assert_ne!(plain, strict);
}

#[test]
fn strict_qpmf_reports_deficient_mass() {
    let out = sigbkg(&["interval", "--method", "conditional", "--b", "2", "--n", "4", "--strict-paper-qpmf"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("j = 1"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t2.csv");
    let out = sigbkg(&["table2", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("b,classical_n0,modified_n0\n1,3,2\n"));
}

proptest! {
    #[test]
    fn formatting_is_idempotent(x in prop_oneof![1e-300f64..1e-2, 1e-2f64..1.0, 1.0f64..1e6], digits in 1usize..8) {
        let once = sig(x, digits);
        let again = sig(once.parse::<f64>().unwrap(), digits);
        prop_assert_eq!(once, again);
    }
}
