//! End-to-end runs of the `pnt` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn pnt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pnt"))
        .args(args)
        .env_remove("PNT_CACHE_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn zeros_path() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data/zeros_2000.txt")
        .display()
        .to_string()
}

fn cell(csv: &str, statistic: &str, column: usize) -> f64 {
    let line = csv.lines().find(|l| l.starts_with(&format!("{statistic},"))).unwrap();
    line.split(',').nth(column).unwrap().parse().unwrap()
}

#[test]
fn tables_default_run() {
    let o = pnt(&["tables"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    assert!(csv.starts_with("statistic,lo,hi,min,argmin,max,argmax\n"));
    assert_eq!(csv.lines().count(), 1 + 19);
    assert!((cell(&csv, "rbar2", 3) + 1.866302).abs() < 1e-6);
    assert!((cell(&csv, "rbar2", 5) + 0.922313).abs() < 1e-6);
    assert!((cell(&csv, "rhat5", 3) + 0.001183).abs() < 1e-6);
    assert_eq!(cell(&csv, "rhat1", 1), 100.0);
}

#[test]
fn tables_pretty_mirrors_layout() {
    let o = pnt(&["tables", "--pretty"]);
    let text = stdout(&o);
    assert!(text.contains("1 ≤ n ≤ 100000"));
    assert!(text.contains("100 ≤ n ≤ 100000"));
    assert!(text.contains("-159.856110"));
}

#[test]
fn partial_tables_need_opt_in() {
    let o = pnt(&["tables", "--n-max", "1000"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pnt(&["tables", "--n-max", "1000", "--allow-partial"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert!(stdout(&o).contains("rtilde6,3,1000,"));
}

#[test]
fn unwritable_output_is_an_io_failure() {
    let o = pnt(&["tables", "--n-max", "200", "--allow-partial", "--output", "/nonexistent-dir/t.csv"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn errors_series_and_summary() {
    let o = pnt(&["errors", "--order", "1", "--n-max", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,value");
    assert_eq!(lines[1], "1,-1.000000");
    assert_eq!(lines.len(), 6);

    let o = pnt(&["errors", "--order", "1", "--n-max", "100000", "--summary"]);
    let csv = stdout(&o);
    assert!((cell(&csv, "rbar1", 3) + 5.183956).abs() < 1e-6);
    assert!((cell(&csv, "rbar1", 5) - 2.717997).abs() < 1e-6);

    let o = pnt(&["errors", "--order", "0", "--order", "2", "--n-max", "3"]);
    assert!(stdout(&o).starts_with("n,r,rbar2\n1,-1.000000,-1.000000\n"));
}

#[test]
fn output_is_deterministic() {
    let a = pnt(&["errors", "--order", "3", "--n-max", "20000"]);
    let b = pnt(&["errors", "--order", "3", "--n-max", "20000"]);
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.csv");
    let c = pnt(&["errors", "--order", "3", "--n-max", "20000", "--output", path.to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn perron_row_respects_bound() {
    let o = pnt(&["perron", "--a", "2", "--b", "1", "--T", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(csv.lines().next().unwrap(), "a,b,T,k,numeric,main_term,bound,gap,ratio");
    let bound: f64 = row[6].parse().unwrap();
    let gap: f64 = row[7].parse().unwrap();
    assert!(gap <= bound);
    assert_eq!(pnt(&["perron", "--a", "-1", "--T", "10"]).status.code(), Some(2));
}

#[test]
fn zerosum_row() {
    let z = zeros_path();
    let o = pnt(&["zerosum", "--x", "10000", "--T", "500", "--k", "1", "--zeros", &z]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x,T,k,value,count_used\n10000,500,1,-0.105671,269\n");
    let o = pnt(&["zerosum", "--x", "10", "--T", "5000", "--zeros", &z]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn check_without_zeros_skips_zero_suites() {
    let o = pnt(&["check"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.lines().filter(|l| l.starts_with("skip")).count() == 4);
    assert!(!text.contains("FAIL"));
}

#[test]
fn check_with_zeros_names_failing_invariant() {
    // The residual settles at 1/2 − log 2π rather than 0, so the median of
    // |residual| does not fall as zeros are added (see README).
    let o = pnt(&["check", "--zeros", &zeros_path()]);
    let text = stdout(&o);
    assert!(text.contains("pass  zero_sum_additivity"));
    assert!(text.contains("pass  gamma_tail"));
    assert!(text.contains("FAIL  explicit_formula_trend"));
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("failing invariants: explicit_formula_trend"));
}

#[test]
fn sieve_cache_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_pnt"))
        .args(["sieve", "--n-max", "10000"])
        .env("PNT_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let cache = dir.path().join("sieve-10000.bin");
    assert!(cache.exists());
    assert!(stdout(&o).contains("10000,"));

    let ok = pnt(&["check", "--cache", cache.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));

    let mut bytes = std::fs::read(&cache).unwrap();
    bytes[1000] ^= 0x40;
    std::fs::write(&cache, bytes).unwrap();
    let bad = pnt(&["check", "--cache", cache.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("checksum mismatch"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(pnt(&["errors"]).status.code(), Some(2));
    assert_eq!(pnt(&["bogus"]).status.code(), Some(2));
    assert_eq!(pnt(&["errors", "--order", "9"]).status.code(), Some(2));
}
