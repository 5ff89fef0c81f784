use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use pnt_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(pnt_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

fn fixture() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data/zeros_2000.txt")
}

struct Table(*mut PntLambdaTable);

impl Table {
    fn new(n: usize) -> Self {
        let mut t = ptr::null_mut();
        assert_eq!(unsafe { pnt_lambda_table_new(n, &mut t) }, PntStatus::Ok);
        Table(t)
    }
}

impl Drop for Table {
    fn drop(&mut self) {
        unsafe { pnt_lambda_table_free(self.0) }
    }
}

#[test]
fn version_is_crate_version() {
    let v = unsafe { CStr::from_ptr(pnt_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn table_queries_match_oracles() {
    let t = Table::new(2000);
    assert_eq!(unsafe { pnt_lambda_table_n_max(t.0) }, 2000);
    let mut psi = 0.0;
    let mut theta = 0.0;
    let mut lambda = 0.0;
    let mut pi = 0u64;
    unsafe {
        assert_eq!(pnt_lambda_table_psi(t.0, 10, &mut psi), PntStatus::Ok);
        assert_eq!(pnt_lambda_table_theta(t.0, 10, &mut theta), PntStatus::Ok);
        assert_eq!(pnt_lambda_table_lambda(t.0, 9, &mut lambda), PntStatus::Ok);
        assert_eq!(pnt_lambda_table_prime_pi(t.0, 2000, &mut pi), PntStatus::Ok);
    }
    assert!((psi - 2520f64.ln()).abs() < 1e-12);
    assert!((theta - 210f64.ln()).abs() < 1e-12);
    assert!((lambda - 3f64.ln()).abs() < 1e-15);
    assert_eq!(pi, 303);
}

#[test]
fn failures_set_status_and_message_without_touching_output() {
    let t = Table::new(100);
    let mut v = 42.0;
    let status = unsafe { pnt_lambda_table_psi(t.0, 101, &mut v) };
    assert_eq!(status, PntStatus::InvalidArgument);
    assert_eq!(v, 42.0);
    assert!(!last_error().is_empty());

    let status = unsafe { pnt_lambda_table_psi(ptr::null(), 1, &mut v) };
    assert_eq!(status, PntStatus::NullPointer);
    assert!(last_error().contains("table"));

    let status = unsafe { pnt_lambda_table_psi(t.0, 1, ptr::null_mut()) };
    assert_eq!(status, PntStatus::NullPointer);

    unsafe {
        pnt_lambda_table_free(ptr::null_mut());
        pnt_iterated_average_free(ptr::null_mut());
        pnt_zero_set_free(ptr::null_mut());
    }
}

#[test]
fn averages_agree_with_core() {
    let n = 5000;
    let t = Table::new(n);
    let core = pnt_core::sieve::LambdaTable::build(n).unwrap();
    let errors = core.error_series(n).unwrap();
    let expected = pnt_core::averaging::IteratedAverage::new(&errors, 3, n).unwrap();

    let mut avg = ptr::null_mut();
    assert_eq!(unsafe { pnt_iterated_average_new(t.0, 3, n, &mut avg) }, PntStatus::Ok);
    for m in [3, 100, 4999, 5000] {
        let mut got = [0.0; 4];
        unsafe {
            assert_eq!(pnt_iterated_average_value(avg, m, &mut got[0]), PntStatus::Ok);
            assert_eq!(pnt_iterated_average_hat(avg, m, &mut got[1]), PntStatus::Ok);
            assert_eq!(pnt_iterated_average_hat_prime(avg, m, &mut got[2]), PntStatus::Ok);
            assert_eq!(pnt_iterated_average_tilde(avg, m, &mut got[3]), PntStatus::Ok);
        }
        assert_eq!(got[0], expected.value(m).unwrap());
        assert_eq!(got[1], expected.hat_r(m).unwrap());
        assert_eq!(got[2], expected.hat_prime_r(m).unwrap());
        assert_eq!(got[3], expected.tilde_r(m).unwrap());
    }
    let mut v = 0.0;
    assert_eq!(unsafe { pnt_iterated_average_value(avg, 5001, &mut v) }, PntStatus::InvalidArgument);
    unsafe { pnt_iterated_average_free(avg) };
}

#[test]
fn cache_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sieve.bin");
    pnt_core::sieve::load_or_build(500, Some(&path)).unwrap();
    let c_path = CString::new(path.to_str().unwrap()).unwrap();

    let mut t = ptr::null_mut();
    assert_eq!(unsafe { pnt_lambda_table_read_cache(c_path.as_ptr(), &mut t) }, PntStatus::Ok);
    let table = Table(t);
    let mut pi = 0u64;
    assert_eq!(unsafe { pnt_lambda_table_prime_pi(table.0, 500, &mut pi) }, PntStatus::Ok);
    assert_eq!(pi, 95);

    let mut bytes = std::fs::read(&path).unwrap();
    let mid = bytes.len() / 2;
    bytes[mid] ^= 0xff;
    std::fs::write(&path, bytes).unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { pnt_lambda_table_read_cache(c_path.as_ptr(), &mut t) }, PntStatus::Cache);
    assert!(t.is_null());
    assert!(last_error().contains("checksum mismatch"), "{}", last_error());

    let missing = CString::new(dir.path().join("absent.bin").to_str().unwrap()).unwrap();
    assert_eq!(unsafe { pnt_lambda_table_read_cache(missing.as_ptr(), &mut t) }, PntStatus::Io);
}

#[test]
fn zero_set_sums_match_core() {
    let path = CString::new(fixture().to_str().unwrap()).unwrap();
    let mut z = ptr::null_mut();
    assert_eq!(unsafe { pnt_zero_set_load_path(path.as_ptr(), &mut z) }, PntStatus::Ok);
    assert_eq!(unsafe { pnt_zero_set_len(z) }, 2000);

    let core = pnt_core::zeros::load_zeros_from_path(&fixture()).unwrap();
    let expected = pnt_core::zeros::zero_sum(&core, 1e4, 500.0, 1).unwrap();
    let mut value = 0.0;
    let mut count = 0usize;
    assert_eq!(unsafe { pnt_zero_sum(z, 1e4, 500.0, 1, &mut value, &mut count) }, PntStatus::Ok);
    assert_eq!(value, expected.value);
    assert_eq!(count, 269);
    assert_eq!(unsafe { pnt_zero_sum(z, 1e4, 500.0, 1, &mut value, ptr::null_mut()) }, PntStatus::Ok);

    let mut lf = 0.0;
    assert_eq!(unsafe { pnt_lambda_factor(z, 1e4, 500.0, 2, &mut lf) }, PntStatus::Ok);
    let s2 = pnt_core::zeros::zero_sum(&core, 1e4, 500.0, 2).unwrap().value;
    assert!((lf - s2 / 100.0).abs() < 1e-15);

    let mut tail = 0.0;
    assert_eq!(unsafe { pnt_gamma_square_tail(z, 15.0, &mut tail) }, PntStatus::Ok);
    assert!((tail - 0.0100105).abs() < 1e-7);

    assert_eq!(unsafe { pnt_zero_sum(z, 1e4, 5000.0, 1, &mut value, &mut count) }, PntStatus::OutOfData);

    let t = Table::new(2000);
    let mut avg = ptr::null_mut();
    assert_eq!(unsafe { pnt_iterated_average_new(t.0, 1, 2000, &mut avg) }, PntStatus::Ok);
    let mut res = 0.0;
    assert_eq!(unsafe { pnt_explicit_formula_residual(avg, z, 1500, 1000.0, &mut res) }, PntStatus::Ok);
    // Tends to 1/2 − log 2π rather than 0.
    assert!((res - (0.5 - (2.0 * std::f64::consts::PI).ln())).abs() < 0.05, "{res}");
    unsafe {
        pnt_iterated_average_free(avg);
        pnt_zero_set_free(z);
    }
}

#[test]
fn zero_buffer_parse_errors() {
    let mut z = ptr::null_mut();
    let bad = b"14.1347\nnot-a-number\n";
    let status = unsafe { pnt_zero_set_load_buffer(bad.as_ptr().cast(), bad.len(), &mut z) };
    assert_eq!(status, PntStatus::Parse);
    assert!(last_error().contains('2'), "{}", last_error());
    assert!(z.is_null());

    let two = b"14.1347 21.02\n";
    let status = unsafe { pnt_zero_set_load_buffer(two.as_ptr().cast(), two.len(), &mut z) };
    assert_eq!(status, PntStatus::Format);

    let status = unsafe { pnt_zero_set_load_buffer(ptr::null(), 0, &mut z) };
    assert_eq!(status, PntStatus::NullPointer);
}

#[test]
fn perron_through_ffi() {
    let mut r = PntPerronResult::default();
    assert_eq!(unsafe { pnt_perron_integral(3.0, 1.0, 1000.0, 2, &mut r) }, PntStatus::Ok);
    assert!((r.main_term - (2.0f64 / 3.0).powi(2)).abs() < 1e-15);
    assert!(r.gap <= r.bound);
    assert!((r.numeric_re - r.main_term).abs() == r.gap || r.gap >= (r.numeric_re - r.main_term).abs());

    let mut bound = 0.0;
    assert_eq!(unsafe { pnt_lemma1_error_bound(2.0, 1.0, 100.0, &mut bound) }, PntStatus::Ok);
    let expected = 2.0 * (1.0f64 / 100.0).min(1.0 / (1e4 * 2f64.ln()));
    assert!((bound - expected).abs() < 1e-15);
    assert_eq!(unsafe { pnt_lemma1_error_bound(1.0, 1.0, 100.0, &mut bound) }, PntStatus::InvalidArgument);
    assert_eq!(unsafe { pnt_perron_integral(2.0, 1.0, 100.0, 1, ptr::null_mut()) }, PntStatus::NullPointer);
}

#[test]
fn header_is_generated_and_declares_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/pnt.h")).unwrap();
    for name in [
        "PNT_STATUS_NULL_POINTER",
        "typedef struct PntLambdaTable PntLambdaTable",
        "pnt_lambda_table_psi",
        "pnt_iterated_average_tilde",
        "pnt_zero_sum",
        "pnt_perron_integral",
        "pnt_last_error_message",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

/// Compiles the C smoke test against the header and static library. Skipped
/// when no C compiler is on PATH.
#[test]
fn c_smoke_test() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // Integration test binaries live in target/<profile>/deps.
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libpnt_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl"])
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
