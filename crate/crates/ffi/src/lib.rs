//! C ABI over `pnt-core`.
//!
//! Objects are opaque handles created by `*_new`/`*_load_*` and released
//! with the matching `*_free`. Every fallible call returns a [`PntStatus`];
//! results come back through out-pointers, which are left untouched on
//! failure. The message for the most recent failure on the calling thread
//! is available from [`pnt_last_error_message`].
//!
//! Handles are immutable once created and may be shared between threads.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fs::File;
use std::io::BufReader;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use pnt_core::averaging::IteratedAverage;
use pnt_core::perron::{lemma1_error_bound, perron_integral};
use pnt_core::sieve::{read_cache, LambdaTable};
use pnt_core::zeros::{
    explicit_formula_residual, gamma_square_tail, lambda_factor, load_zeros, load_zeros_from_path,
    zero_sum, ZeroSet,
};
use pnt_core::Error;

/// Result codes shared by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PntStatus {
    Ok = 0,
    InvalidArgument = 1,
    OutOfData = 2,
    Format = 3,
    Parse = 4,
    NumericFailure = 5,
    Cache = 6,
    Io = 7,
    NullPointer = 8,
    Panic = 9,
}

/// Von Mangoldt table with ψ, θ and π prefix sums.
pub struct PntLambdaTable {
    inner: LambdaTable,
}

/// r̄^(k) over 1..=n_max, with its differenced statistics.
pub struct PntIteratedAverage {
    inner: IteratedAverage,
}

/// Ordinates of zeta zeros.
pub struct PntZeroSet {
    inner: ZeroSet,
}

/// Outcome of one truncated Perron kernel integral.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PntPerronResult {
    pub a: f64,
    pub b: f64,
    pub t: f64,
    pub k: usize,
    pub numeric_re: f64,
    pub numeric_im: f64,
    pub main_term: f64,
    pub bound: f64,
    pub gap: f64,
    pub quadrature_error_estimate: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn status_of(e: &Error) -> PntStatus {
    match e {
        Error::InvalidArgument(_) => PntStatus::InvalidArgument,
        Error::OutOfData { .. } => PntStatus::OutOfData,
        Error::Format { .. } => PntStatus::Format,
        Error::Parse { .. } => PntStatus::Parse,
        Error::NumericFailure(_) => PntStatus::NumericFailure,
        Error::Cache(_) => PntStatus::Cache,
        Error::Io(_) => PntStatus::Io,
    }
}

enum Failure {
    Core(Error),
    Null(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// Run `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> PntStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PntStatus::Ok,
        Ok(Err(Failure::Core(e))) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_last_error(&format!("null pointer passed as {what}"));
            PntStatus::NullPointer
        }
        Err(_) => {
            set_last_error("internal panic");
            PntStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn path_arg<'a>(p: *const c_char) -> Result<&'a Path, Failure> {
    if p.is_null() {
        return Err(Failure::Null("path"));
    }
    let s = CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Error::InvalidArgument("path is not valid UTF-8".into()))?;
    Ok(Path::new(s))
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pnt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failure on this thread, or an empty string. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pnt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Sieve Λ(1..=n_max).
///
/// # Safety
/// `out_table` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn pnt_lambda_table_new(n_max: usize, out_table: *mut *mut PntLambdaTable) -> PntStatus {
    guard(|| {
        let slot = out(out_table, "out_table")?;
        let inner = LambdaTable::build(n_max)?;
        *slot = boxed(PntLambdaTable { inner });
        Ok(())
    })
}

/// Load a table from a sieve cache file, verifying its checksum.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out_table` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pnt_lambda_table_read_cache(
    path: *const c_char,
    out_table: *mut *mut PntLambdaTable,
) -> PntStatus {
    guard(|| {
        let slot = out(out_table, "out_table")?;
        let file = File::open(path_arg(path)?).map_err(Error::from)?;
        let inner = read_cache(BufReader::new(file))?;
        *slot = boxed(PntLambdaTable { inner });
        Ok(())
    })
}

/// # Safety
/// `table` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn pnt_lambda_table_free(table: *mut PntLambdaTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// # Safety
/// `table` must be a live handle (or null, which returns 0).
#[no_mangle]
pub unsafe extern "C" fn pnt_lambda_table_n_max(table: *const PntLambdaTable) -> usize {
    table.as_ref().map_or(0, |t| t.inner.n_max())
}

unsafe fn table_query<T>(
    table: *const PntLambdaTable,
    out_value: *mut T,
    f: impl FnOnce(&LambdaTable) -> pnt_core::Result<T>,
) -> PntStatus {
    guard(|| {
        let t = deref(table, "table")?;
        let slot = out(out_value, "out_value")?;
        *slot = f(&t.inner)?;
        Ok(())
    })
}

/// ψ(x).
///
/// # Safety
/// `table` must be a live handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn pnt_lambda_table_psi(table: *const PntLambdaTable, x: usize, out_value: *mut f64) -> PntStatus {
    table_query(table, out_value, |t| t.psi(x))
}

/// θ(x).
///
/// # Safety
/// `table` must be a live handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn pnt_lambda_table_theta(table: *const PntLambdaTable, x: usize, out_value: *mut f64) -> PntStatus {
    table_query(table, out_value, |t| t.theta(x))
}

/// Λ(x).
///
/// # Safety
/// `table` must be a live handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn pnt_lambda_table_lambda(table: *const PntLambdaTable, x: usize, out_value: *mut f64) -> PntStatus {
    table_query(table, out_value, |t| t.lambda(x))
}

/// π(x).
///
/// # Safety
/// `table` must be a live handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn pnt_lambda_table_prime_pi(table: *const PntLambdaTable, x: usize, out_value: *mut u64) -> PntStatus {
    table_query(table, out_value, |t| t.prime_pi(x))
}

/// r̄^(k) over 1..=n_max from the table's error series.
///
/// # Safety
/// `table` must be a live handle and `out_average` writable.
#[no_mangle]
pub unsafe extern "C" fn pnt_iterated_average_new(
    table: *const PntLambdaTable,
    k: usize,
    n_max: usize,
    out_average: *mut *mut PntIteratedAverage,
) -> PntStatus {
    guard(|| {
        let t = deref(table, "table")?;
        let slot = out(out_average, "out_average")?;
        let errors = t.inner.error_series(n_max)?;
        let inner = IteratedAverage::new(&errors, k, n_max)?;
        *slot = boxed(PntIteratedAverage { inner });
        Ok(())
    })
}

/// # Safety
/// `average` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pnt_iterated_average_free(average: *mut PntIteratedAverage) {
    if !average.is_null() {
        drop(Box::from_raw(average));
    }
}

unsafe fn average_query(
    average: *const PntIteratedAverage,
    out_value: *mut f64,
    f: impl FnOnce(&IteratedAverage) -> pnt_core::Result<f64>,
) -> PntStatus {
    guard(|| {
        let a = deref(average, "average")?;
        let slot = out(out_value, "out_value")?;
        *slot = f(&a.inner)?;
        Ok(())
    })
}

/// r̄^(k)(n), n ≥ 1.
///
/// # Safety
/// `average` must be a live handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn pnt_iterated_average_value(average: *const PntIteratedAverage, n: usize, out_value: *mut f64) -> PntStatus {
    average_query(average, out_value, |a| a.value(n))
}

/// r̂ = (k+1)(r̄(n) − r̄(n−1)), n ≥ 2.
///
/// # Safety
/// `average` must be a live handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn pnt_iterated_average_hat(average: *const PntIteratedAverage, n: usize, out_value: *mut f64) -> PntStatus {
    average_query(average, out_value, |a| a.hat_r(n))
}

/// r̂′ = (n−1)(r̄(n) − r̄(n−1)), n ≥ 2.
///
/// # Safety
/// `average` must be a live handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn pnt_iterated_average_hat_prime(average: *const PntIteratedAverage, n: usize, out_value: *mut f64) -> PntStatus {
    average_query(average, out_value, |a| a.hat_prime_r(n))
}

/// r̃(n), n ≥ 3 and k ≥ 2.
///
/// # Safety
/// `average` must be a live handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn pnt_iterated_average_tilde(average: *const PntIteratedAverage, n: usize, out_value: *mut f64) -> PntStatus {
    average_query(average, out_value, |a| a.tilde_r(n))
}

/// Read a zeros file: one ordinate per line, `#` comments allowed.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out_zeros` writable.
#[no_mangle]
pub unsafe extern "C" fn pnt_zero_set_load_path(path: *const c_char, out_zeros: *mut *mut PntZeroSet) -> PntStatus {
    guard(|| {
        let slot = out(out_zeros, "out_zeros")?;
        let inner = load_zeros_from_path(path_arg(path)?)?;
        *slot = boxed(PntZeroSet { inner });
        Ok(())
    })
}

/// Parse zeros from an in-memory buffer of `len` bytes.
///
/// # Safety
/// `data` must point to `len` readable bytes; `out_zeros` writable.
#[no_mangle]
pub unsafe extern "C" fn pnt_zero_set_load_buffer(
    data: *const c_char,
    len: usize,
    out_zeros: *mut *mut PntZeroSet,
) -> PntStatus {
    guard(|| {
        let slot = out(out_zeros, "out_zeros")?;
        if data.is_null() {
            return Err(Failure::Null("data"));
        }
        let bytes = std::slice::from_raw_parts(data.cast::<u8>(), len);
        let inner = load_zeros(bytes, "buffer")?;
        *slot = boxed(PntZeroSet { inner });
        Ok(())
    })
}

/// # Safety
/// `zeros` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pnt_zero_set_free(zeros: *mut PntZeroSet) {
    if !zeros.is_null() {
        drop(Box::from_raw(zeros));
    }
}

/// Number of ordinates (0 for null).
///
/// # Safety
/// `zeros` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pnt_zero_set_len(zeros: *const PntZeroSet) -> usize {
    zeros.as_ref().map_or(0, |z| z.inner.len())
}

/// Σ_{0<γ≤T} 2·Re[x^ρ/(ρ(ρ+1)⋯(ρ+k))]. `out_count_used` may be null.
///
/// # Safety
/// `zeros` must be a live handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn pnt_zero_sum(
    zeros: *const PntZeroSet,
    x: f64,
    t: f64,
    k: usize,
    out_value: *mut f64,
    out_count_used: *mut usize,
) -> PntStatus {
    guard(|| {
        let z = deref(zeros, "zeros")?;
        let slot = out(out_value, "out_value")?;
        let r = zero_sum(&z.inner, x, t, k)?;
        *slot = r.value;
        if let Some(c) = out_count_used.as_mut() {
            *c = r.count_used;
        }
        Ok(())
    })
}

/// zero_sum(x, T, i)/√x for i in 1..=3.
///
/// # Safety
/// `zeros` must be a live handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn pnt_lambda_factor(
    zeros: *const PntZeroSet,
    x: f64,
    t: f64,
    i: usize,
    out_value: *mut f64,
) -> PntStatus {
    guard(|| {
        let z = deref(zeros, "zeros")?;
        let slot = out(out_value, "out_value")?;
        *slot = lambda_factor(&z.inner, x, t, i)?;
        Ok(())
    })
}

/// 2·Σ_{γ≤T} 1/γ².
///
/// # Safety
/// `zeros` must be a live handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn pnt_gamma_square_tail(zeros: *const PntZeroSet, t: f64, out_value: *mut f64) -> PntStatus {
    guard(|| {
        let z = deref(zeros, "zeros")?;
        *out(out_value, "out_value")? = gamma_square_tail(&z.inner, t);
        Ok(())
    })
}

/// r̄(x) + zero_sum(x, T, 1); `average` must have order 1.
///
/// # Safety
/// Both handles must be live and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn pnt_explicit_formula_residual(
    average: *const PntIteratedAverage,
    zeros: *const PntZeroSet,
    x: usize,
    t: f64,
    out_value: *mut f64,
) -> PntStatus {
    guard(|| {
        let a = deref(average, "average")?;
        let z = deref(zeros, "zeros")?;
        let slot = out(out_value, "out_value")?;
        *slot = explicit_formula_residual(&a.inner, &z.inner, x, t)?;
        Ok(())
    })
}

/// (1/2πi)∫_{b−iT}^{b+iT} k!·a^s/(s(s+1)⋯(s+k)) ds with its limit and bound.
///
/// # Safety
/// `out_result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pnt_perron_integral(
    a: f64,
    b: f64,
    t: f64,
    k: usize,
    out_result: *mut PntPerronResult,
) -> PntStatus {
    guard(|| {
        let slot = out(out_result, "out_result")?;
        let r = perron_integral(a, b, t, k)?;
        *slot = PntPerronResult {
            a: r.a,
            b: r.b,
            t: r.t,
            k: r.k,
            numeric_re: r.numeric.re,
            numeric_im: r.numeric.im,
            main_term: r.main_term,
            bound: r.bound,
            gap: r.gap(),
            quadrature_error_estimate: r.quadrature_error_estimate,
        };
        Ok(())
    })
}

/// a^b·min(1/T, 1/(T²|log a|)), a ≠ 1.
///
/// # Safety
/// `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pnt_lemma1_error_bound(a: f64, b: f64, t: f64, out_value: *mut f64) -> PntStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        *slot = lemma1_error_bound(a, b, t)?;
        Ok(())
    })
}
