//! C interface to the weylcheck engine.
//!
//! Every function returns a [`WcStatus`]. Objects are passed as opaque
//! handles and released with their `_free` function. Strings returned
//! through `char **` out-parameters are owned by the caller and released
//! with [`wc_string_free`]. On failure, [`wc_last_error`] describes the
//! most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use weylcheck::cartan::{catalog, CartanAux, CartanMatrix};
use weylcheck::cli::{self, parse_matrix, parse_symmetrizer, Check, Flavor, JobSpec, ModeArg, Report};
use weylcheck::Error;

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidMatrix = 4,
    NotSymmetrizable = 5,
    UnknownSymbol = 6,
    StepLimit = 7,
    InvalidArgument = 8,
    Internal = 9,
    Panic = 10,
}

/// Which algebras a verification covers.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WcMode {
    Classical = 0,
    Quantum = 1,
    Both = 2,
}

/// A validated generalized Cartan matrix with an optional symmetrizer.
pub struct WcMatrix {
    matrix: CartanMatrix,
    d: Option<Vec<i64>>,
}

/// The outcome of a verification run.
pub struct WcReport {
    report: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: WcStatus,
    message: String,
}

impl Failure {
    fn new(status: WcStatus, message: impl Into<String>) -> Self {
        Failure { status, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } => WcStatus::Parse,
            Error::InvalidMatrix(_) => WcStatus::InvalidMatrix,
            Error::NotSymmetrizable(_) => WcStatus::NotSymmetrizable,
            Error::UnknownSymbol(_) => WcStatus::UnknownSymbol,
            Error::StepLimit { .. } => WcStatus::StepLimit,
            Error::Shape(_) => WcStatus::InvalidArgument,
            _ => WcStatus::Internal,
        };
        Failure::new(status, e.to_string())
    }
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> WcStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WcStatus::Ok,
        Ok(Err(fail)) => {
            set_last_error(&fail.message);
            fail.status
        }
        Err(_) => {
            set_last_error("internal panic");
            WcStatus::Panic
        }
    }
}

/// Borrows a C string as UTF-8.
///
/// # Safety
/// `s` must be null or point to a NUL-terminated string valid for the call.
unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::new(WcStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure::new(WcStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

fn out_ptr<T>(out: *mut T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure::new(WcStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

/// # Safety
/// `h` must be null or a live handle created by this library.
unsafe fn handle<'a, T>(h: *const T, what: &str) -> Result<&'a T, Failure> {
    h.as_ref()
        .ok_or_else(|| Failure::new(WcStatus::NullPointer, format!("{what} is null")))
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure::new(WcStatus::Internal, "output contains a NUL byte"))
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn wc_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn wc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a matrix from text: inline rows separated by `;`, or the file
/// format with a size line, one row per line and an optional `d:` line.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wc_matrix_parse(text: *const c_char, out: *mut *mut WcMatrix) -> WcStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let input = parse_matrix(self::text(text, "text")?)?;
        *out = Box::into_raw(Box::new(WcMatrix { matrix: input.matrix, d: input.d }));
        Ok(())
    })
}

/// Looks up a built-in matrix by name (`A1`, `A2`, `A1xA1`, `A3`, `B2`,
/// `G2`, `A1^(1)`).
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wc_matrix_catalog(name: *const c_char, out: *mut *mut WcMatrix) -> WcStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let name = text(name, "name")?;
        let matrix = catalog(name)
            .ok_or_else(|| Failure::new(WcStatus::UnknownSymbol, format!("unknown catalog entry `{name}`")))?;
        *out = Box::into_raw(Box::new(WcMatrix { matrix, d: None }));
        Ok(())
    })
}

/// Overrides the symmetrizer with a comma-separated list of positive integers.
///
/// # Safety
/// `m` must be a live matrix handle; `d` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn wc_matrix_set_symmetrizer(m: *mut WcMatrix, d: *const c_char) -> WcStatus {
    guard(|| {
        let m = m
            .as_mut()
            .ok_or_else(|| Failure::new(WcStatus::NullPointer, "matrix is null"))?;
        let d = parse_symmetrizer(text(d, "symmetrizer")?)?;
        CartanAux::derive_with(&m.matrix, Some(d.clone()))?;
        m.d = Some(d);
        Ok(())
    })
}

/// Size, rank and corank of the matrix. Any out-pointer may be null.
///
/// # Safety
/// `m` must be a live matrix handle; non-null out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn wc_matrix_shape(
    m: *const WcMatrix,
    size: *mut usize,
    rank: *mut usize,
    corank: *mut usize,
) -> WcStatus {
    guard(|| {
        let m = handle(m, "matrix")?;
        let aux = CartanAux::derive_with(&m.matrix, m.d.clone())?;
        for (p, v) in [(size, m.matrix.n()), (rank, aux.rank), (corank, aux.corank)] {
            if !p.is_null() {
                *p = v;
            }
        }
        Ok(())
    })
}

/// Releases a matrix. Null is ignored.
///
/// # Safety
/// `m` must be null or a live matrix handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wc_matrix_free(m: *mut WcMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

fn parse_checks(list: &str) -> Result<Vec<Check>, Failure> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            Check::ALL
                .into_iter()
                .find(|c| c.name() == s)
                .ok_or_else(|| Failure::new(WcStatus::UnknownSymbol, format!("unknown check `{s}`")))
        })
        .collect()
}

/// Runs the selected checks. `checks` is a comma-separated list of check
/// names, or null for all of them. `degree_bound` bounds the overlap
/// search of the rewriting check and must be at least 2.
///
/// # Safety
/// `m` must be a live matrix handle; `checks` null or a NUL-terminated
/// string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wc_verify(
    m: *const WcMatrix,
    mode: WcMode,
    checks: *const c_char,
    degree_bound: usize,
    out: *mut *mut WcReport,
) -> WcStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let m = handle(m, "matrix")?;
        let checks = if checks.is_null() { Vec::new() } else { parse_checks(text(checks, "checks")?)? };
        let mode = match mode {
            WcMode::Classical => ModeArg::Classical,
            WcMode::Quantum => ModeArg::Quantum,
            WcMode::Both => ModeArg::Both,
        };
        let mut job = JobSpec::new(m.matrix.clone(), mode, &checks);
        job.d = m.d.clone();
        job.degree_bound = degree_bound;
        let report = cli::run(&job)?;
        *out = Box::into_raw(Box::new(WcReport { report }));
        Ok(())
    })
}

/// Writes 1 if every check passed, 0 otherwise.
///
/// # Safety
/// `r` must be a live report handle; `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn wc_report_passed(r: *const WcReport, passed: *mut i32) -> WcStatus {
    guard(|| {
        out_ptr(passed, "passed")?;
        *passed = i32::from(handle(r, "report")?.report.pass);
        Ok(())
    })
}

/// The report as JSON. Timings are omitted when `timings` is 0.
///
/// # Safety
/// `r` must be a live report handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wc_report_json(r: *const WcReport, timings: i32, out: *mut *mut c_char) -> WcStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let r = &handle(r, "report")?.report;
        let json = if timings == 0 { r.without_timings().to_json() } else { r.to_json() };
        *out = into_c_string(json)?;
        Ok(())
    })
}

/// The report as human-readable text.
///
/// # Safety
/// `r` must be a live report handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wc_report_text(r: *const WcReport, out: *mut *mut c_char) -> WcStatus {
    guard(|| {
        out_ptr(out, "out")?;
        *out = into_c_string(handle(r, "report")?.report.to_text())?;
        Ok(())
    })
}

/// Releases a report. Null is ignored.
///
/// # Safety
/// `r` must be null or a live report handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wc_report_free(r: *mut WcReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Normal form of a word such as `F1*E1` in the classical (`quantum` = 0)
/// or quantum rewriting system of the matrix.
///
/// # Safety
/// `m` must be a live matrix handle; `word` a NUL-terminated string; `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn wc_rewrite(
    m: *const WcMatrix,
    quantum: i32,
    word: *const c_char,
    out: *mut *mut c_char,
) -> WcStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let m = handle(m, "matrix")?;
        let flavor = if quantum == 0 { Flavor::Classical } else { Flavor::Quantum };
        let nf = cli::rewrite(&m.matrix, m.d.clone(), flavor, text(word, "word")?)?;
        *out = into_c_string(nf)?;
        Ok(())
    })
}
