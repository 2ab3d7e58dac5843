//! C ABI for the thueq verification engine.
//!
//! Results come back as opaque `ThueqReport` handles holding the same JSON documents the
//! `thueq` command line tool prints. Every handle must be released with `thueq_report_free`.
//! On failure the message of the last error on the calling thread is available from
//! `thueq_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use thueq::dioph::{classify_type, irreducibility_exceptions, small_solution_search};
use thueq::exactnum::{int, parse_rat, Rat};
use thueq::measure::{corollary_eps, corollary_lin, theorem_assembly, AssemblyConfig, Verdict};
use thueq::quadfield::QuadInt;
use thueq::{report, Error};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThueqStatus {
    Ok = 0,
    /// the run finished but did not prove the theorem for these parameters
    Inconclusive = 1,
    /// the engine failed; see `thueq_last_error`
    Internal = 2,
    /// an argument was rejected; see `thueq_last_error`
    InvalidArgument = 3,
    NullPointer = 4,
    Panic = 5,
}

/// A rendered JSON report.
pub struct ThueqReport {
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: ThueqStatus, msg: impl Into<String>) -> ThueqStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> ThueqStatus {
    let status = if e.is_usage() { ThueqStatus::InvalidArgument } else { ThueqStatus::Internal };
    fail(status, e.to_string())
}

/// Runs `body` behind a panic barrier, clearing the last error first.
fn guarded(body: impl FnOnce() -> ThueqStatus) -> ThueqStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(ThueqStatus::Panic, format!("panic: {msg}"))
        }
    }
}

/// Parses an optional decimal or fraction string; NULL gives `default`.
///
/// # Safety
/// `s` is NULL or a NUL-terminated string.
unsafe fn rational_arg(s: *const c_char, default: Option<Rat>, name: &str) -> Result<Option<Rat>, ThueqStatus> {
    if s.is_null() {
        return Ok(default);
    }
    let text = CStr::from_ptr(s).to_str().map_err(|_| fail(ThueqStatus::InvalidArgument, format!("{name} is not UTF-8")))?;
    parse_rat(text).map(Some).map_err(|e| fail(ThueqStatus::InvalidArgument, format!("{name}: {e}")))
}

/// # Safety
/// `out` is NULL or valid for writes.
unsafe fn deliver(out: *mut *mut ThueqReport, doc: &serde_json::Value) -> Result<(), ThueqStatus> {
    if out.is_null() {
        return Err(fail(ThueqStatus::NullPointer, "out is NULL"));
    }
    let json = CString::new(report::render(doc)).map_err(|_| fail(ThueqStatus::Internal, "report contains NUL"))?;
    *out = Box::into_raw(Box::new(ThueqReport { json }));
    Ok(())
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Runs every certificate and the final assembly.
///
/// `tmin` is a decimal or fraction string, NULL for 100. Returns `Ok` when the theorem is
/// proven, `Inconclusive` when a gate fails for these parameters, `Internal` when a gate that
/// does not depend on them fails. A report is produced in all three cases.
///
/// # Safety
/// `tmin` is NULL or a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn thueq_verify_all(tmin: *const c_char, kmax: u32, rmax: u32, out: *mut *mut ThueqReport) -> ThueqStatus {
    guarded(|| {
        let tmin = try_status!(rational_arg(tmin, Some(int(100)), "tmin")).unwrap();
        if tmin < int(1) {
            return fail(ThueqStatus::InvalidArgument, "tmin must be at least 1");
        }
        let r = theorem_assembly(&AssemblyConfig { tmin, kmax, rmax });
        let doc = report::verify_all_document(&r, &irreducibility_exceptions());
        try_status!(deliver(out, &doc));
        match r.verdict {
            Verdict::Proven => ThueqStatus::Ok,
            _ if r.internal_failure() => ThueqStatus::Internal,
            _ => ThueqStatus::Inconclusive,
        }
    })
}

/// Every `t` for which `F_t` is reducible.
///
/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn thueq_irreducible_list(out: *mut *mut ThueqReport) -> ThueqStatus {
    guarded(|| {
        try_status!(deliver(out, &report::irreducible_list_document(&irreducibility_exceptions())));
        ThueqStatus::Ok
    })
}

/// Non-trivial solutions with `min(|x|, |y|) < 3` and `|t| >= tmin`.
///
/// # Safety
/// `tmin` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn thueq_small_solutions(tmin: *const c_char, out: *mut *mut ThueqReport) -> ThueqStatus {
    guarded(|| {
        if tmin.is_null() {
            return fail(ThueqStatus::NullPointer, "tmin is NULL");
        }
        let tmin = try_status!(rational_arg(tmin, None, "tmin")).unwrap();
        let sols = try_status!(small_solution_search(&tmin).map_err(from_error));
        try_status!(deliver(out, &report::small_solutions_document(&tmin, &sols)));
        ThueqStatus::Ok
    })
}

/// `t0` and `C0` for `|F_t(x, y)| <= C |t|`. `t0` may be NULL for the least certified value.
///
/// # Safety
/// `c` is a NUL-terminated string, `t0` is NULL or one; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn thueq_corollary_lin(c: *const c_char, t0: *const c_char, out: *mut *mut ThueqReport) -> ThueqStatus {
    guarded(|| {
        if c.is_null() {
            return fail(ThueqStatus::NullPointer, "C is NULL");
        }
        let c = try_status!(rational_arg(c, None, "C")).unwrap();
        let t0 = try_status!(rational_arg(t0, None, "t0"));
        let r = try_status!(corollary_lin(&c, t0.as_ref()).map_err(from_error));
        try_status!(deliver(out, &report::corollary_lin_document(t0.as_ref(), &r)));
        ThueqStatus::Ok
    })
}

/// `t0` for `|F_t(x, y)| <= |t|^(2 - eps)`.
///
/// # Safety
/// `eps` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn thueq_corollary_eps(eps: *const c_char, out: *mut *mut ThueqReport) -> ThueqStatus {
    guarded(|| {
        if eps.is_null() {
            return fail(ThueqStatus::NullPointer, "eps is NULL");
        }
        let eps = try_status!(rational_arg(eps, None, "eps")).unwrap();
        let r = try_status!(corollary_eps(&eps).map_err(from_error));
        try_status!(deliver(out, &report::corollary_eps_document(&r)));
        ThueqStatus::Ok
    })
}

/// Type `j` of `(x, y)` for `F_t`: the index minimizing `|x - alpha^(j) y|`. Elements of
/// `Q(√-d)` are given by coordinates `a + bω`.
///
/// # Safety
/// `out_type` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn thueq_classify_type(
    d: u64,
    t_a: i64,
    t_b: i64,
    x_a: i64,
    x_b: i64,
    y_a: i64,
    y_b: i64,
    out_type: *mut u8,
) -> ThueqStatus {
    guarded(|| {
        if out_type.is_null() {
            return fail(ThueqStatus::NullPointer, "out_type is NULL");
        }
        let q = |a, b| QuadInt::new(d, a, b).map_err(from_error);
        let (t, x, y) = (try_status!(q(t_a, t_b)), try_status!(q(x_a, x_b)), try_status!(q(y_a, y_b)));
        *out_type = try_status!(classify_type(&t, &x, &y).map_err(from_error));
        ThueqStatus::Ok
    })
}

/// The report as a NUL-terminated JSON string, owned by the handle. NULL for a NULL handle.
///
/// # Safety
/// `report` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn thueq_report_json(report: *const ThueqReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// Length in bytes of the JSON string, excluding the terminator.
///
/// # Safety
/// `report` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn thueq_report_len(report: *const ThueqReport) -> usize {
    report.as_ref().map_or(0, |r| r.json.as_bytes().len())
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `report` is NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn thueq_report_free(report: *mut ThueqReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Message of the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn thueq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn thueq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
