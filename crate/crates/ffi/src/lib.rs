//! C ABI over the hyperdescent library.
//!
//! Handles are opaque and owned by the caller once returned; release them with the
//! matching `*_free`. Strings returned by the library stay valid until the owning
//! handle is freed (or, for `hd_last_error`, until the next call on the same thread).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hyperdescent::cli_reports::{
    bound_input_from_json, cmd_jacobian, cmd_pillai, cmd_rank_bound, cmd_verify_d5, cmd_verify_d6, default_bound_input, Report, Scenario,
    Status,
};
use hyperdescent::exact_algebra::{Gf, PolyRing};
use hyperdescent::mumford_jacobian::{enumerate_jacobian, zeta_l_polynomial, HyperellipticCurve};
use hyperdescent::Error;

/// Result codes. 0-3 match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HdCode {
    Ok = 0,
    Fail = 1,
    Inconclusive = 2,
    InputError = 3,
    NullArgument = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

/// A finished report.
pub struct HdReport {
    report: Report,
    json: CString,
    csv: CString,
}

/// y^2 = f(x) over a prime field.
pub struct HdJacobian {
    curve: HyperellipticCurve<Gf>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn code_of(e: &Error) -> HdCode {
    match e {
        Error::BudgetExceeded(_) => HdCode::Inconclusive,
        Error::InternalConsistency(_) => HdCode::Fail,
        _ => HdCode::InputError,
    }
}

fn guarded(f: impl FnOnce() -> HdCode) -> HdCode {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(c) => c,
        Err(p) => {
            let msg = p.downcast_ref::<&str>().map(|s| s.to_string()).or_else(|| p.downcast_ref::<String>().cloned());
            set_error(&format!("panic: {}", msg.unwrap_or_default()));
            HdCode::Panic
        }
    }
}

unsafe fn opt_str<'a>(s: *const c_char) -> Result<Option<&'a str>, HdCode> {
    if s.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(s).to_str().map(Some).map_err(|_| {
        set_error("argument is not valid UTF-8");
        HdCode::InvalidUtf8
    })
}

fn run_command(command: &str, config: Option<&str>) -> Result<Report, Error> {
    let scenario = |default: fn() -> Scenario| match config {
        Some(t) => Scenario::from_json(t),
        None => Ok(default()),
    };
    match command {
        "verify-d5" => cmd_verify_d5(&scenario(Scenario::default_d5)?),
        "verify-d6" => cmd_verify_d6(&scenario(Scenario::default_d6)?),
        "jacobian" => cmd_jacobian(&scenario(Scenario::default_jacobian)?),
        "rank-bound" => cmd_rank_bound(&match config {
            Some(t) => bound_input_from_json(t)?,
            None => default_bound_input(),
        }),
        "pillai" => Ok(cmd_pillai()),
        other => Err(Error::InvalidInput(format!("unknown command {other:?}"))),
    }
}

fn status_code(s: Status) -> HdCode {
    match s {
        Status::Pass => HdCode::Ok,
        Status::Fail => HdCode::Fail,
        Status::Inconclusive => HdCode::Inconclusive,
    }
}

/// Run a command ("verify-d5", "verify-d6", "jacobian", "rank-bound", "pillai").
///
/// `config_json` may be NULL for the built-in defaults. On success `*out` receives a
/// report and the return value is its status. On error `*out` is NULL and
/// `hd_last_error` describes the failure.
///
/// # Safety
/// `command` must be a NUL-terminated string, `config_json` NULL or NUL-terminated,
/// and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hd_run(command: *const c_char, config_json: *const c_char, out: *mut *mut HdReport) -> HdCode {
    guarded(|| {
        if out.is_null() {
            set_error("out is NULL");
            return HdCode::NullArgument;
        }
        *out = ptr::null_mut();
        let cmd = match opt_str(command) {
            Ok(Some(c)) => c,
            Ok(None) => {
                set_error("command is NULL");
                return HdCode::NullArgument;
            }
            Err(c) => return c,
        };
        let config = match opt_str(config_json) {
            Ok(c) => c,
            Err(c) => return c,
        };
        match run_command(cmd, config) {
            Ok(report) => {
                let code = status_code(report.status);
                let json = CString::new(report.to_json()).unwrap_or_default();
                let csv = CString::new(report.to_csv()).unwrap_or_default();
                *out = Box::into_raw(Box::new(HdReport { report, json, csv }));
                code
            }
            Err(e) => {
                set_error(&e.to_string());
                code_of(&e)
            }
        }
    })
}

/// Overall status of a report; NullArgument for NULL.
///
/// # Safety
/// `r` must be NULL or a live handle from `hd_run`.
#[no_mangle]
pub unsafe extern "C" fn hd_report_status(r: *const HdReport) -> HdCode {
    match r.as_ref() {
        Some(r) => status_code(r.report.status),
        None => HdCode::NullArgument,
    }
}

/// The report as JSON, owned by the handle; NULL for NULL.
///
/// # Safety
/// `r` must be NULL or a live handle from `hd_run`.
#[no_mangle]
pub unsafe extern "C" fn hd_report_json(r: *const HdReport) -> *const c_char {
    r.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// The report as CSV, owned by the handle; NULL for NULL.
///
/// # Safety
/// `r` must be NULL or a live handle from `hd_run`.
#[no_mangle]
pub unsafe extern "C" fn hd_report_csv(r: *const HdReport) -> *const c_char {
    r.as_ref().map_or(ptr::null(), |r| r.csv.as_ptr())
}

/// Number of checks in a report (0 for NULL).
///
/// # Safety
/// `r` must be NULL or a live handle from `hd_run`.
#[no_mangle]
pub unsafe extern "C" fn hd_report_check_count(r: *const HdReport) -> usize {
    r.as_ref().map_or(0, |r| r.report.checks.len())
}

/// # Safety
/// `r` must be NULL or a handle from `hd_run` that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn hd_report_free(r: *mut HdReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Build y^2 = f(x) over F_p from integer coefficients, constant term first.
///
/// # Safety
/// `coeffs` must point to `len` readable values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hd_jacobian_new(p: u64, coeffs: *const i64, len: usize, out: *mut *mut HdJacobian) -> HdCode {
    guarded(|| {
        if out.is_null() || (coeffs.is_null() && len > 0) {
            set_error("NULL argument");
            return HdCode::NullArgument;
        }
        *out = ptr::null_mut();
        let cs = if len == 0 { &[][..] } else { std::slice::from_raw_parts(coeffs, len) };
        let built = Gf::prime(p).and_then(|k| {
            let f = PolyRing::new(k.clone()).from_ints(cs);
            HyperellipticCurve::new(k, f)
        });
        match built {
            Ok(curve) => {
                *out = Box::into_raw(Box::new(HdJacobian { curve }));
                HdCode::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                code_of(&e)
            }
        }
    })
}

/// Genus of the curve; 0 for NULL.
///
/// # Safety
/// `j` must be NULL or a live handle from `hd_jacobian_new`.
#[no_mangle]
pub unsafe extern "C" fn hd_jacobian_genus(j: *const HdJacobian) -> usize {
    j.as_ref().map_or(0, |j| j.curve.genus)
}

/// |J(F_p)| by enumeration, cross-checked against L(1) from point counts.
/// A mismatch returns Fail.
///
/// # Safety
/// `j` must be a live handle and `order` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hd_jacobian_order(j: *const HdJacobian, budget: u64, order: *mut u64) -> HdCode {
    guarded(|| {
        let (Some(j), false) = (j.as_ref(), order.is_null()) else {
            set_error("NULL argument");
            return HdCode::NullArgument;
        };
        let res = enumerate_jacobian(&j.curve, budget).and_then(|en| Ok((en.order(), zeta_l_polynomial(&j.curve, budget)?.at_one())));
        match res {
            Ok((n, l1)) => {
                *order = n as u64;
                if l1 == n.into() {
                    HdCode::Ok
                } else {
                    set_error(&format!("enumeration gives {n}, L(1) = {l1}"));
                    HdCode::Fail
                }
            }
            Err(e) => {
                set_error(&e.to_string());
                code_of(&e)
            }
        }
    })
}

/// # Safety
/// `j` must be NULL or a handle from `hd_jacobian_new` that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn hd_jacobian_free(j: *mut HdJacobian) {
    if !j.is_null() {
        drop(Box::from_raw(j));
    }
}

/// Message for the last error on this thread (empty if none).
#[no_mangle]
pub extern "C" fn hd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version.
#[no_mangle]
pub extern "C" fn hd_version() -> *const c_char {
    static V: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    V.as_ptr() as *const c_char
}
