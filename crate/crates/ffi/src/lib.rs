//! C interface to the qfsplit engine.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free` function. Strings returned through out
//! parameters are heap allocated and must be released with
//! `qfs_string_free`. Every entry point returns a [`QfsStatus`] and never
//! unwinds across the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qfsplit::delta::LiftSpec;
use qfsplit::multiheight::{multiheight_colon, qfs_height, EngineConfig, HeightReport, QfsHeight};
use qfsplit::threshold::{height_seq_to_ppt, PptRational};
use qfsplit::Error;

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QfsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// The polynomial text did not parse.
    Syntax = 3,
    NotPrime = 4,
    InvalidInput = 5,
    /// No height up to the cap.
    NotQuasiFSplit = 6,
    /// A degree, exponent or size limit was reached.
    Limit = 7,
    Internal = 8,
    Panic = 9,
}

/// A lift `f + pG` ready for computation.
pub struct QfsLift {
    spec: LiftSpec,
}

/// A computed multi-height with its threshold.
pub struct QfsReport {
    report: HeightReport,
    ppt: PptRational,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> QfsStatus {
    match err {
        Error::Syntax { .. } | Error::UnknownVariable { .. } => QfsStatus::Syntax,
        Error::NotPrime(_) => QfsStatus::NotPrime,
        Error::NotQuasiFSplit(_) => QfsStatus::NotQuasiFSplit,
        Error::ExponentOverflow | Error::DegreeCeiling { .. } | Error::TermLimit { .. } | Error::DegreeBound { .. } => {
            QfsStatus::Limit
        }
        Error::Internal(_) => QfsStatus::Internal,
        _ => QfsStatus::InvalidInput,
    }
}

fn fail(err: Error) -> QfsStatus {
    let s = status_of(&err);
    set_last_error(err.to_string());
    s
}

fn guard<F: FnOnce() -> QfsStatus>(f: F) -> QfsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_last_error("panic inside qfsplit".into());
            QfsStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, QfsStatus> {
    if s.is_null() {
        set_last_error("null string argument".into());
        return Err(QfsStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_last_error("string argument is not UTF-8".into());
        QfsStatus::InvalidUtf8
    })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> QfsStatus {
    if out.is_null() {
        return QfsStatus::NullPointer;
    }
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            QfsStatus::Ok
        }
        Err(_) => QfsStatus::Internal,
    }
}

/// Parses `f` and `G` over `Z/p^2` and validates the lift.
///
/// # Safety
/// `f` and `g` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfs_lift_new(p: u64, f: *const c_char, g: *const c_char, out: *mut *mut QfsLift) -> QfsStatus {
    guard(|| {
        if out.is_null() {
            return QfsStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let (f, g) = match (read_str(f), read_str(g)) {
            (Ok(f), Ok(g)) => (f, g),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match LiftSpec::parse(p, f, g) {
            Ok(spec) => {
                *out = Box::into_raw(Box::new(QfsLift { spec }));
                QfsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `lift` must come from `qfs_lift_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qfs_lift_free(lift: *mut QfsLift) {
    if !lift.is_null() {
        drop(Box::from_raw(lift));
    }
}

/// The quasi-F-split height, searched up to `h_cap`.
///
/// # Safety
/// `lift` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfs_lift_height(lift: *const QfsLift, h_cap: u32, out: *mut u32) -> QfsStatus {
    guard(|| {
        if lift.is_null() || out.is_null() {
            return QfsStatus::NullPointer;
        }
        match qfs_height(&(*lift).spec, h_cap) {
            Ok(QfsHeight::Height(h)) => {
                *out = h;
                QfsStatus::Ok
            }
            Ok(QfsHeight::NotQuasiFSplitUpTo(c)) => fail(Error::NotQuasiFSplit(c)),
            Err(e) => fail(e),
        }
    })
}

/// Multi-height by the colon recursion. Zero limits select the defaults.
///
/// # Safety
/// `lift` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfs_multiheight(
    lift: *const QfsLift,
    h_cap: u32,
    r_max: u32,
    out: *mut *mut QfsReport,
) -> QfsStatus {
    guard(|| {
        if lift.is_null() || out.is_null() {
            return QfsStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let mut cfg = EngineConfig::default();
        if h_cap > 0 {
            cfg.h_cap = h_cap;
        }
        if r_max > 0 {
            cfg.r_max = r_max as usize;
        }
        let spec = &(*lift).spec;
        match multiheight_colon(spec, &cfg) {
            Ok(report) => {
                let ppt = height_seq_to_ppt(&report.seq, spec.p());
                *out = Box::into_raw(Box::new(QfsReport { report, ppt }));
                QfsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `report` must come from `qfs_multiheight` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qfs_report_free(report: *mut QfsReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Whether the reported sequence is proved pre-periodic. False for null.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qfs_report_certified(report: *const QfsReport) -> bool {
    !report.is_null() && (*report).report.seq.certified()
}

/// Lengths of the preperiod and of the period.
///
/// # Safety
/// `report` must be a live handle; both out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfs_report_shape(report: *const QfsReport, preperiod_len: *mut usize, period_len: *mut usize) -> QfsStatus {
    if report.is_null() || preperiod_len.is_null() || period_len.is_null() {
        return QfsStatus::NullPointer;
    }
    let seq = &(*report).report.seq;
    *preperiod_len = seq.preperiod().len();
    *period_len = seq.period().len();
    QfsStatus::Ok
}

/// The `i`-th height `h_i` (any `i`, following the period).
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfs_report_height(report: *const QfsReport, i: usize, out: *mut u32) -> QfsStatus {
    if report.is_null() || out.is_null() {
        return QfsStatus::NullPointer;
    }
    *out = (*report).report.seq.entry(i);
    QfsStatus::Ok
}

/// The threshold as `"a/b"`.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfs_report_ppt(report: *const QfsReport, out: *mut *mut c_char) -> QfsStatus {
    if report.is_null() {
        return QfsStatus::NullPointer;
    }
    write_string(out, (*report).ppt.to_string())
}

/// The multi-height as text, such as `"4,(1)"`.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfs_report_multiheight(report: *const QfsReport, out: *mut *mut c_char) -> QfsStatus {
    if report.is_null() {
        return QfsStatus::NullPointer;
    }
    write_string(out, (*report).report.seq.to_string())
}

/// The full report as a JSON object.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfs_report_json(report: *const QfsReport, out: *mut *mut c_char) -> QfsStatus {
    if report.is_null() {
        return QfsStatus::NullPointer;
    }
    let r = &*report;
    let mut v = r.report.to_json();
    v["ppt"] = r.ppt.to_string().into();
    write_string(out, v.to_string())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string returned here, not freed before.
#[no_mangle]
pub unsafe extern "C" fn qfs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qfs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn qfs_status_name(status: QfsStatus) -> *const c_char {
    let s: &'static CStr = match status {
        QfsStatus::Ok => c"ok",
        QfsStatus::NullPointer => c"null pointer",
        QfsStatus::InvalidUtf8 => c"invalid UTF-8",
        QfsStatus::Syntax => c"syntax error",
        QfsStatus::NotPrime => c"not a prime",
        QfsStatus::InvalidInput => c"invalid input",
        QfsStatus::NotQuasiFSplit => c"not quasi-F-split",
        QfsStatus::Limit => c"computational limit",
        QfsStatus::Internal => c"internal error",
        QfsStatus::Panic => c"panic",
    };
    s.as_ptr()
}

/// Library version, static.
#[no_mangle]
pub extern "C" fn qfs_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => c"unknown",
    };
    VERSION.as_ptr()
}
