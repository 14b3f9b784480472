//! C ABI over `qsym`.
//!
//! Rational functions cross the boundary as opaque `QsymRatFun` handles and
//! rationals as decimal strings (`"n"` or `"n/d"`). Every function returns a
//! [`QsymStatus`]; on failure [`qsym_last_error`] describes what went wrong.
//! Handles come from `qsym_*` constructors and are released with
//! [`qsym_ratfun_free`]; strings handed out are released with
//! [`qsym_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qsym::identities::{run_point, GridPoint, Identity, Params};
use qsym::qbernoulli::{beta_higher, beta_weighted, t_sum, t_sum_h, BetaQuery, WeightedBetaQuery};
use qsym::qcore::BaseExp;
use qsym::{Error, RatFun};

/// Result codes. The first four agree with the command line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QsymStatus {
    Ok = 0,
    IdentityFailed = 1,
    Domain = 2,
    Resource = 3,
    Degenerate = 4,
    Pole = 5,
    DivisionByZero = 6,
    Parse = 7,
    NullPointer = 8,
    Panic = 9,
}

/// Opaque rational function in `q`.
pub struct QsymRatFun(RatFun);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QsymStatus {
    match e {
        Error::Domain(_) => QsymStatus::Domain,
        Error::Resource(_) => QsymStatus::Resource,
        Error::Degenerate { .. } => QsymStatus::Degenerate,
        Error::Pole { .. } => QsymStatus::Pole,
        Error::DivisionByZero(_) => QsymStatus::DivisionByZero,
        Error::Parse(_) => QsymStatus::Parse,
    }
}

/// Runs `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), (QsymStatus, String)>) -> QsymStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            QsymStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            QsymStatus::Panic
        }
    }
}

fn lift<T>(r: qsym::Result<T>) -> Result<T, (QsymStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (QsymStatus, String) {
    (QsymStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `out` must be null or valid for one pointer write.
unsafe fn put_handle(out: *mut *mut QsymRatFun, f: RatFun) -> Result<(), (QsymStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(QsymRatFun(f)));
    Ok(())
}

/// # Safety
/// `out` must be null or valid for one pointer write.
unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (QsymStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s).map_err(|_| (QsymStatus::Parse, "string contains nul".to_string()))?.into_raw();
    Ok(())
}

/// # Safety
/// `p` must be null or a live handle.
unsafe fn handle<'a>(p: *const QsymRatFun, what: &str) -> Result<&'a RatFun, (QsymStatus, String)> {
    p.as_ref().map(|h| &h.0).ok_or_else(|| null(what))
}

/// # Safety
/// `s` must be null or a nul-terminated string.
unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, (QsymStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (QsymStatus::Parse, format!("{what} is not UTF-8")))
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next `qsym_*` call on the same thread.
#[no_mangle]
pub extern "C" fn qsym_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// `beta^{(r)}_{n,q^w}(arg/w)`.
///
/// # Safety
/// `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn qsym_beta_higher(n: u32, r: u32, w: u32, arg: i64, out: *mut *mut QsymRatFun) -> QsymStatus {
    guard(|| {
        let f = lift(BetaQuery::new(n, r, w, arg).and_then(|q| beta_higher(&q)))?;
        put_handle(out, f)
    })
}

/// Weighted `beta^{(h,r)}_{n,q^w}(arg/w)`; degenerate `h` yields
/// `QSYM_STATUS_DEGENERATE`.
///
/// # Safety
/// `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn qsym_beta_weighted(
    n: u32,
    h: i64,
    r: u32,
    w: u32,
    arg: i64,
    out: *mut *mut QsymRatFun,
) -> QsymStatus {
    guard(|| {
        let f = lift(WeightedBetaQuery::new(n, h, r, w, arg).and_then(|q| beta_weighted(&q)))?;
        put_handle(out, f)
    })
}

/// `T^{(r)}_{n,i}(wlim | q^b)`.
///
/// # Safety
/// `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn qsym_t_sum(
    n: u32,
    i: u32,
    r: u32,
    wlim: u32,
    b: u32,
    out: *mut *mut QsymRatFun,
) -> QsymStatus {
    guard(|| {
        let f = lift(BaseExp::new(b).and_then(|b| t_sum(n, i, r, wlim, b)))?;
        put_handle(out, f)
    })
}

/// `T^{(h,r)}_{n,i}(wlim | q^b)`.
///
/// # Safety
/// `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn qsym_t_sum_h(
    n: u32,
    i: u32,
    h: i64,
    r: u32,
    wlim: u32,
    b: u32,
    out: *mut *mut QsymRatFun,
) -> QsymStatus {
    guard(|| {
        let f = lift(BaseExp::new(b).and_then(|b| t_sum_h(n, i, h, r, wlim, b)))?;
        put_handle(out, f)
    })
}

/// Parses the `{"num": [...], "den": [...]}` JSON form.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn qsym_ratfun_from_json(json: *const c_char, out: *mut *mut QsymRatFun) -> QsymStatus {
    guard(|| {
        let s = text(json, "json")?;
        let f: RatFun = serde_json::from_str(s).map_err(|e| (QsymStatus::Parse, e.to_string()))?;
        put_handle(out, f)
    })
}

/// Canonical JSON form; free the result with [`qsym_string_free`].
///
/// # Safety
/// `f` must be a live handle and `out` valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn qsym_ratfun_to_json(f: *const QsymRatFun, out: *mut *mut c_char) -> QsymStatus {
    guard(|| {
        let f = handle(f, "f")?;
        put_string(out, serde_json::to_string(f).expect("ratfun serializes"))
    })
}

/// Human-readable form such as `-1/(1+q)`; free with [`qsym_string_free`].
///
/// # Safety
/// `f` must be a live handle and `out` valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn qsym_ratfun_to_pretty(f: *const QsymRatFun, out: *mut *mut c_char) -> QsymStatus {
    guard(|| put_string(out, handle(f, "f")?.to_pretty()))
}

/// Equality as rational functions.
///
/// # Safety
/// `a` and `b` must be live handles and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn qsym_ratfun_eq(a: *const QsymRatFun, b: *const QsymRatFun, out: *mut bool) -> QsymStatus {
    guard(|| {
        let eq = handle(a, "a")?.equiv(handle(b, "b")?);
        if out.is_null() {
            return Err(null("out"));
        }
        *out = eq;
        Ok(())
    })
}

/// `a + b` as a new handle.
///
/// # Safety
/// `a` and `b` must be live handles and `out` valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn qsym_ratfun_add(
    a: *const QsymRatFun,
    b: *const QsymRatFun,
    out: *mut *mut QsymRatFun,
) -> QsymStatus {
    guard(|| {
        let s = handle(a, "a")? + handle(b, "b")?;
        put_handle(out, s)
    })
}

/// `a * b` as a new handle.
///
/// # Safety
/// `a` and `b` must be live handles and `out` valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn qsym_ratfun_mul(
    a: *const QsymRatFun,
    b: *const QsymRatFun,
    out: *mut *mut QsymRatFun,
) -> QsymStatus {
    guard(|| {
        let p = handle(a, "a")? * handle(b, "b")?;
        put_handle(out, p)
    })
}

/// Exact value at `q = q0`, both given as rational strings.
///
/// # Safety
/// `f` must be a live handle, `q0` a nul-terminated string and `out` valid
/// for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn qsym_ratfun_eval(
    f: *const QsymRatFun,
    q0: *const c_char,
    out: *mut *mut c_char,
) -> QsymStatus {
    guard(|| {
        let f = handle(f, "f")?;
        let q0 = lift(qsym::arith::parse_rational(text(q0, "q0")?))?;
        let v = lift(f.eval(&q0))?;
        put_string(out, qsym::arith::format_rational(&v))
    })
}

/// Checks one identity at one parameter point; unused parameters are
/// ignored. `*holds` receives the verdict and, when `report` is non-null,
/// `*report` the JSON report line including both sides.
///
/// # Safety
/// `identity` must be a nul-terminated string, `holds` valid for one write
/// and `report` null or valid for one pointer write.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn qsym_check(
    identity: *const c_char,
    n: u32,
    r: u32,
    h: i64,
    w1: u32,
    w2: u32,
    x: i64,
    holds: *mut bool,
    report: *mut *mut c_char,
) -> QsymStatus {
    guard(|| {
        let id: Identity = lift(text(identity, "identity")?.parse())?;
        if holds.is_null() {
            return Err(null("holds"));
        }
        let params = Params { n, r: Some(r), h: Some(h), w1: Some(w1), w2: Some(w2), x: Some(x) };
        let rep = lift(run_point(&GridPoint { identity: id, params }, None))?;
        *holds = rep.holds;
        if !report.is_null() {
            put_string(report, rep.to_json_line(true))?;
        }
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `f` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qsym_ratfun_free(f: *mut QsymRatFun) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qsym_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
