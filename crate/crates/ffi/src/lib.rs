//! C ABI over clarkkit. Sets and maps are opaque heap handles released with
//! their `_free` function. Every call returns a [`ClarkkitStatus`]; on failure
//! `clarkkit_last_error` describes the problem. Strings handed out by the
//! library are released with `clarkkit_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use clarkkit::angular::{self, RefinementControl};
use clarkkit::circle::{BoundarySet, CirclePoint, Turn};
use clarkkit::discmap::DiscMap;
use clarkkit::profile::ProfileMode;
use clarkkit::theorem::{self, VerifyOptions};
use clarkkit::verdict::Verdict;
use clarkkit::Error;
use num_complex::Complex64;

/// Opaque boundary set.
pub struct ClarkkitSet(BoundarySet);

/// Opaque self-map of the disc.
pub struct ClarkkitMap(DiscMap);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClarkkitStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    NumericalError = 5,
    IoError = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClarkkitMode {
    Polynomial = 0,
    Distance = 1,
}

impl From<ClarkkitMode> for ProfileMode {
    fn from(m: ClarkkitMode) -> Self {
        match m {
            ClarkkitMode::Polynomial => ProfileMode::Polynomial,
            ClarkkitMode::Distance => ProfileMode::Distance,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClarkkitVerdictKind {
    Finite = 0,
    Divergent = 1,
    Undetermined = 2,
}

/// Outcome of `clarkkit_detect`. `value` and `julia_limit` are NaN when absent.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct ClarkkitVerdict {
    pub kind: ClarkkitVerdictKind,
    pub value: f64,
    pub julia_limit: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(ClarkkitStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Rational { .. } | Error::Json(_) | Error::Csv(_) | Error::Format(_) => ClarkkitStatus::ParseError,
            Error::Io(_) => ClarkkitStatus::IoError,
            Error::NotLogIntegrable(_) | Error::DepthOverflow(_) => ClarkkitStatus::NumericalError,
            _ => ClarkkitStatus::InvalidInput,
        };
        Failure(status, format!("{}: {e}", e.code()))
    }
}

fn null(what: &str) -> Failure {
    Failure(ClarkkitStatus::NullArgument, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status plus last-error text.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ClarkkitStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            ClarkkitStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            ClarkkitStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(ClarkkitStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

fn control(depth: u32, grid_log2: u32) -> RefinementControl {
    RefinementControl { max_depth: depth, base_grid_log2: grid_log2, ..Default::default() }
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn clarkkit_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn clarkkit_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a boundary-set JSON document.
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn clarkkit_set_from_json(json: *const c_char, out_set: *mut *mut ClarkkitSet) -> ClarkkitStatus {
    guard(|| {
        let slot = out(out_set, "out_set")?;
        *slot = ptr::null_mut();
        let set = BoundarySet::from_json(text(json, "json")?)?;
        set.points()?;
        *slot = Box::into_raw(Box::new(ClarkkitSet(set)));
        Ok(())
    })
}

/// Beurling-Carleson entropy of the set.
///
/// # Safety
/// `set` must come from `clarkkit_set_from_json`; `out_entropy` must be valid.
#[no_mangle]
pub unsafe extern "C" fn clarkkit_set_entropy(set: *const ClarkkitSet, out_entropy: *mut f64) -> ClarkkitStatus {
    guard(|| {
        let e = handle(set, "set")?.0.entropy()?;
        *out(out_entropy, "out_entropy")? = e;
        Ok(())
    })
}

/// Number of distinct points in the set.
///
/// # Safety
/// `set` must be a live handle; `out_count` must be valid.
#[no_mangle]
pub unsafe extern "C" fn clarkkit_set_point_count(set: *const ClarkkitSet, out_count: *mut usize) -> ClarkkitStatus {
    guard(|| {
        let n = handle(set, "set")?.0.points()?.len();
        *out(out_count, "out_count")? = n;
        Ok(())
    })
}

/// # Safety
/// `set` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn clarkkit_set_free(set: *mut ClarkkitSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Parses a map JSON document. Relative grid paths resolve against
/// `base_dir`, or the working directory when it is null.
///
/// # Safety
/// `json` must be a valid C string, `base_dir` null or a valid C string.
#[no_mangle]
pub unsafe extern "C" fn clarkkit_map_from_json(
    json: *const c_char,
    base_dir: *const c_char,
    out_map: *mut *mut ClarkkitMap,
) -> ClarkkitStatus {
    guard(|| {
        let slot = out(out_map, "out_map")?;
        *slot = ptr::null_mut();
        let dir = if base_dir.is_null() { "." } else { text(base_dir, "base_dir")? };
        let map = clarkkit::io::map_from_json(text(json, "json")?, Path::new(dir))?;
        *slot = Box::into_raw(Box::new(ClarkkitMap(map)));
        Ok(())
    })
}

/// Builds the self-map whose angular-derivative set is the given finite set.
///
/// # Safety
/// `set` must be a live handle and `out_map` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn clarkkit_map_construct(
    set: *const ClarkkitSet,
    mode: ClarkkitMode,
    grid_log2: u32,
    out_map: *mut *mut ClarkkitMap,
) -> ClarkkitStatus {
    guard(|| {
        let slot = out(out_map, "out_map")?;
        *slot = ptr::null_mut();
        let cr = theorem::construct_from_set(&handle(set, "set")?.0, mode.into(), grid_log2)?;
        *slot = Box::into_raw(Box::new(ClarkkitMap(cr.map)));
        Ok(())
    })
}

/// Evaluates the map on the closed disc.
///
/// # Safety
/// `map` must be a live handle; the output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn clarkkit_map_eval(
    map: *const ClarkkitMap,
    re: f64,
    im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> ClarkkitStatus {
    guard(|| {
        let z = Complex64::new(re, im);
        if !(z.norm() <= 1.0) {
            return Err(Failure(ClarkkitStatus::InvalidInput, format!("point {z} is outside the closed disc")));
        }
        let w = handle(map, "map")?.0.eval(z);
        *out(out_re, "out_re")? = w.re;
        *out(out_im, "out_im")? = w.im;
        Ok(())
    })
}

/// # Safety
/// `map` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn clarkkit_map_free(map: *mut ClarkkitMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Angular-derivative verdict at the turn `lambda_num / lambda_den`, with
/// `alpha = 1` and `depth` dyadic annuli.
///
/// # Safety
/// `map` must be a live handle and `out_verdict` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn clarkkit_detect(
    map: *const ClarkkitMap,
    lambda_num: i64,
    lambda_den: i64,
    depth: u32,
    out_verdict: *mut ClarkkitVerdict,
) -> ClarkkitStatus {
    guard(|| {
        let slot = out(out_verdict, "out_verdict")?;
        let lambda = CirclePoint::from_fraction(lambda_num, lambda_den)?;
        let r = angular::detect(&handle(map, "map")?.0, lambda, CirclePoint::ONE, &control(depth, 12))?;
        let (kind, value) = match r.verdict {
            Verdict::Finite(v) => (ClarkkitVerdictKind::Finite, v),
            Verdict::Divergent => (ClarkkitVerdictKind::Divergent, f64::NAN),
            Verdict::Undetermined => (ClarkkitVerdictKind::Undetermined, f64::NAN),
        };
        *slot = ClarkkitVerdict { kind, value, julia_limit: r.julia_limit().unwrap_or(f64::NAN) };
        Ok(())
    })
}

/// Runs the full verification for the set and returns the JSON report in
/// `out_json` (free with `clarkkit_string_free`) and the exit-code triage
/// (0 pass, 2 inconclusive, 1 fail) in `out_exit`. Probes are offset by
/// `1 / offset_den` turns from each point.
///
/// # Safety
/// `set` must be a live handle; output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn clarkkit_verify_json(
    set: *const ClarkkitSet,
    mode: ClarkkitMode,
    grid_log2: u32,
    depth: u32,
    offset_den: i64,
    out_json: *mut *mut c_char,
    out_exit: *mut i32,
) -> ClarkkitStatus {
    guard(|| {
        let json_slot = out(out_json, "out_json")?;
        *json_slot = ptr::null_mut();
        let exit_slot = out(out_exit, "out_exit")?;
        if offset_den < 2 {
            return Err(Failure(ClarkkitStatus::InvalidInput, "offset_den must be at least 2".into()));
        }
        let opts = VerifyOptions {
            mode: mode.into(),
            grid_log2,
        };
        let rep = theorem::verify_theorem(
            &handle(set, "set")?.0,
            &[Turn::new(1, offset_den)],
            &control(depth, grid_log2),
            &opts,
        )?;
        let body = serde_json::to_string_pretty(&rep).map_err(|e| Failure::from(Error::Json(e)))?;
        *exit_slot = rep.status.exit_code();
        *json_slot = CString::new(body).map_err(|e| Failure(ClarkkitStatus::Panic, e.to_string()))?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn clarkkit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
