//! C ABI over the cckit engine.
//!
//! Structures are opaque handles. Every command writes a JSON report into a newly allocated
//! string that the caller releases with `cckit_string_free`. Failures set a thread-local
//! message readable through `cckit_last_error_message`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cckit::algebra::{set_term_limit, TermLimitExceeded};
use cckit::cli::{evaluate, Request, Response, Structure};
use cckit::suite::SuiteConfig;
use cckit::symmetries::SymmetryTarget;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CckitStatus {
    /// The call succeeded and every check in the report passed.
    Ok = 0,
    /// The report was produced but at least one check failed.
    CheckFailed = 1,
    /// Malformed input, or a structure unsuitable for the command.
    InputError = 2,
    /// A required pointer argument was null.
    NullPointer = 3,
    /// An unexpected internal failure.
    Internal = 4,
}

/// A parsed structure `(omega, Omega)` with its chart.
pub struct CckitStructure {
    inner: Structure,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(text).expect("interior nuls removed")));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Runs `f`, mapping errors and panics to status codes.
fn guarded(f: impl FnOnce() -> Result<CckitStatus, (CckitStatus, String)>) -> CckitStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            if let Some(t) = payload.downcast_ref::<TermLimitExceeded>() {
                set_error(t.to_string());
                CckitStatus::InputError
            } else {
                set_error("internal error");
                CckitStatus::Internal
            }
        }
    }
}

fn input_error(e: cckit::Error) -> (CckitStatus, String) {
    (CckitStatus::InputError, e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (CckitStatus, String)> {
    if p.is_null() {
        return Err((CckitStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (CckitStatus::InputError, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a>(s: *const CckitStructure) -> Result<&'a Structure, (CckitStatus, String)> {
    s.as_ref().map(|h| &h.inner).ok_or((CckitStatus::NullPointer, "structure handle is null".to_string()))
}

unsafe fn store_structure(
    out: *mut *mut CckitStructure,
    make: impl FnOnce() -> cckit::Result<Structure>,
) -> CckitStatus {
    guarded(|| {
        if out.is_null() {
            return Err((CckitStatus::NullPointer, "output pointer is null".into()));
        }
        *out = ptr::null_mut();
        let inner = make().map_err(input_error)?;
        *out = Box::into_raw(Box::new(CckitStructure { inner }));
        Ok(CckitStatus::Ok)
    })
}

unsafe fn run_request<'a>(
    s: *const CckitStructure,
    out_json: *mut *mut c_char,
    request: impl FnOnce() -> Result<Request<'a>, (CckitStatus, String)>,
) -> CckitStatus {
    guarded(|| {
        if out_json.is_null() {
            return Err((CckitStatus::NullPointer, "output pointer is null".into()));
        }
        *out_json = ptr::null_mut();
        let structure = handle(s)?;
        let Response { json, exit_code } = evaluate(structure, &request()?).map_err(input_error)?;
        let text = CString::new(json.to_string()).expect("JSON has no interior nuls");
        *out_json = text.into_raw();
        Ok(if exit_code == 0 { CckitStatus::Ok } else { CckitStatus::CheckFailed })
    })
}

/// Parses a structure file.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn cckit_structure_from_json(json: *const c_char, out: *mut *mut CckitStructure) -> CckitStatus {
    let text = match read_str(json, "json") {
        Ok(t) => t,
        Err((status, msg)) => {
            set_error(msg);
            return status;
        }
    };
    store_structure(out, || Structure::from_json(text))
}

/// Loads a built-in example (`cosym3`, `contact3`, `contact5`, `acc3`, `singular3`).
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn cckit_structure_from_example(name: *const c_char, out: *mut *mut CckitStructure) -> CckitStatus {
    let text = match read_str(name, "name") {
        Ok(t) => t,
        Err((status, msg)) => {
            set_error(msg);
            return status;
        }
    };
    store_structure(out, || Structure::from_example(text))
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `s` must be null or a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cckit_structure_free(s: *mut CckitStructure) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Dimension of the chart, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cckit_structure_dimension(s: *const CckitStructure) -> usize {
    s.as_ref().map_or(0, |h| h.inner.chart.dim())
}

/// Structure class and regularity density.
///
/// # Safety
/// `s` must be a live handle and `out_json` a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn cckit_classify_json(s: *const CckitStructure, out_json: *mut *mut c_char) -> CckitStatus {
    run_request(s, out_json, || Ok(Request::Classify))
}

/// Dual pair `(E, Lambda)` with its duality certificate.
///
/// # Safety
/// `s` must be a live handle and `out_json` a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn cckit_dualize_json(s: *const CckitStructure, out_json: *mut *mut c_char) -> CckitStatus {
    run_request(s, out_json, || Ok(Request::Dualize))
}

/// Duality conditions and contravariant identities.
///
/// # Safety
/// `s` must be a live handle and `out_json` a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn cckit_verify_json(s: *const CckitStructure, out_json: *mut *mut c_char) -> CckitStatus {
    run_request(s, out_json, || Ok(Request::Verify))
}

/// Bracket of the two pairs in `pairs_json`, with the compatibility check.
///
/// # Safety
/// `s` must be a live handle, `pairs_json` a nul-terminated string and `out_json` a valid
/// pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn cckit_bracket_json(
    s: *const CckitStructure,
    pairs_json: *const c_char,
    out_json: *mut *mut c_char,
) -> CckitStatus {
    run_request(s, out_json, || Ok(Request::Bracket { pairs_json: read_str(pairs_json, "pairs_json")? }))
}

/// Generator conditions for `target` on each pair, cross-checked against Lie derivatives.
///
/// # Safety
/// `s` must be a live handle, `pairs_json` and `target` nul-terminated strings and `out_json` a
/// valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn cckit_symmetry_json(
    s: *const CckitStructure,
    pairs_json: *const c_char,
    target: *const c_char,
    out_json: *mut *mut c_char,
) -> CckitStatus {
    run_request(s, out_json, || {
        let target: SymmetryTarget = read_str(target, "target")?.parse().map_err(input_error)?;
        Ok(Request::Symmetry { pairs_json: read_str(pairs_json, "pairs_json")?, target })
    })
}

/// Randomized identity suite.
///
/// # Safety
/// `s` must be a live handle and `out_json` a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn cckit_suite_json(
    s: *const CckitStructure,
    trials: usize,
    degree: u32,
    seed: u64,
    out_json: *mut *mut c_char,
) -> CckitStatus {
    run_request(s, out_json, || Ok(Request::Suite(SuiteConfig { trials, degree, seed })))
}

/// Caps the number of terms any intermediate polynomial may hold; 0 removes the cap.
#[no_mangle]
pub extern "C" fn cckit_set_term_limit(limit: usize) {
    set_term_limit(limit);
}

/// Message for the last failure on this thread, or null. Valid until the next call into the
/// library from the same thread.
#[no_mangle]
pub extern "C" fn cckit_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cckit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
