//! C ABI over the classification engine.
//!
//! Conventions:
//! - Every fallible function returns an [`FsStatus`]; results travel
//!   through `out` pointers, which are written only on `FS_STATUS_OK`.
//! - On any failure the per-thread error message is updated; read it with
//!   [`fs_last_error_message`].
//! - Strings returned through `out` parameters are NUL-terminated UTF-8
//!   owned by the caller; release them with [`fs_string_free`]. The
//!   pointers returned by [`fs_version`] and [`fs_last_error_message`]
//!   are borrowed and must not be freed.
//! - Parsed signatures are opaque [`FsSignature`] handles; release them
//!   with [`fs_signature_free`].
//! - A `budget` of zero selects the default search budget.
//!
//! Panics never cross the boundary: they are caught and reported as
//! `FS_STATUS_INTERNAL_ERROR`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fusionscan::enumerate::count_signatures;
use fusionscan::report::{classify, ClassifyConfig};
use fusionscan::signature::TypeSignature;
use fusionscan::solver::{solve, SolveConfig, DEFAULT_BUDGET};

/// Result of every fallible FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsStatus {
    /// The call succeeded and the out parameters are valid.
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A signature failed to parse.
    ParseError = 3,
    /// Arguments were structurally valid but unusable (for example the
    /// dimension-90 rule requested for another dimension).
    UsageError = 4,
    /// A panic was caught at the boundary; this is a bug.
    InternalError = 5,
}

/// Opaque parsed type signature.
pub struct FsSignature {
    inner: TypeSignature,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let stored = CString::new(message)
        .unwrap_or_else(|_| CString::new("error message contained NUL").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn fail(status: FsStatus, message: String) -> FsStatus {
    set_error(message);
    status
}

/// Runs a closure with panics converted to `InternalError`.
fn guarded(body: impl FnOnce() -> FsStatus) -> FsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(FsStatus::InternalError, "internal panic".to_string()),
    }
}

/// Converts a C string argument, reporting NULL and encoding failures.
///
/// # Safety
/// `text` must be NULL or point to a NUL-terminated string.
unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, FsStatus> {
    if text.is_null() {
        return Err(fail(
            FsStatus::NullArgument,
            "string argument is NULL".to_string(),
        ));
    }
    unsafe { CStr::from_ptr(text) }.to_str().map_err(|_| {
        fail(
            FsStatus::InvalidUtf8,
            "string argument is not valid UTF-8".to_string(),
        )
    })
}

fn write_string(out: *mut *mut c_char, text: String) -> FsStatus {
    let stored = match CString::new(text) {
        Ok(stored) => stored,
        Err(_) => {
            return fail(
                FsStatus::InternalError,
                "result contained an interior NUL".to_string(),
            )
        }
    };
    unsafe { *out = stored.into_raw() };
    FsStatus::Ok
}

fn solve_config(budget: u64, symmetry_breaking: bool) -> SolveConfig {
    SolveConfig {
        budget: if budget == 0 { DEFAULT_BUDGET } else { budget },
        symmetry_breaking,
    }
}

/// The crate version as a static NUL-terminated string. Do not free.
#[no_mangle]
pub extern "C" fn fs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// The last error message recorded on this thread, or NULL if none.
/// Borrowed; valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |message| message.as_ptr())
    })
}

/// Parses a type signature like `"(1,2;2,2;4,5)"` into a handle.
///
/// # Safety
/// `text` must be NULL or NUL-terminated; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fs_signature_parse(
    text: *const c_char,
    out: *mut *mut FsSignature,
) -> FsStatus {
    guarded(|| {
        if out.is_null() {
            return fail(FsStatus::NullArgument, "out pointer is NULL".to_string());
        }
        let text = match unsafe { read_str(text) } {
            Ok(text) => text,
            Err(status) => return status,
        };
        match text.parse::<TypeSignature>() {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(FsSignature { inner })) };
                FsStatus::Ok
            }
            Err(err) => fail(FsStatus::ParseError, err.to_string()),
        }
    })
}

/// Releases a handle from [`fs_signature_parse`]. NULL is a no-op.
///
/// # Safety
/// `sig` must be NULL or a pointer previously returned by
/// [`fs_signature_parse`] that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn fs_signature_free(sig: *mut FsSignature) {
    if !sig.is_null() {
        drop(unsafe { Box::from_raw(sig) });
    }
}

/// Renders a signature in canonical tuple notation.
///
/// # Safety
/// `sig` must be a live handle; `out` must be a valid pointer. The
/// returned string is owned by the caller (see [`fs_string_free`]).
#[no_mangle]
pub unsafe extern "C" fn fs_signature_render(
    sig: *const FsSignature,
    out: *mut *mut c_char,
) -> FsStatus {
    guarded(|| {
        if sig.is_null() || out.is_null() {
            return fail(FsStatus::NullArgument, "argument is NULL".to_string());
        }
        let sig = unsafe { &*sig };
        write_string(out, sig.inner.to_string())
    })
}

/// The global (Frobenius-Perron) dimension of a signature.
///
/// # Safety
/// `sig` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fs_signature_global_dim(
    sig: *const FsSignature,
    out: *mut u64,
) -> FsStatus {
    guarded(|| {
        if sig.is_null() || out.is_null() {
            return fail(FsStatus::NullArgument, "argument is NULL".to_string());
        }
        let sig = unsafe { &*sig };
        unsafe { *out = sig.inner.global_dim_u64() };
        FsStatus::Ok
    })
}

/// Whether every dimension of the signature divides `fpdim`. Fails with
/// `FS_STATUS_USAGE_ERROR` when `fpdim` is not the signature's global
/// dimension.
///
/// # Safety
/// `sig` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fs_signature_is_frobenius(
    sig: *const FsSignature,
    fpdim: u64,
    out: *mut bool,
) -> FsStatus {
    guarded(|| {
        if sig.is_null() || out.is_null() {
            return fail(FsStatus::NullArgument, "argument is NULL".to_string());
        }
        let sig = unsafe { &*sig };
        match sig.inner.is_frobenius_type(fpdim) {
            Ok(answer) => {
                unsafe { *out = answer };
                FsStatus::Ok
            }
            Err(err) => fail(FsStatus::UsageError, err.to_string()),
        }
    })
}

/// The number of candidate type signatures of the given global dimension.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fs_enumerate_count(fpdim: u64, out: *mut u64) -> FsStatus {
    guarded(|| {
        if out.is_null() {
            return fail(FsStatus::NullArgument, "out pointer is NULL".to_string());
        }
        unsafe { *out = count_signatures(fpdim, None) };
        FsStatus::Ok
    })
}

/// Runs the arithmetic exclusion rules over every candidate of `fpdim`
/// and returns the full filter report as a JSON document.
///
/// # Safety
/// `out` must be a valid pointer; the returned string is owned by the
/// caller (see [`fs_string_free`]).
#[no_mangle]
pub unsafe extern "C" fn fs_filter_json(
    fpdim: u64,
    enable_cor90_6: bool,
    out: *mut *mut c_char,
) -> FsStatus {
    guarded(|| {
        if out.is_null() {
            return fail(FsStatus::NullArgument, "out pointer is NULL".to_string());
        }
        let rules = if enable_cor90_6 {
            fusionscan::filters::RuleId::ALL.to_vec()
        } else {
            fusionscan::filters::RuleId::DEFAULT.to_vec()
        };
        let candidates = fusionscan::enumerate::enumerate_signatures(fpdim, None);
        match fusionscan::filters::run_filters(&candidates, &rules, fpdim) {
            Ok(report) => match serde_json::to_string_pretty(&report) {
                Ok(json) => write_string(out, json),
                Err(err) => fail(FsStatus::InternalError, err.to_string()),
            },
            Err(err) => fail(FsStatus::UsageError, err.to_string()),
        }
    })
}

/// Decides feasibility of one signature and returns the outcome record
/// (status, node count, exhaustiveness, model if found) as JSON.
///
/// # Safety
/// `text` must be NULL or NUL-terminated; `out` must be a valid pointer;
/// the returned string is owned by the caller (see [`fs_string_free`]).
#[no_mangle]
pub unsafe extern "C" fn fs_solve_json(
    text: *const c_char,
    budget: u64,
    symmetry_breaking: bool,
    out: *mut *mut c_char,
) -> FsStatus {
    guarded(|| {
        if out.is_null() {
            return fail(FsStatus::NullArgument, "out pointer is NULL".to_string());
        }
        let text = match unsafe { read_str(text) } {
            Ok(text) => text,
            Err(status) => return status,
        };
        let sig = match text.parse::<TypeSignature>() {
            Ok(sig) => sig,
            Err(err) => return fail(FsStatus::ParseError, err.to_string()),
        };
        let result = solve(&sig, &solve_config(budget, symmetry_breaking));
        match serde_json::to_string_pretty(&result) {
            Ok(json) => write_string(out, json),
            Err(err) => fail(FsStatus::InternalError, err.to_string()),
        }
    })
}

/// Runs the full pipeline for one global dimension and returns the
/// classification report as JSON.
///
/// # Safety
/// `out` must be a valid pointer; the returned string is owned by the
/// caller (see [`fs_string_free`]).
#[no_mangle]
pub unsafe extern "C" fn fs_classify_json(
    fpdim: u64,
    enable_cor90_6: bool,
    solve_all: bool,
    budget: u64,
    out: *mut *mut c_char,
) -> FsStatus {
    guarded(|| {
        if out.is_null() {
            return fail(FsStatus::NullArgument, "out pointer is NULL".to_string());
        }
        let mut config = ClassifyConfig::new(fpdim);
        config.enable_cor90_6 = enable_cor90_6;
        config.solve_all = solve_all;
        if budget != 0 {
            config.budget = budget;
        }
        match classify(&config) {
            Ok(report) => write_string(out, report.to_json()),
            Err(err) => fail(FsStatus::UsageError, err.to_string()),
        }
    })
}

/// Releases a string returned through an `out` parameter. NULL is a
/// no-op.
///
/// # Safety
/// `text` must be NULL or a pointer previously returned by this library
/// that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn fs_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(unsafe { CString::from_raw(text) });
    }
}
