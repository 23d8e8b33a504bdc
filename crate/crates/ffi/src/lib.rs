//! C ABI over the `lienard` crate.
//!
//! Every entry point returns a [`LienardStatus`] and writes its result through
//! an out-pointer. Strings handed out are owned by the caller and must be
//! released with [`lienard_string_free`]; tables with [`lienard_table_free`].
//! The message of the most recent failure on the calling thread is available
//! from [`lienard_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lienard::bautin::bautin_certificate;
use lienard::bounds::{bernstein_radii, rho_solve};
use lienard::numeric::{return_map, LienardSystem};
use lienard::{CoefficientTable, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LienardStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Dimension = 3,
    /// The flow left the region where the return map is defined.
    Domain = 4,
    Integration = 5,
    /// The result was computed but an asserted check failed.
    CheckFailed = 6,
    Internal = 7,
    Panic = 8,
}

/// Opaque coefficient table.
pub struct LienardTable {
    inner: CoefficientTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> LienardStatus {
    set_error(e.to_string());
    match e {
        Error::Dimension { .. } => LienardStatus::Dimension,
        Error::InvalidArgument(_) | Error::Parse(_) | Error::DivisionByZero => LienardStatus::InvalidArgument,
        Error::Escape { .. } | Error::Transversality { .. } => LienardStatus::Domain,
        Error::Integration(_) | Error::BoundaryAmbiguity { .. } | Error::CountMismatch { .. } => LienardStatus::Integration,
        _ => LienardStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> LienardStatus) -> LienardStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("panic inside the library");
            LienardStatus::Panic
        }
    }
}

fn null(what: &str) -> LienardStatus {
    set_error(format!("{what} is null"));
    LienardStatus::NullPointer
}

/// # Safety
/// `ptr` must be null or point to `len` readable doubles.
unsafe fn slice<'a>(ptr: *const f64, len: usize) -> Option<&'a [f64]> {
    if len == 0 {
        return Some(&[]);
    }
    if ptr.is_null() {
        return None;
    }
    // SAFETY: caller promises `len` readable values behind `ptr`.
    Some(unsafe { std::slice::from_raw_parts(ptr, len) })
}

fn emit_string(s: String, out: *mut *mut c_char) -> LienardStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: `out` was checked non-null by the caller of this helper.
            unsafe { *out = c.into_raw() };
            LienardStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL");
            LienardStatus::Internal
        }
    }
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn lienard_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn lienard_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: `s` came from `CString::into_raw` in `emit_string`.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Computes `v_1 ... v_K` for `d` parameters.
///
/// # Safety
/// `out` must be a valid pointer to write a table handle to.
#[no_mangle]
pub unsafe extern "C" fn lienard_table_compute(d: usize, order: usize, out: *mut *mut LienardTable) -> LienardStatus {
    if out.is_null() {
        return null("out");
    }
    guard(|| match CoefficientTable::compute(d, order) {
        Ok(inner) => {
            // SAFETY: checked non-null above.
            unsafe { *out = Box::into_raw(Box::new(LienardTable { inner })) };
            LienardStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Releases a table. Null is ignored.
///
/// # Safety
/// `table` must come from [`lienard_table_compute`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lienard_table_free(table: *mut LienardTable) {
    if !table.is_null() {
        // SAFETY: `table` came from `Box::into_raw`.
        drop(unsafe { Box::from_raw(table) });
    }
}

/// Writes `d` and `K` of a table.
///
/// # Safety
/// `table` must be a live handle; `d` and `order` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lienard_table_shape(table: *const LienardTable, d: *mut usize, order: *mut usize) -> LienardStatus {
    // SAFETY: caller promises a live handle or null.
    let Some(t) = (unsafe { table.as_ref() }) else { return null("table") };
    if d.is_null() || order.is_null() {
        return null("out");
    }
    // SAFETY: checked non-null.
    unsafe {
        *d = t.inner.d();
        *order = t.inner.order();
    }
    LienardStatus::Ok
}

/// The whole table as JSON (exact values as strings).
///
/// # Safety
/// `table` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lienard_table_json(table: *const LienardTable, out: *mut *mut c_char) -> LienardStatus {
    // SAFETY: caller promises a live handle or null.
    let Some(t) = (unsafe { table.as_ref() }) else { return null("table") };
    if out.is_null() {
        return null("out");
    }
    guard(|| match serde_json::to_string(&t.inner.to_json()) {
        Ok(s) => emit_string(s, out),
        Err(e) => {
            set_error(e.to_string());
            LienardStatus::Internal
        }
    })
}

/// `v_k(2π)` evaluated at `λ` (length must equal `d`).
///
/// # Safety
/// `table` must be a live handle, `lambda` must hold `len` doubles and `out`
/// must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lienard_table_eval(
    table: *const LienardTable,
    k: usize,
    lambda: *const f64,
    len: usize,
    out: *mut f64,
) -> LienardStatus {
    // SAFETY: caller promises a live handle or null.
    let Some(t) = (unsafe { table.as_ref() }) else { return null("table") };
    // SAFETY: forwarded caller contract.
    let Some(lambda) = (unsafe { slice(lambda, len) }) else { return null("lambda") };
    if out.is_null() {
        return null("out");
    }
    if k == 0 || k > t.inner.order() {
        set_error(format!("order {k} outside 1..={}", t.inner.order()));
        return LienardStatus::InvalidArgument;
    }
    guard(|| match t.inner.v_2pi(k).eval_f64(lambda) {
        Ok(v) => {
            // SAFETY: checked non-null.
            unsafe { *out = v };
            LienardStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Ideal certificate for the table, as JSON. A certificate that does not
/// hold is still written, with status `CheckFailed`.
///
/// # Safety
/// `table` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lienard_bautin_certificate_json(table: *const LienardTable, out: *mut *mut c_char) -> LienardStatus {
    // SAFETY: caller promises a live handle or null.
    let Some(t) = (unsafe { table.as_ref() }) else { return null("table") };
    if out.is_null() {
        return null("out");
    }
    guard(|| {
        let cert = match bautin_certificate(&t.inner) {
            Ok(c) => c,
            Err(e) => return status_of(&e),
        };
        let status = match serde_json::to_string(&cert) {
            Ok(s) => emit_string(s, out),
            Err(e) => {
                set_error(e.to_string());
                return LienardStatus::Internal;
            }
        };
        if status == LienardStatus::Ok && !cert.holds {
            set_error(cert.failures.join("; "));
            return LienardStatus::CheckFailed;
        }
        status
    })
}

/// Root of `Σ ρ^i |λ_i| = 1`; `+∞` when `λ = 0`.
///
/// # Safety
/// `lambda` must hold `len` doubles and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lienard_rho(lambda: *const f64, len: usize, out: *mut f64) -> LienardStatus {
    // SAFETY: forwarded caller contract.
    let Some(lambda) = (unsafe { slice(lambda, len) }) else { return null("lambda") };
    if out.is_null() {
        return null("out");
    }
    guard(|| {
        // SAFETY: checked non-null.
        unsafe { *out = rho_solve(lambda).unwrap_or(f64::INFINITY) };
        LienardStatus::Ok
    })
}

/// Convergence and zero-count radii for `n` generators, as JSON.
///
/// # Safety
/// `lambda` must hold `len` doubles and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lienard_radius_report_json(
    n: usize,
    lambda: *const f64,
    len: usize,
    out: *mut *mut c_char,
) -> LienardStatus {
    // SAFETY: forwarded caller contract.
    let Some(lambda) = (unsafe { slice(lambda, len) }) else { return null("lambda") };
    if out.is_null() {
        return null("out");
    }
    guard(|| match bernstein_radii(n, lambda) {
        Ok(report) => match serde_json::to_string(&report) {
            Ok(s) => emit_string(s, out),
            Err(e) => {
                set_error(e.to_string());
                LienardStatus::Internal
            }
        },
        Err(e) => status_of(&e),
    })
}

/// First return of the orbit through `(r0, 0)` to the positive x-axis.
///
/// # Safety
/// `lambda` must hold `len` doubles and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lienard_return_map(
    lambda: *const f64,
    len: usize,
    r0: f64,
    tol: f64,
    out: *mut f64,
) -> LienardStatus {
    // SAFETY: forwarded caller contract.
    let Some(lambda) = (unsafe { slice(lambda, len) }) else { return null("lambda") };
    if out.is_null() {
        return null("out");
    }
    guard(|| {
        let result = LienardSystem::new(lambda.to_vec()).and_then(|sys| return_map(&sys, r0, tol));
        match result {
            Ok(sample) => {
                // SAFETY: checked non-null.
                unsafe { *out = sample.r_return };
                LienardStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}
