//! C ABI over `ncluster`.
//!
//! Every entry point returns an [`NcStatus`] and writes results through out-pointers.
//! Polynomials are opaque [`NcPoly`] handles released with [`ncluster_poly_free`];
//! strings handed out by the library are released with [`ncluster_string_free`].
//! After a failure, [`ncluster_last_error`] describes it until the next call on the
//! same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ncluster::family::{EnumOptions, FamilyEnumerator, FamilySet, GreenSupport};
use ncluster::formula::compute_x;
use ncluster::oracle::verify_theorem;
use ncluster::serial::PolyDump;
use ncluster::{Error, NCPoly};

/// Status codes. The nonzero values match the exit codes of the `ncluster` binary.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcStatus {
    Ok = 0,
    Internal = 1,
    Validation = 2,
    ResourceCap = 3,
    Mismatch = 4,
    NullArgument = 5,
    Panic = 6,
}

/// Opaque polynomial handle.
pub struct NcPoly {
    r: u32,
    n: u32,
    poly: NCPoly,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> NcStatus {
    match err.exit_code() {
        2 => NcStatus::Validation,
        3 => NcStatus::ResourceCap,
        4 => NcStatus::Mismatch,
        _ => NcStatus::Internal,
    }
}

fn guard<F: FnOnce() -> Result<(), NcStatus>>(f: F) -> NcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NcStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            NcStatus::Panic
        }
    }
}

fn lift<T>(r: ncluster::Result<T>) -> Result<T, NcStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn null_arg(name: &str) -> NcStatus {
    set_error(format!("{name} is null"));
    NcStatus::NullArgument
}

fn options(family_cap: u64) -> EnumOptions {
    EnumOptions {
        support: GreenSupport::AnyElement,
        cap: if family_cap == 0 {
            EnumOptions::default().cap
        } else {
            family_cap
        },
    }
}

unsafe fn poly_ref<'a>(p: *const NcPoly) -> Result<&'a NcPoly, NcStatus> {
    p.as_ref().ok_or_else(|| null_arg("poly"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), NcStatus> {
    if out.is_null() {
        return Err(null_arg("out"));
    }
    let c = CString::new(s).map_err(|_| NcStatus::Internal)?;
    *out = c.into_raw();
    Ok(())
}

/// Computes `x_{n-1}` from the families on `D_n`. `family_cap == 0` selects the default cap.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn ncluster_compute_x(r: u32, n: u32, family_cap: u64, out: *mut *mut NcPoly) -> NcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let poly = lift(compute_x(r, n, options(family_cap)))?;
        *out = Box::into_raw(Box::new(NcPoly { r, n, poly }));
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn ncluster_poly_free(p: *mut NcPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn ncluster_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ncluster_poly_term_count(p: *const NcPoly, out: *mut usize) -> NcStatus {
    guard(|| {
        let p = poly_ref(p)?;
        if out.is_null() {
            return Err(null_arg("out"));
        }
        *out = p.poly.len();
        Ok(())
    })
}

/// Sum of all coefficients as a decimal string.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ncluster_poly_coeff_sum(p: *const NcPoly, out: *mut *mut c_char) -> NcStatus {
    guard(|| {
        let p = poly_ref(p)?;
        write_string(out, p.poly.coeff_sum().to_string())
    })
}

/// Canonical JSON dump, identical to `ncluster compute --format json`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ncluster_poly_to_json(p: *const NcPoly, out: *mut *mut c_char) -> NcStatus {
    guard(|| {
        let p = poly_ref(p)?;
        let name = format!("x_{}", p.n - 1);
        let json = lift(PolyDump::new(p.r, p.n, name, &p.poly).to_json())?;
        write_string(out, json)
    })
}

/// Coefficient of a word given in token (`x y^-2`) or matrix (`[1 -1; 0 2]`) form,
/// as a decimal string.
///
/// # Safety
/// `p` must be a live handle, `word` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ncluster_poly_coeff(p: *const NcPoly, word: *const c_char, out: *mut *mut c_char) -> NcStatus {
    guard(|| {
        let p = poly_ref(p)?;
        if word.is_null() {
            return Err(null_arg("word"));
        }
        let text = CStr::from_ptr(word).to_str().map_err(|_| {
            set_error("word is not UTF-8".into());
            NcStatus::Validation
        })?;
        let w = lift(text.parse::<ncluster::ReducedWord>().map_err(Error::from))?;
        write_string(out, p.poly.coeff(&w).to_string())
    })
}

/// Checks the formula against the certified oracle. `*passed` is set on success;
/// a disagreement is reported through `passed`, not through the status.
///
/// # Safety
/// `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ncluster_verify_theorem(r: u32, n: u32, margin: i64, family_cap: u64, passed: *mut bool) -> NcStatus {
    guard(|| {
        if passed.is_null() {
            return Err(null_arg("passed"));
        }
        let rep = lift(verify_theorem(r, n, options(family_cap), margin, None))?;
        *passed = rep.passed();
        Ok(())
    })
}

/// Number of families of `set` (`F`, `Ftilde`, `Tgeq<u>`, `Tband<u>`) on `D_n`, as a decimal string.
///
/// # Safety
/// `set` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ncluster_count_families(r: u32, n: u32, set: *const c_char, out: *mut *mut c_char) -> NcStatus {
    guard(|| {
        if set.is_null() {
            return Err(null_arg("set"));
        }
        let text = CStr::from_ptr(set).to_string_lossy();
        let which: FamilySet = lift(text.parse())?;
        let path = lift(ncluster::dyck::build_path(r, n))?;
        let e = lift(FamilyEnumerator::new(&path, EnumOptions::default()))?;
        let count = lift(e.count(which))?;
        write_string(out, count.to_string())
    })
}

/// Message for the last failure on this thread, or null. Owned by the library; valid
/// until the next call.
#[no_mangle]
pub extern "C" fn ncluster_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
