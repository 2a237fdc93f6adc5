//! C interface.  Maps are opaque `RdMap` handles owned by the caller and
//! released with `rd_map_free`; strings returned through out-pointers are
//! released with `rd_string_free`.  Every entry point returns an `RdStatus`
//! and never unwinds; the message of the last failure on the calling thread
//! is available from `rd_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rittdyn::chebylattes::chebyshev;
use rittdyn::error::Error;
use rittdyn::exponents::lyapunov_estimate;
use rittdyn::parse::parse_map;
use rittdyn::periodic::{periodic_polynomial, verify_multiplier_identity};
use rittdyn::ratmap::{commutes, compose, iterate_capped, RationalMap};
use rittdyn::ritt::{common_iterate_equal_degree, DEFAULT_MAX_ORDER, DEFAULT_MAX_STEPS};
use rittdyn::semigroup::verify_identity_eq8;

/// Degree cap applied to iterates requested through this interface.
pub const RD_DEGREE_CAP: u64 = 5000;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RdStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// A degree, conductor, step or orbit budget was exhausted.
    Budget = 4,
    /// Inputs violate a documented requirement (non-commuting, unequal degree, ...).
    Precondition = 5,
    /// An exact self-check failed.
    Internal = 6,
    Panic = 7,
}

/// Opaque rational map.
pub struct RdMap(RationalMap);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> RdStatus {
    match err.exit_code() {
        2 => RdStatus::Parse,
        3 => RdStatus::Budget,
        1 => RdStatus::Internal,
        _ => RdStatus::Precondition,
    }
}

enum Fail {
    Null,
    Utf8,
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> RdStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            RdStatus::Ok
        }
        Ok(Err(Fail::Null)) => {
            set_error("null argument".into());
            RdStatus::NullArgument
        }
        Ok(Err(Fail::Utf8)) => {
            set_error("string is not valid UTF-8".into());
            RdStatus::InvalidUtf8
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("panic inside the library".into());
            RdStatus::Panic
        }
    }
}

unsafe fn map_ref<'a>(p: *const RdMap) -> Result<&'a RationalMap, Fail> {
    p.as_ref().map(|m| &m.0).ok_or(Fail::Null)
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    out.write(v);
    Ok(())
}

unsafe fn put_map(out: *mut *mut RdMap, m: RationalMap) -> Result<(), Fail> {
    put(out, Box::into_raw(Box::new(RdMap(m))))
}

/// Parses a map literal such as `(z^2-4)/(z-1)` over Q(ζ_conductor).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_map_parse(text: *const c_char, conductor: u32, out: *mut *mut RdMap) -> RdStatus {
    guard(|| {
        if text.is_null() {
            return Err(Fail::Null);
        }
        let s = CStr::from_ptr(text).to_str().map_err(|_| Fail::Utf8)?;
        put_map(out, parse_map(s, conductor)?)
    })
}

/// Releases a map; null is ignored.
///
/// # Safety
/// `map` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rd_map_free(map: *mut RdMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Writes the display form of `map`; release it with `rd_string_free`.
///
/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_map_to_string(map: *const RdMap, out: *mut *mut c_char) -> RdStatus {
    guard(|| {
        let s = CString::new(map_ref(map)?.to_string()).expect("display has no NUL");
        put(out, s.into_raw())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null.  Owned by the
/// library and valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn rd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_map_degree(map: *const RdMap, out: *mut usize) -> RdStatus {
    guard(|| put(out, map_ref(map)?.degree()))
}

/// `out` receives f∘g.
///
/// # Safety
/// `f`, `g` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_map_compose(f: *const RdMap, g: *const RdMap, out: *mut *mut RdMap) -> RdStatus {
    guard(|| put_map(out, compose(map_ref(f)?, map_ref(g)?)))
}

/// `out` receives the n-th iterate, subject to `RD_DEGREE_CAP`.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_map_iterate(f: *const RdMap, n: u32, out: *mut *mut RdMap) -> RdStatus {
    guard(|| put_map(out, iterate_capped(map_ref(f)?, n, RD_DEGREE_CAP)?))
}

/// # Safety
/// `f`, `g` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_map_equal(f: *const RdMap, g: *const RdMap, out: *mut bool) -> RdStatus {
    guard(|| put(out, map_ref(f)? == map_ref(g)?))
}

/// # Safety
/// `f`, `g` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_commutes(f: *const RdMap, g: *const RdMap, out: *mut bool) -> RdStatus {
    guard(|| put(out, commutes(map_ref(f)?, map_ref(g)?)))
}

/// Chebyshev map T_d (sign +1) or −T_d (sign −1).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_chebyshev(d: u32, sign: i8, out: *mut *mut RdMap) -> RdStatus {
    guard(|| {
        if d == 0 || (sign != 1 && sign != -1) {
            return Err(Error::Precondition("need d ≥ 1 and sign ±1".into()).into());
        }
        put_map(out, chebyshev(d, sign))
    })
}

/// Least p with f^p = g^p, for commuting maps of equal degree.
///
/// # Safety
/// `f`, `g` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_common_iterate(f: *const RdMap, g: *const RdMap, out: *mut u32) -> RdStatus {
    guard(|| {
        let p = common_iterate_equal_degree(map_ref(f)?, map_ref(g)?, DEFAULT_MAX_STEPS, DEFAULT_MAX_ORDER)?;
        put(out, p)
    })
}

/// Number of points of period dividing n, with multiplicity, ∞ included.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_periodic_count(f: *const RdMap, n: u32, out: *mut usize) -> RdStatus {
    guard(|| {
        let f = map_ref(f)?;
        iterate_capped(f, n, RD_DEGREE_CAP)?;
        put(out, periodic_polynomial(f, n)?.total_count())
    })
}

/// Exact multiplier-spectrum divisibility check for commuting f, g.
///
/// # Safety
/// `f`, `g` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_multiplier_identity(
    f: *const RdMap,
    g: *const RdMap,
    n: u32,
    p: u32,
    out: *mut bool,
) -> RdStatus {
    guard(|| {
        let f = map_ref(f)?;
        iterate_capped(f, n.saturating_mul(p), RD_DEGREE_CAP)?;
        put(out, verify_multiplier_identity(f, map_ref(g)?, n, p)?)
    })
}

/// Commutator identity for g, h at exponent n.
///
/// # Safety
/// `g`, `h` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_identity_eq8(g: *const RdMap, h: *const RdMap, n: u32, out: *mut bool) -> RdStatus {
    guard(|| put(out, verify_identity_eq8(map_ref(g)?, map_ref(h)?, n)?))
}

/// Monte Carlo Lyapunov exponent estimate and its standard error.
///
/// # Safety
/// `f` must be a live handle; `mean`, `standard_error` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_lyapunov(
    f: *const RdMap,
    depth: usize,
    breadth: usize,
    seed: u64,
    mean: *mut f64,
    standard_error: *mut f64,
) -> RdStatus {
    guard(|| {
        if mean.is_null() || standard_error.is_null() {
            return Err(Fail::Null);
        }
        let e = lyapunov_estimate(map_ref(f)?, depth, breadth, seed)?;
        put(mean, e.mean)?;
        put(standard_error, e.standard_error)
    })
}
