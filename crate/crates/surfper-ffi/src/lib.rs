//! C interface to the `surfper` library.
//!
//! Results and finite-order types are returned as opaque handles that the
//! caller releases with the matching `_free` function. Every entry point
//! returns a [`SurfperStatus`]; outputs are written through pointers only on
//! success.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use surfper::groups::type_exists;
use surfper::minperiod::{min_period, MinPeriodResult, Status};
use surfper::types::{lefschetz_of_type, parse_type, validate_type, FiniteOrderType};
use surfper::Orientation;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfperStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidType = 3,
    BufferTooSmall = 4,
    Overflow = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfperOrientation {
    Preserving = 0,
    Reversing = 1,
}

impl From<SurfperOrientation> for Orientation {
    fn from(o: SurfperOrientation) -> Self {
        match o {
            SurfperOrientation::Preserving => Orientation::Preserving,
            SurfperOrientation::Reversing => Orientation::Reversing,
        }
    }
}

/// How much is known about a minimum period.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfperPeriodKind {
    /// `lower == upper` is the value.
    Exact = 0,
    /// Some iterate never has a fixed point.
    Infinite = 1,
    /// The value lies in `[lower, upper]`.
    Interval = 2,
}

/// Opaque minimum-period result.
pub struct SurfperMinPeriod(MinPeriodResult);

/// Opaque finite-order type.
pub struct SurfperType(FiniteOrderType);

fn guard(f: impl FnOnce() -> SurfperStatus) -> SurfperStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(SurfperStatus::Internal)
}

/// Static description of a status code. Never NULL; do not free.
#[no_mangle]
pub extern "C" fn surfper_status_message(status: SurfperStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        SurfperStatus::Ok => b"ok\0",
        SurfperStatus::NullPointer => b"null pointer argument\0",
        SurfperStatus::InvalidArgument => b"invalid argument\0",
        SurfperStatus::InvalidType => b"type is malformed or not valid in this genus\0",
        SurfperStatus::BufferTooSmall => b"output buffer too small\0",
        SurfperStatus::Overflow => b"value does not fit in 64 bits\0",
        SurfperStatus::Internal => b"internal error\0",
    };
    s.as_ptr().cast()
}

/// Computes the largest minimum period over homeomorphisms of the surface of
/// genus `genus` with `boundary` boundary components.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn surfper_min_period(
    genus: u64,
    boundary: u64,
    orientation: SurfperOrientation,
    out: *mut *mut SurfperMinPeriod,
) -> SurfperStatus {
    if out.is_null() {
        return SurfperStatus::NullPointer;
    }
    guard(|| {
        let r = min_period(genus, boundary, orientation.into());
        // SAFETY: checked non-null above; caller guarantees validity.
        unsafe { *out = Box::into_raw(Box::new(SurfperMinPeriod(r))) };
        SurfperStatus::Ok
    })
}

/// Reads the kind and bounds of a result. For `Infinite` both bounds are 0.
///
/// # Safety
/// `result` must come from [`surfper_min_period`] and not be freed; the
/// output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn surfper_min_period_bounds(
    result: *const SurfperMinPeriod,
    kind: *mut SurfperPeriodKind,
    lower: *mut u64,
    upper: *mut u64,
) -> SurfperStatus {
    if result.is_null() || kind.is_null() || lower.is_null() || upper.is_null() {
        return SurfperStatus::NullPointer;
    }
    // SAFETY: caller guarantees a live handle.
    let r = unsafe { &(*result).0 };
    let (k, lo, hi) = match r.status {
        Status::Exact { value } => (SurfperPeriodKind::Exact, value, value),
        Status::Infinite => (SurfperPeriodKind::Infinite, 0, 0),
        Status::Interval { lower, upper } => (SurfperPeriodKind::Interval, lower, upper),
    };
    // SAFETY: checked non-null above.
    unsafe {
        *kind = k;
        *lower = lo;
        *upper = hi;
    }
    SurfperStatus::Ok
}

/// Writes the result, with its provenance, as NUL-terminated JSON into
/// `buf`. `needed` receives the required size including the terminator, also
/// when the buffer is too small. `buf` may be NULL when `len` is 0.
///
/// # Safety
/// `result` must be a live handle, `needed` valid, and `buf` writable for
/// `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn surfper_min_period_json(
    result: *const SurfperMinPeriod,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> SurfperStatus {
    if result.is_null() || needed.is_null() || (buf.is_null() && len > 0) {
        return SurfperStatus::NullPointer;
    }
    guard(|| {
        // SAFETY: caller guarantees a live handle.
        let r = unsafe { &(*result).0 };
        let Ok(text) = serde_json::to_string(r) else {
            return SurfperStatus::Internal;
        };
        // SAFETY: checked non-null; caller guarantees `buf` spans `len` bytes.
        unsafe { write_c_string(&text, buf, len, needed) }
    })
}

unsafe fn write_c_string(text: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> SurfperStatus {
    let total = text.len() + 1;
    // SAFETY: `needed` is non-null (checked by callers).
    unsafe { *needed = total };
    if len < total {
        return SurfperStatus::BufferTooSmall;
    }
    // SAFETY: `buf` holds at least `total` bytes.
    unsafe {
        ptr::copy_nonoverlapping(text.as_ptr(), buf.cast::<u8>(), text.len());
        *buf.add(text.len()) = 0;
    }
    SurfperStatus::Ok
}

/// Releases a result. NULL is ignored.
///
/// # Safety
/// `result` must come from [`surfper_min_period`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn surfper_min_period_free(result: *mut SurfperMinPeriod) {
    if !result.is_null() {
        // SAFETY: the pointer was produced by `Box::into_raw`.
        drop(unsafe { Box::from_raw(result) });
    }
}

/// Parses a type written `n;B;p1,p2,...` (reversing) or `n;p1,p2,...`.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn surfper_type_parse(
    text: *const c_char,
    orientation: SurfperOrientation,
    out: *mut *mut SurfperType,
) -> SurfperStatus {
    if text.is_null() || out.is_null() {
        return SurfperStatus::NullPointer;
    }
    // SAFETY: caller guarantees a NUL-terminated string.
    let Ok(s) = unsafe { CStr::from_ptr(text) }.to_str() else {
        return SurfperStatus::InvalidArgument;
    };
    guard(|| match parse_type(s, orientation.into()) {
        Ok(t) => {
            // SAFETY: checked non-null above.
            unsafe { *out = Box::into_raw(Box::new(SurfperType(t))) };
            SurfperStatus::Ok
        }
        Err(_) => SurfperStatus::InvalidType,
    })
}

/// Whether a map of this type exists on the closed surface of genus `genus`.
///
/// # Safety
/// `ty` must be a live handle and `exists` writable.
#[no_mangle]
pub unsafe extern "C" fn surfper_type_exists(ty: *const SurfperType, genus: u64, exists: *mut bool) -> SurfperStatus {
    if ty.is_null() || exists.is_null() {
        return SurfperStatus::NullPointer;
    }
    guard(|| {
        // SAFETY: caller guarantees a live handle and writable output.
        unsafe { *exists = type_exists(&(*ty).0, genus) };
        SurfperStatus::Ok
    })
}

/// Writes `L(f), ..., L(f^len)` for a map of this type on the closed surface
/// of genus `genus`.
///
/// # Safety
/// `ty` must be a live handle and `values` writable for `len` elements.
#[no_mangle]
pub unsafe extern "C" fn surfper_type_lefschetz(
    ty: *const SurfperType,
    genus: u64,
    values: *mut i64,
    len: usize,
) -> SurfperStatus {
    if ty.is_null() || (values.is_null() && len > 0) {
        return SurfperStatus::NullPointer;
    }
    guard(|| {
        // SAFETY: caller guarantees a live handle.
        let t = unsafe { &(*ty).0 };
        if validate_type(t, genus).is_err() {
            return SurfperStatus::InvalidType;
        }
        let seq = lefschetz_of_type(t, genus, len);
        let Ok(ints) = seq.iter().map(i64::try_from).collect::<Result<Vec<i64>, _>>() else {
            return SurfperStatus::Overflow;
        };
        // SAFETY: `values` spans `len` elements and `ints.len() == len`.
        unsafe { ptr::copy_nonoverlapping(ints.as_ptr(), values, len) };
        SurfperStatus::Ok
    })
}

/// Releases a type. NULL is ignored.
///
/// # Safety
/// `ty` must come from [`surfper_type_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn surfper_type_free(ty: *mut SurfperType) {
    if !ty.is_null() {
        // SAFETY: the pointer was produced by `Box::into_raw`.
        drop(unsafe { Box::from_raw(ty) });
    }
}
