//! C ABI for the invswitch library.
//!
//! Handles are opaque pointers created and destroyed by this library; every
//! fallible call returns an [`InvswitchStatus`] and writes its result through
//! an out-pointer. The generated header lives in include/invswitch.h.

use std::ffi::{c_char, CStr};
use std::sync::Arc;

use invswitch::construct::{build_g, build_named, elements_from_exponents, validate_v};
use invswitch::error::Error;
use invswitch::field::FieldSpec;
use invswitch::spectra::{differential_spectrum, walsh_profile};
use invswitch::vfunc::VFunc;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvswitchStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Arguments were structurally invalid (bad degree, bad name, bad set, ...).
    InvalidArgument = 2,
    /// A provided buffer was too small.
    BufferTooSmall = 3,
    /// An internal consistency check failed; this indicates a bug.
    InternalError = 4,
}

fn status_of(err: &Error) -> InvswitchStatus {
    match err {
        Error::PermutationCheckFailed | Error::Internal(_) => InvswitchStatus::InternalError,
        _ => InvswitchStatus::InvalidArgument,
    }
}

/// An immutable field handle (shared by the functions built over it).
pub struct InvswitchField {
    inner: Arc<FieldSpec>,
}

/// An immutable (n,n)-function handle.
pub struct InvswitchFunc {
    inner: VFunc,
}

/// Cryptographic profile of a function. When the differential uniformity is
/// at most 4, `spectrum_is_triple` is true and the three counts describe the
/// full spectrum.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct InvswitchProfile {
    pub nonlinearity: u32,
    pub differential_uniformity: u32,
    pub algebraic_degree: u32,
    pub spectrum_is_triple: bool,
    pub count_delta0: u64,
    pub count_delta2: u64,
    pub count_delta4: u64,
}

/// Creates the built-in field of degree n (Conway polynomial, xi = x).
///
/// # Safety
/// `out` must be a valid pointer. On success it receives a handle that must
/// be released with [`invswitch_field_free`].
#[no_mangle]
pub unsafe extern "C" fn invswitch_field_new(
    n: u32,
    out: *mut *mut InvswitchField,
) -> InvswitchStatus {
    if out.is_null() {
        return InvswitchStatus::NullPointer;
    }
    match FieldSpec::builtin(n) {
        Ok(spec) => {
            *out = Box::into_raw(Box::new(InvswitchField {
                inner: Arc::new(spec),
            }));
            InvswitchStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Creates a field from an explicit reduction polynomial and primitive
/// element (coordinate bitmasks, bit i = coefficient of x^i).
///
/// # Safety
/// Same contract as [`invswitch_field_new`].
#[no_mangle]
pub unsafe extern "C" fn invswitch_field_new_custom(
    n: u32,
    poly: u32,
    xi: u32,
    out: *mut *mut InvswitchField,
) -> InvswitchStatus {
    if out.is_null() {
        return InvswitchStatus::NullPointer;
    }
    match FieldSpec::new(n, poly, xi) {
        Ok(spec) => {
            *out = Box::into_raw(Box::new(InvswitchField {
                inner: Arc::new(spec),
            }));
            InvswitchStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a field handle. Passing null is a no-op.
///
/// # Safety
/// `field` must be null or a handle previously returned by a constructor and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn invswitch_field_free(field: *mut InvswitchField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Field degree n, or 0 for a null handle.
///
/// # Safety
/// `field` must be null or a live field handle.
#[no_mangle]
pub unsafe extern "C" fn invswitch_field_degree(field: *const InvswitchField) -> u32 {
    field.as_ref().map_or(0, |f| f.inner.degree())
}

/// Reduction polynomial bitmask, or 0 for a null handle.
///
/// # Safety
/// `field` must be null or a live field handle.
#[no_mangle]
pub unsafe extern "C" fn invswitch_field_poly(field: *const InvswitchField) -> u32 {
    field.as_ref().map_or(0, |f| f.inner.reduction_poly())
}

unsafe fn write_func(
    out: *mut *mut InvswitchFunc,
    func: Result<VFunc, Error>,
) -> InvswitchStatus {
    match func {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(InvswitchFunc { inner }));
            InvswitchStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Builds a named function: "G1", "G2", "G3", "GM", "F1", "F2", "F3", or
/// "inverse" for the multiplicative inverse function.
///
/// # Safety
/// `field` must be a live field handle, `name` a NUL-terminated string, and
/// `out` a valid pointer; the returned handle must be released with
/// [`invswitch_func_free`].
#[no_mangle]
pub unsafe extern "C" fn invswitch_func_named(
    field: *const InvswitchField,
    name: *const c_char,
    out: *mut *mut InvswitchFunc,
) -> InvswitchStatus {
    let Some(field) = field.as_ref() else {
        return InvswitchStatus::NullPointer;
    };
    if name.is_null() || out.is_null() {
        return InvswitchStatus::NullPointer;
    }
    let Ok(name) = CStr::from_ptr(name).to_str() else {
        return InvswitchStatus::InvalidArgument;
    };
    if name.eq_ignore_ascii_case("inverse") {
        return write_func(out, Ok(VFunc::inverse_function(field.inner.clone())));
    }
    let named = match name.parse() {
        Ok(named) => named,
        Err(e) => return status_of(&e),
    };
    write_func(out, build_named(&field.inner, named))
}

/// Builds G(x) = x^-1 + delta_U(x) from a V given as xi-exponents (the set
/// must satisfy the trace conditions and be closed under x -> x/(x+1)).
///
/// # Safety
/// `field` must be a live field handle, `exponents` must point to `len`
/// readable u32 values (null only if `len` is 0), and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn invswitch_func_from_v_exponents(
    field: *const InvswitchField,
    exponents: *const u32,
    len: usize,
    out: *mut *mut InvswitchFunc,
) -> InvswitchStatus {
    let Some(field) = field.as_ref() else {
        return InvswitchStatus::NullPointer;
    };
    if out.is_null() || (exponents.is_null() && len > 0) {
        return InvswitchStatus::NullPointer;
    }
    let exps: Vec<u32> = if len == 0 {
        Vec::new()
    } else {
        std::slice::from_raw_parts(exponents, len).to_vec()
    };
    let built = elements_from_exponents(&field.inner, &exps)
        .and_then(|v| validate_v(&field.inner, &v))
        .and_then(|spec| build_g(&spec));
    write_func(out, built)
}

/// Wraps an explicit lookup table of 2^n entries (index = input bits).
///
/// # Safety
/// `field` must be a live field handle, `table` must point to `len` readable
/// u32 values, and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn invswitch_func_from_table(
    field: *const InvswitchField,
    table: *const u32,
    len: usize,
    out: *mut *mut InvswitchFunc,
) -> InvswitchStatus {
    let Some(field) = field.as_ref() else {
        return InvswitchStatus::NullPointer;
    };
    if out.is_null() || table.is_null() {
        return InvswitchStatus::NullPointer;
    }
    let table = std::slice::from_raw_parts(table, len).to_vec();
    write_func(out, VFunc::from_table(field.inner.clone(), table))
}

/// Releases a function handle. Passing null is a no-op.
///
/// # Safety
/// `func` must be null or a handle previously returned by a constructor and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn invswitch_func_free(func: *mut InvswitchFunc) {
    if !func.is_null() {
        drop(Box::from_raw(func));
    }
}

/// Table length (2^n), or 0 for a null handle.
///
/// # Safety
/// `func` must be null or a live function handle.
#[no_mangle]
pub unsafe extern "C" fn invswitch_func_table_len(func: *const InvswitchFunc) -> usize {
    func.as_ref().map_or(0, |f| f.inner.table().len())
}

/// Evaluates the function at input bits x (must be < 2^n).
///
/// # Safety
/// `func` must be a live function handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn invswitch_func_eval(
    func: *const InvswitchFunc,
    x: u32,
    out: *mut u32,
) -> InvswitchStatus {
    let Some(func) = func.as_ref() else {
        return InvswitchStatus::NullPointer;
    };
    if out.is_null() {
        return InvswitchStatus::NullPointer;
    }
    let table = func.inner.table();
    if x as usize >= table.len() {
        return InvswitchStatus::InvalidArgument;
    }
    *out = table[x as usize];
    InvswitchStatus::Ok
}

/// Copies the full lookup table into `buf` (capacity `len` entries).
///
/// # Safety
/// `func` must be a live function handle and `buf` must point to `len`
/// writable u32 slots.
#[no_mangle]
pub unsafe extern "C" fn invswitch_func_copy_table(
    func: *const InvswitchFunc,
    buf: *mut u32,
    len: usize,
) -> InvswitchStatus {
    let Some(func) = func.as_ref() else {
        return InvswitchStatus::NullPointer;
    };
    if buf.is_null() {
        return InvswitchStatus::NullPointer;
    }
    let table = func.inner.table();
    if len < table.len() {
        return InvswitchStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(table.as_ptr(), buf, table.len());
    InvswitchStatus::Ok
}

/// 1 if the function is a permutation, 0 otherwise (or for a null handle).
///
/// # Safety
/// `func` must be null or a live function handle.
#[no_mangle]
pub unsafe extern "C" fn invswitch_func_is_permutation(func: *const InvswitchFunc) -> bool {
    func.as_ref().is_some_and(|f| f.inner.is_permutation())
}

/// Computes the full profile: nonlinearity, differential uniformity and
/// spectrum, algebraic degree.
///
/// # Safety
/// `func` must be a live function handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn invswitch_func_profile(
    func: *const InvswitchFunc,
    out: *mut InvswitchProfile,
) -> InvswitchStatus {
    let Some(func) = func.as_ref() else {
        return InvswitchStatus::NullPointer;
    };
    if out.is_null() {
        return InvswitchStatus::NullPointer;
    }
    let ds = differential_spectrum(&func.inner);
    let wp = walsh_profile(&func.inner);
    *out = InvswitchProfile {
        nonlinearity: wp.nonlinearity(),
        differential_uniformity: ds.uniformity(),
        algebraic_degree: func.inner.algebraic_degree(),
        spectrum_is_triple: ds.uniformity() <= 4,
        count_delta0: ds.count(0),
        count_delta2: ds.count(2),
        count_delta4: ds.count(4),
    };
    InvswitchStatus::Ok
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn invswitch_status_message(status: InvswitchStatus) -> *const c_char {
    let msg: &'static [u8] = match status {
        InvswitchStatus::Ok => b"ok\0",
        InvswitchStatus::NullPointer => b"null pointer argument\0",
        InvswitchStatus::InvalidArgument => b"invalid argument\0",
        InvswitchStatus::BufferTooSmall => b"buffer too small\0",
        InvswitchStatus::InternalError => b"internal consistency check failed\0",
    };
    msg.as_ptr().cast()
}
