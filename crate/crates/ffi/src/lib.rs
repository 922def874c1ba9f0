//! C interface to `agbound`.
//!
//! Every function returns an `int32_t` status: `AGB_OK` on success, a
//! negative value for misuse of the interface, or a positive library error
//! code. Results are written through out-pointers. Handles are opaque and
//! must be released with the matching `*_free` function.
//!
//! After a failure, `agb_last_error` copies a description of the most recent
//! error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use agbound::bounds::{
    d_ord_sequence, feng_rao_improved_dim, improved_from_counts, LambdaProfile,
};
use agbound::{Error, HStar, NumericalSemigroup};

pub const AGB_OK: i32 = 0;
pub const AGB_ERR_NULL_POINTER: i32 = -1;
pub const AGB_ERR_BUFFER_TOO_SMALL: i32 = -2;
pub const AGB_ERR_PANIC: i32 = -3;

pub const AGB_ERR_EMPTY_GENERATORS: i32 = 10;
pub const AGB_ERR_NON_POSITIVE_GENERATOR: i32 = 11;
pub const AGB_ERR_GCD_NOT_ONE: i32 = 12;
pub const AGB_ERR_LENGTH_TOO_SMALL: i32 = 20;
pub const AGB_ERR_WRONG_CARDINALITY: i32 = 21;
pub const AGB_ERR_NOT_SUBSET_OF_H: i32 = 22;
pub const AGB_ERR_LOW_RANGE_MISMATCH: i32 = 23;
pub const AGB_ERR_CLOSURE_VIOLATION: i32 = 24;
pub const AGB_ERR_MALFORMED_ABUNDANCE: i32 = 25;
pub const AGB_ERR_RESULT_INVALID: i32 = 26;
pub const AGB_ERR_MALFORMED_CHAIN: i32 = 27;
pub const AGB_ERR_INDEX_OUT_OF_RANGE: i32 = 30;
pub const AGB_ERR_DELTA_OUT_OF_RANGE: i32 = 31;
pub const AGB_ERR_NOT_A_MEMBER: i32 = 32;
pub const AGB_ERR_NOT_ISOMETRY_DUAL: i32 = 33;
pub const AGB_ERR_ENUMERATION_CAP_EXCEEDED: i32 = 34;
pub const AGB_ERR_INTERNAL_INVARIANT_VIOLATION: i32 = 35;

/// A numerical semigroup.
pub struct AgbSemigroup {
    inner: NumericalSemigroup,
}

/// A validated set of pole orders with its cached `#Λ*` profile.
pub struct AgbHStar {
    inner: HStar,
    profile: LambdaProfile,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_last_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(e: Error) -> i32 {
    set_last_error(format!("{}: {e}", e.name()));
    e.code()
}

// Runs `body`, turning panics into AGB_ERR_PANIC.
fn guard(body: impl FnOnce() -> i32) -> i32 {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic".into());
            AGB_ERR_PANIC
        }
    }
}

fn null() -> i32 {
    set_last_error("null pointer argument".into());
    AGB_ERR_NULL_POINTER
}

unsafe fn input<'a, T>(data: *const T, len: usize) -> Option<&'a [T]> {
    if len == 0 {
        Some(&[])
    } else if data.is_null() {
        None
    } else {
        Some(slice::from_raw_parts(data, len))
    }
}

unsafe fn write_slice<T: Copy>(src: &[T], buf: *mut T, cap: usize, out_len: *mut usize) -> i32 {
    if out_len.is_null() {
        return null();
    }
    *out_len = src.len();
    if cap < src.len() {
        set_last_error(format!("buffer holds {cap}, need {}", src.len()));
        return AGB_ERR_BUFFER_TOO_SMALL;
    }
    if !src.is_empty() {
        if buf.is_null() {
            return null();
        }
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    }
    AGB_OK
}

/// Name of a status code, e.g. `"GcdNotOne"`; never NULL.
#[no_mangle]
pub extern "C" fn agb_status_name(status: i32) -> *const c_char {
    let name: &'static CStr = match status {
        AGB_OK => c"Ok",
        AGB_ERR_NULL_POINTER => c"NullPointer",
        AGB_ERR_BUFFER_TOO_SMALL => c"BufferTooSmall",
        AGB_ERR_PANIC => c"Panic",
        10 => c"EmptyGenerators",
        11 => c"NonPositiveGenerator",
        12 => c"GcdNotOne",
        20 => c"LengthTooSmall",
        21 => c"WrongCardinality",
        22 => c"NotSubsetOfH",
        23 => c"LowRangeMismatch",
        24 => c"ClosureViolation",
        25 => c"MalformedAbundance",
        26 => c"ResultInvalid",
        27 => c"MalformedChain",
        30 => c"IndexOutOfRange",
        31 => c"DeltaOutOfRange",
        32 => c"NotAMember",
        33 => c"NotIsometryDual",
        34 => c"EnumerationCapExceeded",
        35 => c"InternalInvariantViolation",
        40 => c"UnsupportedField",
        41 => c"DivisionByZero",
        42 => c"DimensionMismatch",
        50 => c"UnsupportedParameter",
        51 => c"SchemaError",
        52 => c"InvariantViolation",
        53 => c"BudgetOutOfRange",
        54 => c"ZeroPivot",
        60 => c"DependentInput",
        70 => c"BudgetExceeded",
        _ => c"Unknown",
    };
    name.as_ptr()
}

/// Copies the last error message of this thread, NUL-terminated and
/// truncated to `cap` bytes. Returns the full message length without NUL.
///
/// # Safety
/// `buf` must be valid for `cap` bytes, or NULL when `cap` is 0.
#[no_mangle]
pub unsafe extern "C" fn agb_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if cap > 0 && !buf.is_null() {
            let n = msg.len().min(cap - 1);
            ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// # Safety
/// `gens` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agb_semigroup_new(
    gens: *const i64,
    len: usize,
    out: *mut *mut AgbSemigroup,
) -> i32 {
    guard(|| {
        let (Some(gens), false) = (input(gens, len), out.is_null()) else {
            return null();
        };
        match NumericalSemigroup::from_generators(gens) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(AgbSemigroup { inner }));
                AGB_OK
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `s` must be NULL or a handle from `agb_semigroup_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn agb_semigroup_free(s: *mut AgbSemigroup) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agb_semigroup_genus(s: *const AgbSemigroup, out: *mut usize) -> i32 {
    let (Some(s), false) = (s.as_ref(), out.is_null()) else {
        return null();
    };
    *out = s.inner.genus();
    AGB_OK
}

/// Largest gap, or -1 when there are none.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agb_semigroup_frobenius(s: *const AgbSemigroup, out: *mut i64) -> i32 {
    let (Some(s), false) = (s.as_ref(), out.is_null()) else {
        return null();
    };
    *out = s.inner.frobenius();
    AGB_OK
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agb_semigroup_contains(
    s: *const AgbSemigroup,
    m: i64,
    out: *mut bool,
) -> i32 {
    let (Some(s), false) = (s.as_ref(), out.is_null()) else {
        return null();
    };
    *out = s.inner.contains(m);
    AGB_OK
}

/// `h_i` for 1-based `i`.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agb_semigroup_nth_element(
    s: *const AgbSemigroup,
    i: usize,
    out: *mut i64,
) -> i32 {
    let (Some(s), false) = (s.as_ref(), out.is_null()) else {
        return null();
    };
    if i == 0 {
        return fail(Error::IndexOutOfRange {
            index: 0,
            max: usize::MAX,
        });
    }
    *out = s.inner.nth_element(i);
    AGB_OK
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agb_semigroup_is_symmetric(s: *const AgbSemigroup, out: *mut bool) -> i32 {
    let (Some(s), false) = (s.as_ref(), out.is_null()) else {
        return null();
    };
    *out = s.inner.is_symmetric();
    AGB_OK
}

unsafe fn make_hstar(
    s: *const AgbSemigroup,
    out: *mut *mut AgbHStar,
    build: impl FnOnce(&NumericalSemigroup) -> agbound::Result<HStar>,
) -> i32 {
    guard(|| {
        let (Some(s), false) = (s.as_ref(), out.is_null()) else {
            return null();
        };
        match build(&s.inner) {
            Ok(inner) => {
                let profile = LambdaProfile::new(&inner);
                *out = Box::into_raw(Box::new(AgbHStar { inner, profile }));
                AGB_OK
            }
            Err(e) => fail(e),
        }
    })
}

/// `H* = (H ∩ [0, n-1]) ∪ {n + l : l a gap}`.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agb_hstar_equiv_divisor(
    s: *const AgbSemigroup,
    n: usize,
    out: *mut *mut AgbHStar,
) -> i32 {
    make_hstar(s, out, |sg| HStar::from_equiv_divisor(sg, n))
}

/// `H* = {m ∈ H : n + 2g - 1 - m ∈ H}`.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agb_hstar_isometry_dual(
    s: *const AgbSemigroup,
    n: usize,
    out: *mut *mut AgbHStar,
) -> i32 {
    make_hstar(s, out, |sg| HStar::from_isometry_dual(sg, n))
}

/// # Safety
/// `s` must be a live handle; `members` must point to `len` values;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agb_hstar_explicit(
    s: *const AgbSemigroup,
    n: usize,
    members: *const i64,
    len: usize,
    out: *mut *mut AgbHStar,
) -> i32 {
    let Some(members) = input(members, len) else {
        return null();
    };
    make_hstar(s, out, |sg| HStar::from_explicit(sg, n, members))
}

/// `ell[m] = ℓ(mQ - D)` for `m = 0..n+2g-1`.
///
/// # Safety
/// `s` must be a live handle; `ell` must point to `len` values;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agb_hstar_abundance(
    s: *const AgbSemigroup,
    n: usize,
    ell: *const i64,
    len: usize,
    out: *mut *mut AgbHStar,
) -> i32 {
    let Some(ell) = input(ell, len) else {
        return null();
    };
    make_hstar(s, out, |sg| HStar::from_abundance(sg, n, ell))
}

/// # Safety
/// `h` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn agb_hstar_free(h: *mut AgbHStar) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agb_hstar_n(h: *const AgbHStar, out: *mut usize) -> i32 {
    let (Some(h), false) = (h.as_ref(), out.is_null()) else {
        return null();
    };
    *out = h.inner.n();
    AGB_OK
}

/// Copies the members `m_1 < ... < m_n`. `*out_len` is always set to `n`;
/// returns `AGB_ERR_BUFFER_TOO_SMALL` without copying when `cap < n`.
///
/// # Safety
/// `h` must be a live handle; `buf` must be valid for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn agb_hstar_members(
    h: *const AgbHStar,
    buf: *mut i64,
    cap: usize,
    out_len: *mut usize,
) -> i32 {
    let Some(h) = h.as_ref() else {
        return null();
    };
    write_slice(h.inner.members(), buf, cap, out_len)
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agb_hstar_is_isometry_dual(h: *const AgbHStar, out: *mut bool) -> i32 {
    let (Some(h), false) = (h.as_ref(), out.is_null()) else {
        return null();
    };
    *out = h.inner.is_isometry_dual();
    AGB_OK
}

/// Smallest element of `H` missing from `H*`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agb_hstar_pi(h: *const AgbHStar, out: *mut i64) -> i32 {
    let (Some(h), false) = (h.as_ref(), out.is_null()) else {
        return null();
    };
    *out = h.inner.pi();
    AGB_OK
}

/// Copies `#Λ*_1, ..., #Λ*_n`, with the same buffer protocol as
/// `agb_hstar_members`.
///
/// # Safety
/// `h` must be a live handle; `buf` must be valid for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn agb_lambda_counts(
    h: *const AgbHStar,
    buf: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> i32 {
    let Some(h) = h.as_ref() else {
        return null();
    };
    write_slice(h.profile.counts(), buf, cap, out_len)
}

fn check_index(h: &AgbHStar, i: usize) -> Result<(), Error> {
    let n = h.inner.n();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    Ok(())
}

/// `d*(i)`, 1-based.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agb_d_star(h: *const AgbHStar, i: usize, out: *mut usize) -> i32 {
    let (Some(h), false) = (h.as_ref(), out.is_null()) else {
        return null();
    };
    if let Err(e) = check_index(h, i) {
        return fail(e);
    }
    *out = h.profile.d_star_sequence()[i - 1];
    AGB_OK
}

/// Order bound at index `i`; requires an isometry-dual set.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agb_d_ord(h: *const AgbHStar, i: usize, out: *mut usize) -> i32 {
    guard(|| {
        let (Some(h), false) = (h.as_ref(), out.is_null()) else {
            return null();
        };
        if let Err(e) = check_index(h, i) {
            return fail(e);
        }
        match d_ord_sequence(&h.inner) {
            Ok(seq) => {
                *out = seq[i - 1];
                AGB_OK
            }
            Err(e) => fail(e),
        }
    })
}

/// Dimension of the improved code of designed distance `delta`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agb_improved_dimension(
    h: *const AgbHStar,
    delta: usize,
    out: *mut usize,
) -> i32 {
    let (Some(h), false) = (h.as_ref(), out.is_null()) else {
        return null();
    };
    match improved_from_counts(h.profile.counts(), delta) {
        Ok(p) => {
            *out = p.dimension;
            AGB_OK
        }
        Err(e) => fail(e),
    }
}

/// `n - #{i : #A[m_i] < delta}`; requires an isometry-dual set.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agb_feng_rao_dimension(
    h: *const AgbHStar,
    delta: usize,
    out: *mut usize,
) -> i32 {
    guard(|| {
        let (Some(h), false) = (h.as_ref(), out.is_null()) else {
            return null();
        };
        match feng_rao_improved_dim(&h.inner, delta) {
            Ok(d) => {
                *out = d;
                AGB_OK
            }
            Err(e) => fail(e),
        }
    })
}

/// `d*_r(i)`, searching at most `cap` nodes.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agb_ghw_bound(
    h: *const AgbHStar,
    i: usize,
    r: usize,
    cap: u64,
    out: *mut usize,
) -> i32 {
    guard(|| {
        let (Some(h), false) = (h.as_ref(), out.is_null()) else {
            return null();
        };
        if let Err(e) = check_index(h, i) {
            return fail(e);
        }
        match h.profile.ghw_bound(i, r, cap) {
            Ok(b) => {
                *out = b;
                AGB_OK
            }
            Err(e) => fail(e),
        }
    })
}
