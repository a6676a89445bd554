//! C ABI for `domkit`.
//!
//! Handles (`DkBasis`, `DkTrace`) are opaque and owned by the caller once
//! returned; release them with the matching `*_free`. Strings returned
//! through `out` parameters are NUL-terminated, caller-owned, and released
//! with `dk_string_free`. Every function returns a [`DkStatus`]; on anything
//! but `DK_STATUS_OK` a message is available from `dk_last_error` on the same
//! thread.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use domkit::completion::{check_subdomain, enumerate_ideals, IdealScan};
use domkit::constructors::{coalesced_sum, function_space, kleene_star, record_basis, strict_product};
use domkit::coop::coop_construct;
use domkit::io::{export_dot, parse_basis, serialize_basis};
use domkit::{lift_antichain, one_point, ConstructorParams, CoopParams, CoopTrace, DomainError, FiniteBasis, Limits, StopReason};

/// Result codes; the first four match the `domkit` CLI exit statuses.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DkStatus {
    Ok = 0,
    PredicateFailed = 1,
    InputError = 2,
    CapExceeded = 3,
    NullPointer = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DkStopReason {
    Converged = 0,
    IterCap = 1,
    CardCap = 2,
}

/// A finite pointed basis.
pub struct DkBasis(FiniteBasis);

/// A bounded iteration trace of the object equation.
pub struct DkTrace {
    trace: CoopTrace,
    params: CoopParams,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(e: DomainError) -> DkStatus {
    let status = if e.is_cap() { DkStatus::CapExceeded } else { DkStatus::InputError };
    set_error(e.to_string());
    status
}

/// Runs `f`, converting panics into `Internal`.
fn guarded(f: impl FnOnce() -> DkStatus) -> DkStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            DkStatus::Internal
        }
    }
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            set_error(concat!("null pointer: ", stringify!($p)));
            return DkStatus::NullPointer;
        })+
    };
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, DkStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(DkStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        DkStatus::InputError
    })
}

unsafe fn str_array(p: *const *const c_char, n: usize) -> Result<Vec<String>, DkStatus> {
    if p.is_null() && n > 0 {
        set_error("null string array");
        return Err(DkStatus::NullPointer);
    }
    (0..n).map(|i| str_arg(*p.add(i)).map(str::to_owned)).collect()
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> DkStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            DkStatus::Ok
        }
        Err(_) => {
            set_error("output contains NUL");
            DkStatus::Internal
        }
    }
}

unsafe fn put_basis(out: *mut *mut DkBasis, r: domkit::Result<FiniteBasis>) -> DkStatus {
    match r {
        Ok(b) => {
            *out = Box::into_raw(Box::new(DkBasis(b)));
            DkStatus::Ok
        }
        Err(e) => fail(e),
    }
}

fn cparams(max_card: usize) -> ConstructorParams {
    ConstructorParams { cardinality_cap: max_card, ..ConstructorParams::default() }
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next `dk_*` call on the same thread.
#[no_mangle]
pub extern "C" fn dk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a basis from its JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_basis_parse(json: *const c_char, out: *mut *mut DkBasis) -> DkStatus {
    guarded(|| {
        non_null!(out);
        let text = match str_arg(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        put_basis(out, parse_basis(text))
    })
}

/// # Safety
/// `b` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dk_basis_free(b: *mut DkBasis) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// The one-point basis `{bot}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_basis_one_point(out: *mut *mut DkBasis) -> DkStatus {
    guarded(|| {
        non_null!(out);
        put_basis(out, Ok(one_point()))
    })
}

/// The flat basis over `n` atom names.
///
/// # Safety
/// `names` must point to `n` NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_basis_flat(names: *const *const c_char, n: usize, out: *mut *mut DkBasis) -> DkStatus {
    guarded(|| {
        non_null!(out);
        match str_array(names, n) {
            Ok(names) => put_basis(out, lift_antichain(&names)),
            Err(s) => s,
        }
    })
}

/// # Safety
/// `b` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_basis_len(b: *const DkBasis, out: *mut usize) -> DkStatus {
    guarded(|| {
        non_null!(b, out);
        *out = (*b).0.len();
        DkStatus::Ok
    })
}

/// Canonical JSON text of the basis.
///
/// # Safety
/// `b` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_basis_to_json(b: *const DkBasis, out: *mut *mut c_char) -> DkStatus {
    guarded(|| {
        non_null!(b, out);
        put_string(out, serialize_basis(&(*b).0))
    })
}

/// DOT rendering: covers only, or every non-reflexive pair if `full_order`.
///
/// # Safety
/// `b` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_basis_export_dot(b: *const DkBasis, full_order: bool, out: *mut *mut c_char) -> DkStatus {
    guarded(|| {
        non_null!(b, out);
        put_string(out, export_dot(&(*b).0, full_order))
    })
}

/// `DK_STATUS_OK` if every bounded subset has a lub, else
/// `DK_STATUS_PREDICATE_FAILED` (the witness is in `dk_last_error`).
///
/// # Safety
/// `b` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dk_basis_is_finitary(b: *const DkBasis) -> DkStatus {
    guarded(|| {
        non_null!(b);
        let r = (*b).0.is_finitary_basis();
        if r.holds() {
            DkStatus::Ok
        } else {
            set_error(serde_json::to_string(&r).unwrap_or_default());
            DkStatus::PredicateFailed
        }
    })
}

/// Number of ideals (elements of the completion).
///
/// # Safety
/// `b` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_basis_ideal_count(b: *const DkBasis, out: *mut usize) -> DkStatus {
    guarded(|| {
        non_null!(b, out);
        match enumerate_ideals(&(*b).0, IdealScan::Principal, &Limits::default()) {
            Ok(ideals) => {
                *out = ideals.len();
                DkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// `DK_STATUS_OK` if `d` is a subdomain of `e`, else
/// `DK_STATUS_PREDICATE_FAILED` with the failing clause in `dk_last_error`.
///
/// # Safety
/// `d` and `e` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn dk_basis_is_subdomain(d: *const DkBasis, e: *const DkBasis) -> DkStatus {
    guarded(|| {
        non_null!(d, e);
        let r = check_subdomain(&(*d).0, &(*e).0);
        if r.holds() {
            DkStatus::Ok
        } else {
            set_error(serde_json::to_string(&r).unwrap_or_default());
            DkStatus::PredicateFailed
        }
    })
}

/// Coalesced sum.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_basis_sum(a: *const DkBasis, b: *const DkBasis, max_card: usize, out: *mut *mut DkBasis) -> DkStatus {
    guarded(|| {
        non_null!(a, b, out);
        put_basis(out, coalesced_sum(&(*a).0, &(*b).0, &cparams(max_card)))
    })
}

/// Strict product.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_basis_product(a: *const DkBasis, b: *const DkBasis, max_card: usize, out: *mut *mut DkBasis) -> DkStatus {
    guarded(|| {
        non_null!(a, b, out);
        put_basis(out, strict_product(&(*a).0, &(*b).0, &cparams(max_card)))
    })
}

/// Function space; `strict` keeps only strict mappings.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_basis_fun(
    a: *const DkBasis,
    b: *const DkBasis,
    strict: bool,
    max_card: usize,
    out: *mut *mut DkBasis,
) -> DkStatus {
    guarded(|| {
        non_null!(a, b, out);
        put_basis(out, function_space(&(*a).0, &(*b).0, strict, &cparams(max_card)))
    })
}

/// Strict sequences of length at most `max_len`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_basis_star(a: *const DkBasis, max_len: usize, max_card: usize, out: *mut *mut DkBasis) -> DkStatus {
    guarded(|| {
        non_null!(a, out);
        let p = ConstructorParams { max_seq_len: max_len, ..cparams(max_card) };
        put_basis(out, kleene_star(&(*a).0, &p))
    })
}

/// Records over `n` labels with fields in `m` (pointwise ordering).
///
/// # Safety
/// `labels` must point to `n` NUL-terminated strings; `m` must be a live
/// handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_basis_rec(
    labels: *const *const c_char,
    n: usize,
    m: *const DkBasis,
    max_card: usize,
    out: *mut *mut DkBasis,
) -> DkStatus {
    guarded(|| {
        non_null!(m, out);
        let labels: BTreeSet<String> = match str_array(labels, n) {
            Ok(l) => l.into_iter().collect(),
            Err(s) => return s,
        };
        put_basis(out, record_basis(&labels, &(*m).0, &cparams(max_card)))
    })
}

/// Iterates the object equation from the one-point basis.
///
/// `*out` is set both on `DK_STATUS_OK` and on `DK_STATUS_CAP_EXCEEDED`; in
/// the latter case the trace holds the stages completed before the cap.
///
/// # Safety
/// `base` must be a live handle; `labels` must point to `n` NUL-terminated
/// strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_coop_construct(
    base: *const DkBasis,
    labels: *const *const c_char,
    n: usize,
    max_seq_len: usize,
    max_iters: usize,
    max_card: usize,
    out: *mut *mut DkTrace,
) -> DkStatus {
    guarded(|| {
        non_null!(base, out);
        let labels = match str_array(labels, n) {
            Ok(l) => l,
            Err(s) => return s,
        };
        let params = CoopParams {
            max_seq_len,
            max_iters,
            cardinality_cap: max_card,
            ..CoopParams::new((*base).0.clone(), labels)
        };
        match coop_construct(&params) {
            Ok(trace) => {
                let status = match &trace.stop_reason {
                    StopReason::CardCap { message } => {
                        set_error(message.clone());
                        DkStatus::CapExceeded
                    }
                    _ => DkStatus::Ok,
                };
                *out = Box::into_raw(Box::new(DkTrace { trace, params }));
                status
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `t` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dk_trace_free(t: *mut DkTrace) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of stages `O_0..O_k`.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_trace_stage_count(t: *const DkTrace, out: *mut usize) -> DkStatus {
    guarded(|| {
        non_null!(t, out);
        *out = (*t).trace.stages.len();
        DkStatus::Ok
    })
}

/// A copy of stage `i` as a new basis handle.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_trace_stage(t: *const DkTrace, i: usize, out: *mut *mut DkBasis) -> DkStatus {
    guarded(|| {
        non_null!(t, out);
        let stages = &(*t).trace.stages;
        match stages.get(i) {
            Some(s) => put_basis(out, Ok(s.clone())),
            None => {
                set_error(format!("stage {i} out of range"));
                DkStatus::InputError
            }
        }
    })
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_trace_stop_reason(t: *const DkTrace, out: *mut DkStopReason) -> DkStatus {
    guarded(|| {
        non_null!(t, out);
        *out = match (*t).trace.stop_reason {
            StopReason::Converged { .. } => DkStopReason::Converged,
            StopReason::IterCap => DkStopReason::IterCap,
            StopReason::CardCap { .. } => DkStopReason::CardCap,
        };
        DkStatus::Ok
    })
}

/// JSON summary: stage sizes, stop reason, embedding reports.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_trace_summary_json(t: *const DkTrace, out: *mut *mut c_char) -> DkStatus {
    guarded(|| {
        non_null!(t, out);
        let t = &*t;
        match serde_json::to_string(&t.trace.summary(&t.params)) {
            Ok(s) => put_string(out, s),
            Err(e) => {
                set_error(e.to_string());
                DkStatus::Internal
            }
        }
    })
}
