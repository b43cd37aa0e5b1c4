//! C ABI over `c3z3`.
//!
//! Conventions:
//! * every fallible call returns a [`C3z3Status`] and writes its result
//!   through an out-pointer, which is left untouched on failure;
//! * strings handed out are owned by the caller and released with
//!   [`c3z3_string_free`]; rationals are `"p/q"` strings;
//! * handles are opaque and released with their own `_free` function;
//! * the message of the last failure on the calling thread is available
//!   from [`c3z3_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use c3z3::algebra::{g_mumford_relations, mumford_relations, reduce, LambdaPoly};
use c3z3::anomaly::{gamma2, AmplitudeDoc};
use c3z3::hodge::{self, Outcome};
use c3z3::mirror::MirrorFrame;
use c3z3::picard_fuchs::bk_series;
use c3z3::reference;
use c3z3::series::Series;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum C3z3Status {
    Ok = 0,
    /// The value is well defined but out of reach; see `c3z3_last_error`.
    Unsupported = 1,
    InvalidArgument = 2,
    NullPointer = 3,
    Internal = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum C3z3RelationKind {
    Mumford = 0,
    GMumford = 1,
}

/// Truncated power series with exact rational coefficients.
pub struct C3z3Series(Series);

/// Mirror map data at a fixed working order.
pub struct C3z3MirrorFrame(MirrorFrame);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl ToString) {
    let msg = msg.to_string().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul stripped"));
}

fn fail(status: C3z3Status, msg: impl ToString) -> C3z3Status {
    set_error(msg);
    status
}

/// Run `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> C3z3Status) -> C3z3Status {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(C3z3Status::Internal, "panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, C3z3Status> {
    if s.is_null() {
        return Err(fail(C3z3Status::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(C3z3Status::InvalidArgument, "string is not UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: impl ToString) -> C3z3Status {
    if out.is_null() {
        return fail(C3z3Status::NullPointer, "null out-pointer");
    }
    match CString::new(s.to_string()) {
        Ok(c) => {
            *out = c.into_raw();
            C3z3Status::Ok
        }
        Err(_) => fail(C3z3Status::Internal, "interior nul in output"),
    }
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> C3z3Status {
    if out.is_null() {
        return fail(C3z3Status::NullPointer, "null out-pointer");
    }
    *out = Box::into_raw(Box::new(value));
    C3z3Status::Ok
}

macro_rules! try_c {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

macro_rules! deref {
    ($p:expr) => {
        match $p.as_ref() {
            Some(h) => h,
            None => return fail(C3z3Status::NullPointer, "null handle"),
        }
    };
}

fn invalid(e: impl ToString) -> C3z3Status {
    fail(C3z3Status::InvalidArgument, e)
}

/// Message for the last non-Ok status on this thread. Valid until the next
/// failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn c3z3_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn c3z3_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `B_k(psi)` through `psi^order`, `k` in {1, 2}.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn c3z3_series_bk(
    k: i64,
    order: usize,
    out: *mut *mut C3z3Series,
) -> C3z3Status {
    guard(|| match bk_series(k, order) {
        Ok(s) => write_handle(out, C3z3Series(s)),
        Err(e) => invalid(e),
    })
}

/// Parse the text form (`series <var> order <n>` then `<exp> <p/q>` lines).
///
/// # Safety
/// `text` must be a nul-terminated string, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn c3z3_series_parse(
    text: *const c_char,
    out: *mut *mut C3z3Series,
) -> C3z3Status {
    guard(|| {
        let text = try_c!(read_str(text));
        match text.parse::<Series>() {
            Ok(s) => write_handle(out, C3z3Series(s)),
            Err(e) => invalid(e),
        }
    })
}

/// # Safety
/// `s` must be a live handle or null; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn c3z3_series_order(s: *const C3z3Series, out: *mut usize) -> C3z3Status {
    guard(|| {
        let s = deref!(s);
        if out.is_null() {
            return fail(C3z3Status::NullPointer, "null out-pointer");
        }
        *out = s.0.order();
        C3z3Status::Ok
    })
}

/// Coefficient of `var^exp` as `"p/q"`; `exp` beyond the order is invalid.
///
/// # Safety
/// `s` must be a live handle or null; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn c3z3_series_coeff(
    s: *const C3z3Series,
    exp: usize,
    out: *mut *mut c_char,
) -> C3z3Status {
    guard(|| {
        let s = deref!(s);
        match s.0.coeff(exp) {
            Some(c) => write_string(out, c),
            None => invalid(format!("exponent {exp} beyond order {}", s.0.order())),
        }
    })
}

/// Text form of the series.
///
/// # Safety
/// `s` must be a live handle or null; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn c3z3_series_to_string(
    s: *const C3z3Series,
    out: *mut *mut c_char,
) -> C3z3Status {
    guard(|| write_string(out, &deref!(s).0))
}

/// Compositional inverse; needs zero constant and nonzero linear term.
///
/// # Safety
/// `s` must be a live handle or null; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn c3z3_series_revert(
    s: *const C3z3Series,
    out: *mut *mut C3z3Series,
) -> C3z3Status {
    guard(|| match deref!(s).0.revert() {
        Ok(r) => write_handle(out, C3z3Series(r)),
        Err(e) => invalid(e),
    })
}

/// # Safety
/// `s` must come from this library or be null; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn c3z3_series_free(s: *mut C3z3Series) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn c3z3_mirror_frame_new(
    working_order: usize,
    out: *mut *mut C3z3MirrorFrame,
) -> C3z3Status {
    guard(|| match MirrorFrame::new(working_order) {
        Ok(f) => write_handle(out, C3z3MirrorFrame(f)),
        Err(e) => invalid(e),
    })
}

/// Prepotential `F0(sigma1)`.
///
/// # Safety
/// `frame` must be a live handle or null; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn c3z3_mirror_prepotential(
    frame: *const C3z3MirrorFrame,
    out: *mut *mut C3z3Series,
) -> C3z3Status {
    guard(|| match deref!(frame).0.prepotential() {
        Ok(f0) => write_handle(out, C3z3Series(f0)),
        Err(e) => invalid(e),
    })
}

/// `N_{0,k}`; needs `3k <= working_order`.
///
/// # Safety
/// `frame` must be a live handle or null; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn c3z3_mirror_genus0(
    frame: *const C3z3MirrorFrame,
    k: usize,
    out: *mut *mut c_char,
) -> C3z3Status {
    guard(|| {
        let frame = deref!(frame);
        if k == 0 {
            return invalid("k must be positive");
        }
        match frame.0.genus0_invariants(k) {
            Ok(v) => write_string(out, &v[k - 1]),
            Err(e) => invalid(e),
        }
    })
}

/// # Safety
/// `f` must come from this library or be null; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn c3z3_mirror_frame_free(f: *mut C3z3MirrorFrame) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// `int lambda_g lambda_{g-1} lambda_{g-2}`, `g >= 2`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn c3z3_fp_integral(g: u32, out: *mut *mut c_char) -> C3z3Status {
    guard(|| match hodge::fp_integral(g) {
        Ok(v) => write_string(out, v),
        Err(e) => invalid(e),
    })
}

/// Unpointed invariant; `Unsupported` from genus 4 on.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn c3z3_unpointed_invariant(g: u32, out: *mut *mut c_char) -> C3z3Status {
    guard(|| match hodge::unpointed_invariant(g) {
        Ok(Outcome::Exact(v)) => write_string(out, v),
        Ok(Outcome::Unsupported(u)) => fail(C3z3Status::Unsupported, format!("Unsupported: {u}")),
        Err(e) => invalid(e),
    })
}

/// Embedded `N_{g,k}`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn c3z3_reference_ngk(g: u32, k: u32, out: *mut *mut c_char) -> C3z3Status {
    guard(|| match reference::ngk(g, k) {
        Ok(v) => write_string(out, v),
        Err(e) => invalid(e),
    })
}

/// Normal form of a lambda polynomial such as `"3 * l2 * l1 - l1^3"`.
///
/// # Safety
/// `poly` must be a nul-terminated string, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn c3z3_lambda_reduce(
    kind: C3z3RelationKind,
    g: u32,
    poly: *const c_char,
    out: *mut *mut c_char,
) -> C3z3Status {
    guard(|| {
        let text = try_c!(read_str(poly));
        let p: LambdaPoly = try_c!(text.parse().map_err(invalid));
        let rel = match kind {
            C3z3RelationKind::Mumford => mumford_relations(g),
            C3z3RelationKind::GMumford => g_mumford_relations(g),
        };
        let rel = try_c!(rel.map_err(invalid));
        write_string(out, reduce(&p, &rel))
    })
}

/// `Gamma_2` of a JSON amplitude document.
///
/// # Safety
/// `json` must be a nul-terminated string, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn c3z3_gamma2_json(
    json: *const c_char,
    out: *mut *mut c_char,
) -> C3z3Status {
    guard(|| {
        let text = try_c!(read_str(json));
        let doc: AmplitudeDoc = try_c!(serde_json::from_str(text).map_err(invalid));
        let data = try_c!(doc.into_data().map_err(invalid));
        write_string(out, gamma2(&data))
    })
}
