//! C interface to segalkit.
//!
//! Objects are passed as opaque handles that the caller frees with the
//! matching `*_free` function. Fallible calls return an [`SkStatus`] and write
//! their result through an out-pointer; the message of the last failure on
//! the calling thread is available from [`sk_last_error`]. Strings returned
//! by the library are freed with [`sk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use segalkit::bisimplicial::{emit_bss, parse_bss, BisimplicialSet};
use segalkit::cat::{nerve, parse_cat};
use segalkit::invariants::{homology, is_kan, pi0, State, Verdict};
use segalkit::segal::{build_spine, complete_check, segal_check, SpineKind};
use segalkit::simplicial::{build_standard, emit_sset, parse_sset, SimplicialSet};
use segalkit::{Budget, Error};

/// Result codes; `SK_OK` is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkStatus {
    SkOk = 0,
    SkNullPointer = 1,
    SkInvalidUtf8 = 2,
    SkInvalidParameter = 3,
    SkBudgetExceeded = 4,
    SkParse = 5,
    SkMalformed = 6,
    SkSegalDefect = 7,
    SkMissingComposite = 8,
    SkNonTermination = 9,
    SkUnsupported = 10,
    SkWindowExceeded = 11,
    SkIo = 12,
    SkPanic = 13,
}

/// Three-valued answer of a decision procedure.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkVerdict {
    SkYes = 0,
    SkNo = 1,
    SkUnknown = 2,
}

/// Enumeration limits; see `sk_budget_default`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SkBudget {
    pub simplices: usize,
    pub dim: usize,
    pub nodes: u64,
}

impl From<SkBudget> for Budget {
    fn from(b: SkBudget) -> Self {
        Budget { simplices: b.simplices, dim: b.dim, nodes: b.nodes }
    }
}

/// A finite simplicial set.
pub struct SkSset(Arc<SimplicialSet>);

/// A bisimplicial set, possibly computed lazily row by row.
pub struct SkBss(BisimplicialSet);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SkStatus {
    match e {
        Error::InvalidParameter(_) => SkStatus::SkInvalidParameter,
        Error::BudgetExceeded { .. } => SkStatus::SkBudgetExceeded,
        Error::Parse { .. } => SkStatus::SkParse,
        Error::Malformed(_) => SkStatus::SkMalformed,
        Error::SegalDefect(_) => SkStatus::SkSegalDefect,
        Error::MissingComposite(_) => SkStatus::SkMissingComposite,
        Error::NonTermination(_) => SkStatus::SkNonTermination,
        Error::Unsupported(_) => SkStatus::SkUnsupported,
        Error::WindowExceeded { .. } => SkStatus::SkWindowExceeded,
        Error::Io(_) => SkStatus::SkIo,
    }
}

fn fail(status: SkStatus, msg: impl Into<String>) -> SkStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), SkStatus>) -> SkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SkStatus::SkOk,
        Ok(Err(s)) => s,
        Err(_) => fail(SkStatus::SkPanic, "internal panic"),
    }
}

fn lift<T>(r: segalkit::Result<T>) -> Result<T, SkStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, SkStatus> {
    if p.is_null() {
        return Err(fail(SkStatus::SkNullPointer, "null string"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(SkStatus::SkInvalidUtf8, "string is not UTF-8"))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, SkStatus> {
    p.as_ref().ok_or_else(|| fail(SkStatus::SkNullPointer, "null handle"))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), SkStatus> {
    if out.is_null() {
        return Err(fail(SkStatus::SkNullPointer, "null out-pointer"));
    }
    out.write(v);
    Ok(())
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s).map_or(std::ptr::null_mut(), CString::into_raw)
}

fn state(v: &Verdict) -> SkVerdict {
    match v.state {
        State::Yes => SkVerdict::SkYes,
        State::No => SkVerdict::SkNo,
        State::Unknown => SkVerdict::SkUnknown,
    }
}

#[no_mangle]
pub extern "C" fn sk_budget_default() -> SkBudget {
    let b = Budget::default();
    SkBudget { simplices: b.simplices, dim: b.dim, nodes: b.nodes }
}

/// Message of the last failure on this thread, or NULL. Owned by the
/// library; valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an SSET v1 document.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sk_sset_parse(text_ptr: *const c_char, out: *mut *mut SkSset) -> SkStatus {
    guard(|| {
        let (_, x) = lift(parse_sset(text(text_ptr)?))?;
        put(out, Box::into_raw(Box::new(SkSset(Arc::new(x)))))
    })
}

/// `kind` is "simplex", "boundary" or "horn"; `k` is used by horns only.
///
/// # Safety
/// `kind` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sk_sset_standard(kind: *const c_char, n: usize, k: usize, out: *mut *mut SkSset) -> SkStatus {
    guard(|| {
        let kind = lift(text(kind)?.parse())?;
        let s = lift(build_standard(kind, n, Some(k)))?;
        put(out, Box::into_raw(Box::new(SkSset(s.set))))
    })
}

/// # Safety
/// `x` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sk_sset_free(x: *mut SkSset) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Number of nondegenerate simplices.
///
/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sk_sset_len(x: *const SkSset, out: *mut usize) -> SkStatus {
    guard(|| put(out, handle(x)?.0.len()))
}

/// Nondegenerate simplices of dimension `d`.
///
/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sk_sset_count(x: *const SkSset, d: usize, out: *mut usize) -> SkStatus {
    guard(|| put(out, handle(x)?.0.counts().get(d).copied().unwrap_or(0)))
}

/// The SSET v1 text; free with `sk_string_free`.
///
/// # Safety
/// `x` must be a live handle, `name` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sk_sset_emit(x: *const SkSset, name: *const c_char, out: *mut *mut c_char) -> SkStatus {
    guard(|| put(out, to_c(emit_sset(text(name)?, &handle(x)?.0))))
}

/// Number of connected components.
///
/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sk_sset_pi0(x: *const SkSset, out: *mut usize) -> SkStatus {
    guard(|| put(out, pi0(&handle(x)?.0).count))
}

/// Homology through degree `max_deg` as a JSON array of
/// `{"rank": r, "torsion": [..]}`; free with `sk_string_free`.
///
/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sk_sset_homology_json(x: *const SkSset, max_deg: usize, budget: SkBudget, out: *mut *mut c_char) -> SkStatus {
    guard(|| {
        let h = lift(homology(&handle(x)?.0, max_deg, budget.into()))?;
        put(out, to_c(serde_json::to_string(&h).unwrap_or_default()))
    })
}

/// Horn filling through dimension `dim_bound`.
///
/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sk_sset_is_kan(x: *const SkSset, dim_bound: usize, budget: SkBudget, out: *mut SkVerdict) -> SkStatus {
    guard(|| put(out, state(&is_kan(&handle(x)?.0, dim_bound, budget.into()))))
}

/// Parses a BSS v1 document, virtual or stored.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sk_bss_parse(text_ptr: *const c_char, out: *mut *mut SkBss) -> SkStatus {
    guard(|| {
        let (_, x, _) = lift(parse_bss(text(text_ptr)?))?;
        put(out, Box::into_raw(Box::new(SkBss(x))))
    })
}

/// The nerve of the category `name` of a CAT v1 document, or of its only
/// category when `name` is NULL.
///
/// # Safety
/// `text` must be a NUL-terminated string, `name` one or NULL, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sk_bss_nerve(text_ptr: *const c_char, name: *const c_char, budget: SkBudget, out: *mut *mut SkBss) -> SkStatus {
    guard(|| {
        let doc = lift(parse_cat(text(text_ptr)?, budget.into()))?;
        let c = if name.is_null() {
            if doc.categories.len() != 1 {
                return Err(fail(SkStatus::SkInvalidParameter, "the document does not have exactly one category"));
            }
            doc.categories[0].clone()
        } else {
            let n = text(name)?;
            doc.category(n).cloned().ok_or_else(|| fail(SkStatus::SkInvalidParameter, format!("no category named `{n}`")))?
        };
        put(out, Box::into_raw(Box::new(SkBss(nerve(&c)))))
    })
}

/// `G(k)^t`, `Delta[k]^t` or `E^t` for `kind` "G", "Delta" or "E".
///
/// # Safety
/// `kind` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sk_bss_spine(kind: *const c_char, k: usize, out: *mut *mut SkBss) -> SkStatus {
    guard(|| {
        let kind: SpineKind = lift(text(kind)?.parse())?;
        put(out, Box::into_raw(Box::new(SkBss(lift(build_spine(kind, k, None))?))))
    })
}

/// # Safety
/// `x` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sk_bss_free(x: *mut SkBss) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Row `n` as a new simplicial set handle.
///
/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sk_bss_row(x: *const SkBss, n: usize, budget: SkBudget, out: *mut *mut SkSset) -> SkStatus {
    guard(|| {
        let r = lift(handle(x)?.0.row(n, budget.into()))?;
        put(out, Box::into_raw(Box::new(SkSset(r))))
    })
}

/// The BSS v1 text through row `window`; free with `sk_string_free`.
///
/// # Safety
/// `x` must be a live handle, `name` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sk_bss_emit(x: *const SkBss, name: *const c_char, window: usize, budget: SkBudget, out: *mut *mut c_char) -> SkStatus {
    guard(|| {
        let s = lift(emit_bss(text(name)?, &handle(x)?.0, window, budget.into()))?;
        put(out, to_c(s))
    })
}

/// Whether the Segal maps are weak equivalences for `2 <= k <= k_max`.
///
/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sk_bss_segal_check(x: *const SkBss, k_max: usize, budget: SkBudget, out: *mut SkVerdict) -> SkStatus {
    guard(|| {
        let r = lift(segal_check(&handle(x)?.0, k_max, budget.into()))?;
        put(out, state(&r.overall))
    })
}

/// Completeness of a Segal precategory.
///
/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sk_bss_complete_check(x: *const SkBss, budget: SkBudget, out: *mut SkVerdict) -> SkStatus {
    guard(|| put(out, state(&lift(complete_check(&handle(x)?.0, budget.into()))?)))
}

/// Runs one command-line invocation in-process. `argv` excludes the program
/// name. The JSON report is written to `report` (free with
/// `sk_string_free`) and the exit code to `code`.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings; `report` and `code`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_run(argc: usize, argv: *const *const c_char, report: *mut *mut c_char, code: *mut i32) -> SkStatus {
    guard(|| {
        if argc > 0 && argv.is_null() {
            return Err(fail(SkStatus::SkNullPointer, "null argv"));
        }
        let mut args = vec!["segalkit".to_string(), "--json".to_string()];
        for i in 0..argc {
            args.push(text(*argv.add(i))?.to_string());
        }
        let (c, _, out) = segalkit::cli::run(args);
        put(code, c)?;
        put(report, to_c(out))
    })
}
