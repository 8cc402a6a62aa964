//! C ABI over `gbs-core`.
//!
//! Every fallible function returns a [`GbsStatus`]; on anything other than
//! `GBS_STATUS_OK` a message is available from [`gbs_last_error`] on the same
//! thread. Graphs and prime sets are opaque handles released with their
//! `_free` function. Strings handed out by the library are NUL-terminated
//! UTF-8 and must be released with [`gbs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gbs_core::ntheory::in_xi_u64;
use gbs_core::{
    conjugacy_separable_gbs, fusion_witness, residually_c_gbs, Answer, Bs1nGroup, Error, GbsClass,
    HGroup, LabeledGraph, PrimeSet, Verdict,
};
use num_bigint::BigInt;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GbsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Precondition = 5,
    BoundExceeded = 6,
    Internal = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GbsAnswer {
    Yes = 0,
    No = 1,
    Unknown = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GbsClassKind {
    InfiniteCyclic = 0,
    Bs11 = 1,
    Bs1Minus1 = 2,
    SolvableBs1n = 3,
    NonSolvable = 4,
}

/// Opaque graph handle.
pub struct GbsGraph(LabeledGraph);

/// Opaque prime-set handle.
pub struct GbsPrimeSet(PrimeSet);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(GbsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) | Error::Json(_) | Error::Io(_) => GbsStatus::Parse,
            Error::Domain(_) | Error::Usage(_) => GbsStatus::Domain,
            Error::Precondition(_) => GbsStatus::Precondition,
            Error::BoundExceeded { .. } => GbsStatus::BoundExceeded,
            Error::Internal(_) => GbsStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

fn guard(body: impl FnOnce() -> Outcome) -> GbsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            GbsStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(_) => {
            set_last_error("panic inside gbs_ffi");
            GbsStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(GbsStatus::NullArgument, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(GbsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Outcome {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Message for the most recent failure on this thread; empty after a
/// successful call. Owned by the library and valid until the next call.
#[no_mangle]
pub extern "C" fn gbs_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gbs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a graph from its JSON form.
///
/// # Safety
/// `json` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gbs_graph_from_json(
    json: *const c_char,
    out: *mut *mut GbsGraph,
) -> GbsStatus {
    guard(|| {
        let g = LabeledGraph::from_json(text(json, "json")?)?;
        write(out, Box::into_raw(Box::new(GbsGraph(g))), "out")
    })
}

/// # Safety
/// `g` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gbs_graph_free(g: *mut GbsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// New handle holding the reduced form of `g`.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gbs_graph_reduce(
    g: *const GbsGraph,
    out: *mut *mut GbsGraph,
) -> GbsStatus {
    guard(|| {
        let reduced = borrow(g, "graph")?.0.reduce();
        write(out, Box::into_raw(Box::new(GbsGraph(reduced))), "out")
    })
}

/// # Safety
/// `g` must be a live graph handle; `out` must be writable. The string
/// written to `out` is released with [`gbs_string_free`].
#[no_mangle]
pub unsafe extern "C" fn gbs_graph_to_json(g: *const GbsGraph, out: *mut *mut c_char) -> GbsStatus {
    guard(|| {
        let json = borrow(g, "graph")?.0.to_json();
        write(out, owned_string(json), "out")
    })
}

/// Class of a reduced graph. `n_out` receives `n` for the solvable
/// BS(1, n) class and 0 otherwise; it may be null.
///
/// # Safety
/// `g` must be a live graph handle; `kind` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gbs_graph_classify(
    g: *const GbsGraph,
    kind: *mut GbsClassKind,
    n_out: *mut i64,
) -> GbsStatus {
    guard(|| {
        let (k, n) = match borrow(g, "graph")?.0.classify()? {
            GbsClass::InfiniteCyclic => (GbsClassKind::InfiniteCyclic, 0),
            GbsClass::Bs11 => (GbsClassKind::Bs11, 0),
            GbsClass::Bs1Minus1 => (GbsClassKind::Bs1Minus1, 0),
            GbsClass::NonSolvable => (GbsClassKind::NonSolvable, 0),
            GbsClass::SolvableBs1n { n } => {
                let n = i64::try_from(&n).map_err(|_| {
                    Failure(GbsStatus::Domain, format!("n = {n} does not fit in int64"))
                })?;
                (GbsClassKind::SolvableBs1n, n)
            }
        };
        write(kind, k, "kind")?;
        if !n_out.is_null() {
            n_out.write(n);
        }
        Ok(())
    })
}

/// Parse a prime set: `all`, `{2,3}` or `all-{2}`.
///
/// # Safety
/// `set_text` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gbs_primes_parse(
    set_text: *const c_char,
    out: *mut *mut GbsPrimeSet,
) -> GbsStatus {
    guard(|| {
        let set: PrimeSet = text(set_text, "set_text")?.parse()?;
        write(out, Box::into_raw(Box::new(GbsPrimeSet(set))), "out")
    })
}

/// # Safety
/// `p` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gbs_primes_free(p: *mut GbsPrimeSet) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

unsafe fn verdict_out(
    verdict: Verdict,
    answer: *mut GbsAnswer,
    json_out: *mut *mut c_char,
) -> Outcome {
    let a = match verdict.answer {
        Answer::Yes => GbsAnswer::Yes,
        Answer::No => GbsAnswer::No,
        Answer::Unknown => GbsAnswer::Unknown,
    };
    write(answer, a, "answer")?;
    if !json_out.is_null() {
        let json = serde_json::to_string(&verdict).map_err(Error::from)?;
        json_out.write(owned_string(json));
    }
    Ok(())
}

/// Is the group of `g` residually a finite group of the class given by
/// `primes`? `json_out` may be null; otherwise it receives the verdict
/// as JSON.
///
/// # Safety
/// `g` and `primes` must be live handles; `answer` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gbs_residual(
    g: *const GbsGraph,
    primes: *const GbsPrimeSet,
    bound: u64,
    answer: *mut GbsAnswer,
    json_out: *mut *mut c_char,
) -> GbsStatus {
    guard(|| {
        let v = residually_c_gbs(&borrow(g, "graph")?.0, &borrow(primes, "primes")?.0, bound)?;
        verdict_out(v, answer, json_out)
    })
}

/// Conjugacy separability counterpart of [`gbs_residual`].
///
/// # Safety
/// Same as [`gbs_residual`].
#[no_mangle]
pub unsafe extern "C" fn gbs_conjsep(
    g: *const GbsGraph,
    primes: *const GbsPrimeSet,
    bound: u64,
    answer: *mut GbsAnswer,
    json_out: *mut *mut c_char,
) -> GbsStatus {
    guard(|| {
        let v =
            conjugacy_separable_gbs(&borrow(g, "graph")?.0, &borrow(primes, "primes")?.0, bound)?;
        verdict_out(v, answer, json_out)
    })
}

/// Conjugacy in BS(1, n) of two words over `t`, `a`.
///
/// # Safety
/// `x` and `y` must be valid C strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gbs_bs_are_conjugate(
    n: i64,
    x: *const c_char,
    y: *const c_char,
    out: *mut bool,
) -> GbsStatus {
    guard(|| {
        let g = Bs1nGroup::new(n)?;
        let x = g.parse_word(text(x, "x")?)?;
        let y = g.parse_word(text(y, "y")?)?;
        write(out, g.are_conjugate(&x, &y), "out")
    })
}

/// Conjugacy of `t^i1 a^j1` and `t^i2 a^j2` in H(n, r, s).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn gbs_h_are_conjugate(
    n: i64,
    r: u64,
    s: u64,
    i1: i64,
    j1: i64,
    i2: i64,
    j2: i64,
    out: *mut bool,
) -> GbsStatus {
    guard(|| {
        let h = HGroup::new(n, r, s)?;
        let (x, y) = (h.element(i1, j1), h.element(i2, j2));
        write(out, h.are_conjugate_criterion(x, y), "out")
    })
}

/// Membership of `s` in the set of admissible quotient moduli for `n`
/// and `primes`.
///
/// # Safety
/// `primes` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gbs_in_xi(
    n: i64,
    s: u64,
    primes: *const GbsPrimeSet,
    out: *mut bool,
) -> GbsStatus {
    guard(|| {
        let member = in_xi_u64(&BigInt::from(n), s, &borrow(primes, "primes")?.0);
        write(out, member, "out")
    })
}

/// Elements of BS(1, n) that no quotient in the class separates, as JSON
/// `{"n","u","v","w","q"}`.
///
/// # Safety
/// `primes` must be a live handle; `json_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gbs_fusion_witness(
    n: i64,
    primes: *const GbsPrimeSet,
    missing: u64,
    json_out: *mut *mut c_char,
) -> GbsStatus {
    guard(|| {
        let f = fusion_witness(&BigInt::from(n), &borrow(primes, "primes")?.0, missing)?;
        let json = serde_json::to_string(&f).map_err(Error::from)?;
        write(json_out, owned_string(json), "json_out")
    })
}
