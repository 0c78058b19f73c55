//! C ABI over the chord solvers.
//!
//! Graphs and step functions cross the boundary as opaque handles built from
//! JSON; results come back as JSON strings owned by the caller and released
//! with `chord_string_free`. Every call returns a `ChordStatus`; on failure
//! `chord_last_error` describes the problem for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use chord_core::chords::{euler_chord_solve, graph_chord_solve};
use chord_core::cover::compute_double_cover;
use chord_core::interval::{find_common_chord, necklace_split, parse_pearls};
use chord_core::metric::MetricGraph;
use chord_core::partition::verify_partition;
use chord_core::rational::parse_rational;
use chord_core::step::StepFunction;
use chord_core::wire::{self, CertificateJson, ChordJson, PieceJson, SolutionJson, StepJson};
use chord_core::ChordError;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChordStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Precondition = 4,
    Internal = 5,
    Panic = 6,
}

/// Opaque metric graph.
pub struct ChordGraph(MetricGraph);

/// Opaque step function bound to the graph it was built for.
pub struct ChordStepFunction {
    f: StepFunction,
    edges: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

enum Failure {
    Status(ChordStatus, String),
    Core(ChordError),
}

impl From<ChordError> for Failure {
    fn from(e: ChordError) -> Self {
        Failure::Core(e)
    }
}

type FfiResult<T> = Result<T, Failure>;

fn guard(body: impl FnOnce() -> FfiResult<()>) -> ChordStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ChordStatus::Ok,
        Ok(Err(Failure::Status(code, msg))) => {
            set_error(&msg);
            code
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(&e.to_string());
            match e {
                ChordError::Parse(_) => ChordStatus::Parse,
                ChordError::Precondition(_) => ChordStatus::Precondition,
                ChordError::Internal(_) => ChordStatus::Internal,
            }
        }
        Err(_) => {
            set_error("panic inside the chord library");
            ChordStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(ChordStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Status(ChordStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn emit(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| Failure::Status(ChordStatus::Internal, "nul in output".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn chord_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn chord_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned through an `out_json` parameter.
///
/// # Safety
/// `s` must be null or a string produced by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn chord_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph from `{"vertices": [...], "edges": [{"id", "ends"}]}`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn chord_graph_from_json(json: *const c_char, out: *mut *mut ChordGraph) -> ChordStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let g = wire::parse_graph(text(json, "json")?)?;
        *out = Box::into_raw(Box::new(ChordGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from `chord_graph_from_json` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn chord_graph_free(g: *mut ChordGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn chord_graph_edge_count(g: *const ChordGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Parses `{"edge": [{"from", "to", "value"}, ...]}` against `graph`.
///
/// # Safety
/// `graph` must be a live handle, `json` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn chord_step_from_json(
    graph: *const ChordGraph,
    json: *const c_char,
    out: *mut *mut ChordStepFunction,
) -> ChordStatus {
    guard(|| {
        let g = &handle(graph, "graph")?.0;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let j: StepJson = wire::from_json(text(json, "json")?)?;
        let f = wire::step_from_json(g, &j)?;
        *out = Box::into_raw(Box::new(ChordStepFunction { f, edges: g.edge_count() }));
        Ok(())
    })
}

/// # Safety
/// `f` must be null or a handle from `chord_step_from_json` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn chord_step_free(f: *mut ChordStepFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Double cover as a JSON list of paths such as `"a -b c"`.
///
/// # Safety
/// `graph` must be a live handle; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn chord_double_cover(graph: *const ChordGraph, out_json: *mut *mut c_char) -> ChordStatus {
    guard(|| {
        let g = &handle(graph, "graph")?.0;
        let cover = compute_double_cover(g)?;
        emit(out_json, wire::to_json(&wire::cover_to_json(g, cover.paths())))
    })
}

/// Connected subset of measure `r` (a `"p/q"` string) on which `f`
/// integrates to zero. `euler` selects the Euler-circuit solver.
///
/// # Safety
/// Handles must be live and built for the same graph; `r` nul-terminated;
/// `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn chord_solve(
    graph: *const ChordGraph,
    f: *const ChordStepFunction,
    r: *const c_char,
    euler: bool,
    out_json: *mut *mut c_char,
) -> ChordStatus {
    guard(|| {
        let g = &handle(graph, "graph")?.0;
        let f = handle(f, "step function")?;
        if f.edges != g.edge_count() {
            return Err(ChordError::precondition("step function belongs to another graph").into());
        }
        let r = parse_rational(text(r, "r")?)?;
        let sol = if euler { euler_chord_solve(g, &f.f, &r)? } else { graph_chord_solve(g, &f.f, &r)? };
        emit(out_json, wire::to_json(&SolutionJson::new(g, &sol)))
    })
}

/// Verifies a partition certificate `{"subsets": [...], "r", "n"}`.
///
/// # Safety
/// `graph` must be live, `cert_json` nul-terminated, `out_valid` writable.
#[no_mangle]
pub unsafe extern "C" fn chord_partition_verify(
    graph: *const ChordGraph,
    cert_json: *const c_char,
    out_valid: *mut bool,
) -> ChordStatus {
    guard(|| {
        let g = &handle(graph, "graph")?.0;
        if out_valid.is_null() {
            return Err(null("output pointer"));
        }
        let cert = wire::from_json::<CertificateJson>(text(cert_json, "certificate")?)?.to_certificate(g)?;
        *out_valid = verify_partition(g, &cert);
        Ok(())
    })
}

/// Common chord of two densities on `[0, 1]` given as piece lists.
///
/// # Safety
/// All strings nul-terminated; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn chord_interval_chord(
    f_json: *const c_char,
    g_json: *const c_char,
    r: *const c_char,
    out_json: *mut *mut c_char,
) -> ChordStatus {
    guard(|| {
        let f = wire::step1d_from_json(&wire::from_json::<Vec<PieceJson>>(text(f_json, "f")?)?)?;
        let g = wire::step1d_from_json(&wire::from_json::<Vec<PieceJson>>(text(g_json, "g")?)?)?;
        let r = parse_rational(text(r, "r")?)?;
        emit(out_json, wire::to_json(&ChordJson::from(&find_common_chord(&f, &g, &r)?)))
    })
}

/// Two-cut fair split of a `B`/`W` necklace.
///
/// # Safety
/// `pearls` nul-terminated; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn chord_necklace(pearls: *const c_char, out_json: *mut *mut c_char) -> ChordStatus {
    guard(|| {
        let split = necklace_split(&parse_pearls(text(pearls, "pearls")?)?)?;
        emit(out_json, wire::to_json(&split))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn errors_are_per_thread() {
        unsafe {
            let mut out = ptr::null_mut();
            assert_eq!(chord_necklace(ptr::null(), &mut out), ChordStatus::NullPointer);
            let here = CStr::from_ptr(chord_last_error()).to_str().unwrap().to_string();
            assert!(here.contains("null"));
            std::thread::spawn(|| {
                let msg = CStr::from_ptr(chord_last_error()).to_str().unwrap();
                assert!(msg.is_empty());
            })
            .join()
            .unwrap();
        }
    }
}
