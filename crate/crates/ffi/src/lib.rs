//! C ABI over the `edgeideal` library.
//!
//! Every fallible function returns an [`EiStatus`] and writes its result
//! through an out-pointer. On failure a message is available from
//! [`ei_last_error`] on the calling thread. Strings handed to the caller
//! must be released with [`ei_string_free`]; handles with their own `_free`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use edgeideal::betti::{betti_table, BettiOptions};
use edgeideal::closed_form::closed_form;
use edgeideal::error::Error;
use edgeideal::families::FamilyParams;
use edgeideal::graph::LabeledGraph;
use edgeideal::ideal::{edge_ideal, MonomialIdeal};
use edgeideal::linalg::Field;
use edgeideal::sdepth::{stanley_depth, StanleyOptions};
use edgeideal::InvariantBundle;
use libc::{c_char, size_t};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EiStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidParameter = 4,
    /// A variable cap was exceeded; raise the cap argument.
    CapExceeded = 5,
    /// No closed form covers the parameters.
    OutOfStatedRange = 6,
    /// Any other library error.
    Failed = 7,
    /// A panic was caught at the boundary.
    Panic = 8,
}

/// Opaque graph handle.
pub struct EiGraph {
    graph: LabeledGraph,
}

/// Opaque monomial ideal handle, with the variable names of its graph.
pub struct EiIdeal {
    ideal: MonomialIdeal,
    names: Vec<String>,
}

/// Homological invariants of `S/I`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EiInvariants {
    pub reg: size_t,
    pub pdim: size_t,
    pub depth: size_t,
    pub n_vars: size_t,
}

/// Predicted invariants; a field is meaningful only when its `has_` flag is set.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EiPrediction {
    pub has_depth: bool,
    pub depth: i64,
    pub has_sdepth: bool,
    pub sdepth: i64,
    pub has_reg: bool,
    pub reg: i64,
    pub has_pdim: bool,
    pub pdim: i64,
    pub n_vars: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> EiStatus {
    match e {
        Error::Parse { .. } => EiStatus::Parse,
        Error::InvalidParameter(_) | Error::NotPrime(_) => EiStatus::InvalidParameter,
        Error::TooManyVariables { .. } | Error::TooManyGenerators { .. } => EiStatus::CapExceeded,
        Error::OutOfStatedRange(_) => EiStatus::OutOfStatedRange,
        _ => EiStatus::Failed,
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), (EiStatus, String)>) -> EiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            EiStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("panic inside edgeideal".into());
            EiStatus::Panic
        }
    }
}

fn lib<T>(r: edgeideal::Result<T>) -> Result<T, (EiStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (EiStatus, String) {
    (EiStatus::NullArgument, format!("`{what}` is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (EiStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (EiStatus::InvalidUtf8, format!("`{what}` is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (EiStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), (EiStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior nul removed").into_raw()
}

fn field(p: u32) -> Result<Field, (EiStatus, String)> {
    lib(Field::new(p))
}

/// Message of the last failed call on this thread, or null. Owned by the
/// library and valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ei_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ei_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ei_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the graph of a family spec such as `brs(q=1,tsnake(n=2,p=1))`.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ei_graph_from_spec(spec: *const c_char, out: *mut *mut EiGraph) -> EiStatus {
    guard(|| {
        let family: FamilyParams = lib(read_str(spec, "spec")?.parse())?;
        let graph = lib(family.build())?;
        write(out, Box::into_raw(Box::new(EiGraph { graph })), "out")
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from [`ei_graph_from_spec`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ei_graph_free(g: *mut EiGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ei_graph_vertex_count(g: *const EiGraph, out: *mut size_t) -> EiStatus {
    guard(|| write(out, deref(g, "graph")?.graph.vertex_count(), "out"))
}

/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ei_graph_edge_count(g: *const EiGraph, out: *mut size_t) -> EiStatus {
    guard(|| write(out, deref(g, "graph")?.graph.edge_count(), "out"))
}

/// DOT rendering of the graph; free with [`ei_string_free`].
///
/// # Safety
/// `g` must be a live graph handle, `name` a nul-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ei_graph_to_dot(g: *const EiGraph, name: *const c_char, out: *mut *mut c_char) -> EiStatus {
    guard(|| {
        let dot = deref(g, "graph")?.graph.to_dot(read_str(name, "name")?);
        write(out, to_c(dot), "out")
    })
}

/// Edge ideal of a graph.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ei_edge_ideal(g: *const EiGraph, out: *mut *mut EiIdeal) -> EiStatus {
    guard(|| {
        let graph = &deref(g, "graph")?.graph;
        let ideal = lib(edge_ideal(graph))?;
        let handle = EiIdeal { ideal, names: graph.variable_names() };
        write(out, Box::into_raw(Box::new(handle)), "out")
    })
}

/// Releases an ideal. Null is ignored.
///
/// # Safety
/// `i` must come from [`ei_edge_ideal`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ei_ideal_free(i: *mut EiIdeal) {
    if !i.is_null() {
        drop(Box::from_raw(i));
    }
}

/// Generators as text, one per line; free with [`ei_string_free`].
///
/// # Safety
/// `i` must be a live ideal handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ei_ideal_to_text(i: *const EiIdeal, out: *mut *mut c_char) -> EiStatus {
    guard(|| {
        let h = deref(i, "ideal")?;
        write(out, to_c(h.ideal.to_text(&h.names)), "out")
    })
}

/// `reg`, `pdim` and `depth` of `S/I` over GF(`characteristic`), refusing
/// supports larger than `max_vars`.
///
/// # Safety
/// `i` must be a live ideal handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ei_ideal_invariants(
    i: *const EiIdeal,
    characteristic: u32,
    max_vars: size_t,
    out: *mut EiInvariants,
) -> EiStatus {
    guard(|| {
        let ideal = &deref(i, "ideal")?.ideal;
        let opts = BettiOptions { field: field(characteristic)?, max_vars, threads: None };
        let table = lib(betti_table(ideal, &opts))?;
        let b = InvariantBundle::from_table(&table, ideal.n_vars());
        write(out, EiInvariants { reg: b.reg, pdim: b.pdim, depth: b.depth, n_vars: b.n_vars }, "out")
    })
}

/// Graded Betti numbers as `i,j,beta` CSV; free with [`ei_string_free`].
///
/// # Safety
/// `i` must be a live ideal handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ei_ideal_betti_csv(
    i: *const EiIdeal,
    characteristic: u32,
    max_vars: size_t,
    out: *mut *mut c_char,
) -> EiStatus {
    guard(|| {
        let ideal = &deref(i, "ideal")?.ideal;
        let opts = BettiOptions { field: field(characteristic)?, max_vars, threads: None };
        write(out, to_c(lib(betti_table(ideal, &opts))?.to_csv()), "out")
    })
}

/// Exact Stanley depth of `S/I`, refusing more than `max_vars` effective
/// variables.
///
/// # Safety
/// `i` must be a live ideal handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ei_ideal_sdepth(i: *const EiIdeal, max_vars: size_t, out: *mut size_t) -> EiStatus {
    guard(|| {
        let ideal = &deref(i, "ideal")?.ideal;
        let s = lib(stanley_depth(ideal, &StanleyOptions { exact_cap: max_vars, strip_free: true }))?;
        write(out, s.value, "out")
    })
}

/// Closed-form prediction for a family spec.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ei_closed_form(spec: *const c_char, out: *mut EiPrediction) -> EiStatus {
    guard(|| {
        let family: FamilyParams = lib(read_str(spec, "spec")?.parse())?;
        let cf = lib(closed_form(&family))?;
        let p = cf.predicted;
        let pred = EiPrediction {
            has_depth: p.depth.is_some(),
            depth: p.depth.unwrap_or(0),
            has_sdepth: p.sdepth.is_some(),
            sdepth: p.sdepth.unwrap_or(0),
            has_reg: p.reg.is_some(),
            reg: p.reg.unwrap_or(0),
            has_pdim: p.pdim.is_some(),
            pdim: p.pdim.unwrap_or(0),
            n_vars: cf.n_vars,
        };
        write(out, pred, "out")
    })
}
