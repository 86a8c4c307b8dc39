//! C ABI over `graphstate`.
//!
//! Graphs are opaque `GsGraph` handles created by `gs_graph_parse` or
//! `gs_graph_from_edges` and released with `gs_graph_free`. Every fallible
//! call returns a `GsStatus`; on failure `gs_last_error_message` describes
//! the most recent error on the calling thread. Strings returned by the
//! library are released with `gs_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use graphstate::cli::cmd_analyze;
use graphstate::concurrence::concurrence_labeled;
use graphstate::density::density_of_graph;
use graphstate::entropy::von_neumann_entropy;
use graphstate::separability::{ppt_test, BipartiteLabeling, SeparabilityStatus};
use graphstate::{parse_graph, Error, Graph};

/// Opaque graph handle.
pub struct GsGraph {
    inner: Graph,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Precondition = 4,
    DimensionMismatch = 5,
    BufferTooSmall = 6,
    Numerical = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GsSeparability {
    Separable = 0,
    EntangledNpt = 1,
    PptInconclusive = 2,
}

impl From<SeparabilityStatus> for GsSeparability {
    fn from(s: SeparabilityStatus) -> Self {
        match s {
            SeparabilityStatus::Separable => GsSeparability::Separable,
            SeparabilityStatus::EntangledNpt => GsSeparability::EntangledNpt,
            SeparabilityStatus::PptInconclusive => GsSeparability::PptInconclusive,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Failure(GsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => GsStatus::Parse,
            Error::DimensionMismatch { .. } => GsStatus::DimensionMismatch,
            Error::Numerical(_) => GsStatus::Numerical,
            _ => GsStatus::Precondition,
        };
        Failure(code, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(GsStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, records any error or panic and converts it to a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            GsStatus::Ok
        }
        Ok(Err(Failure(code, msg))) => {
            set_error(msg);
            code
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            GsStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(g: *const GsGraph) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|h| &h.inner).ok_or_else(|| null("graph"))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(GsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn labeling(g: &Graph, p: usize, q: usize, spec: *const c_char) -> Result<BipartiteLabeling, Failure> {
    let lab = if spec.is_null() {
        BipartiteLabeling::default_for(p, q)?
    } else {
        BipartiteLabeling::parse(p, q, text(spec, "labeling")?)?
    };
    lab.check_dim(g.n())?;
    Ok(lab)
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

/// Parses the edge-list text format (`n N` then `e U V` lines, 1-based).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gs_graph_parse(text_ptr: *const c_char, out: *mut *mut GsGraph) -> GsStatus {
    guard(|| {
        let g = parse_graph(text(text_ptr, "text")?)?;
        write_out(out, Box::into_raw(Box::new(GsGraph { inner: g })))
    })
}

/// Builds a graph on `n` vertices from `m` pairs of 0-based vertices
/// stored consecutively in `edges`.
///
/// # Safety
/// `edges` must point to `2 * m` values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gs_graph_from_edges(n: usize, edges: *const usize, m: usize, out: *mut *mut GsGraph) -> GsStatus {
    guard(|| {
        if edges.is_null() && m > 0 {
            return Err(null("edges"));
        }
        let flat = if m == 0 { &[][..] } else { std::slice::from_raw_parts(edges, 2 * m) };
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        let g = Graph::from_edges(n, &pairs)?;
        g.require_edges()?;
        write_out(out, Box::into_raw(Box::new(GsGraph { inner: g })))
    })
}

/// # Safety
/// `g` must come from this library and not be freed twice. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn gs_graph_free(g: *mut GsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gs_graph_vertex_count(g: *const GsGraph) -> usize {
    g.as_ref().map_or(0, |h| h.inner.n())
}

/// Number of edges, 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gs_graph_edge_count(g: *const GsGraph) -> usize {
    g.as_ref().map_or(0, |h| h.inner.m())
}

/// Writes `σ(G)` row-major into `out`, which holds `len` doubles. Fails
/// with `BufferTooSmall` when `len < n * n`.
///
/// # Safety
/// `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn gs_density_matrix(g: *const GsGraph, out: *mut f64, len: usize) -> GsStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let n = g.n();
        if out.is_null() {
            return Err(null("output buffer"));
        }
        if len < n * n {
            return Err(Failure(GsStatus::BufferTooSmall, format!("need {} doubles, got {len}", n * n)));
        }
        let rho = density_of_graph(g)?;
        let buf = std::slice::from_raw_parts_mut(out, n * n);
        for i in 0..n {
            for j in 0..n {
                buf[i * n + j] = rho.mat().get(i, j).re;
            }
        }
        Ok(())
    })
}

/// Von Neumann entropy of `σ(G)` in bits.
///
/// # Safety
/// `g` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn gs_von_neumann_entropy(g: *const GsGraph, out: *mut f64) -> GsStatus {
    guard(|| {
        let rho = density_of_graph(graph_ref(g)?)?;
        write_out(out, von_neumann_entropy(&rho).entropy)
    })
}

/// Partial-transpose test in `C^p ⊗ C^q`. `labeling` is null for the
/// default placement or a `v:s:t,...` string.
///
/// # Safety
/// Pointers must be valid; `labeling` may be null.
#[no_mangle]
pub unsafe extern "C" fn gs_ppt_test(
    g: *const GsGraph,
    p: usize,
    q: usize,
    labeling_spec: *const c_char,
    tol: f64,
    status_out: *mut GsSeparability,
    min_eigenvalue_out: *mut f64,
) -> GsStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let lab = labeling(g, p, q, labeling_spec)?;
        let v = ppt_test(&density_of_graph(g)?, &lab, tol)?;
        write_out(status_out, v.status.into())?;
        if !min_eigenvalue_out.is_null() {
            min_eigenvalue_out.write(v.min_pt_eigenvalue);
        }
        Ok(())
    })
}

/// Concurrence of a four-vertex graph state under a 2⊗2 labeling.
///
/// # Safety
/// Pointers must be valid; `labeling` may be null.
#[no_mangle]
pub unsafe extern "C" fn gs_concurrence(g: *const GsGraph, labeling_spec: *const c_char, out: *mut f64) -> GsStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let lab = labeling(g, 2, 2, labeling_spec)?;
        let rho = density_of_graph(g)?;
        write_out(out, concurrence_labeled(rho.mat(), &lab)?.value)
    })
}

/// Full analysis as a JSON string. Pass `p = q = 0` to skip the
/// separability section. Release the result with `gs_string_free`.
///
/// # Safety
/// Pointers must be valid; `labeling` may be null.
#[no_mangle]
pub unsafe extern "C" fn gs_analyze_json(
    g: *const GsGraph,
    p: usize,
    q: usize,
    labeling_spec: *const c_char,
    tol: f64,
    out: *mut *mut c_char,
) -> GsStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let lab = if p == 0 && q == 0 { None } else { Some(labeling(g, p, q, labeling_spec)?) };
        let report = cmd_analyze(g, lab.as_ref(), tol)?;
        let json = serde_json::to_string(&report).map_err(|e| Failure(GsStatus::Numerical, e.to_string()))?;
        let c = CString::new(json).map_err(|e| Failure(GsStatus::Numerical, e.to_string()))?;
        write_out(out, c.into_raw())
    })
}

/// # Safety
/// `s` must come from this library. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn gs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, empty after a
/// successful one. Valid until the next call into the library.
#[no_mangle]
pub extern "C" fn gs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
