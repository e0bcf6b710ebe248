//! C ABI over the `branchwidth` crate.
//!
//! A `BwGraph` is an opaque handle created by `bw_graph_parse` or
//! `bw_graph_from_edges` and released with `bw_graph_free`. Every fallible
//! call returns a `BwStatus`; on failure `bw_last_error_message` describes
//! the error for the calling thread. Strings returned by the library are
//! released with `bw_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use branchwidth::io::{self, Format, Instance};
use branchwidth::{Algorithm, AnyHypergraph, BwError, Deadline, SolveOptions};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    InvalidInput = 4,
    TooLarge = 5,
    NotAGraph = 6,
    Timeout = 7,
    Invariant = 8,
    Io = 9,
    Panic = 10,
}

/// Solver selection.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BwAlgorithm {
    Hyper = 0,
    Blocks = 1,
    Root = 2,
    Oracle = 3,
}

/// Instance text format.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BwFormat {
    Gr = 0,
    Hgr = 1,
}

/// Opaque hypergraph handle.
pub struct BwGraph {
    inner: AnyHypergraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(BwStatus, String);

impl From<BwError> for Failure {
    fn from(e: BwError) -> Self {
        let status = match &e {
            BwError::Parse(_) => BwStatus::Parse,
            BwError::InvalidInput(_) => BwStatus::InvalidInput,
            BwError::TooLarge { .. } => BwStatus::TooLarge,
            BwError::NotAGraph { .. } => BwStatus::NotAGraph,
            BwError::Timeout => BwStatus::Timeout,
            BwError::Invariant(_) => BwStatus::Invariant,
            BwError::Io(_) => BwStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(BwStatus::NullPointer, format!("{what} is null"))
}

fn set_last_error(msg: Option<String>) {
    let msg = msg.map(|m| CString::new(m.replace('\0', " ")).unwrap_or_default());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = msg);
}

/// Runs `f`, records its error for the thread and maps panics to `Panic`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(None);
            BwStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(Some(msg));
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(Some(format!("internal panic: {msg}")));
            BwStatus::Panic
        }
    }
}

fn options(alg: BwAlgorithm, timeout_secs: f64) -> SolveOptions {
    let algorithm = match alg {
        BwAlgorithm::Hyper => Algorithm::Hyper,
        BwAlgorithm::Blocks => Algorithm::Blocks,
        BwAlgorithm::Root => Algorithm::Root,
        BwAlgorithm::Oracle => Algorithm::Oracle,
    };
    SolveOptions::new(algorithm).with_deadline(Deadline::from_secs(Some(timeout_secs)))
}

/// # Safety
/// `g` must be null or a handle from this library that was not freed.
unsafe fn graph<'a>(g: *const BwGraph) -> Result<&'a AnyHypergraph, Failure> {
    g.as_ref().map(|g| &g.inner).ok_or_else(|| null("graph"))
}

fn publish(h: AnyHypergraph, out: *mut *mut BwGraph) {
    let handle = Box::into_raw(Box::new(BwGraph { inner: h }));
    // SAFETY: callers check `out` for null before building the graph.
    unsafe { *out = handle };
}

/// Parses instance text (`.gr` or `.hgr`) into a new handle stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bw_graph_parse(text: *const c_char, format: BwFormat, out: *mut *mut BwGraph) -> BwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text).to_str().map_err(|e| Failure(BwStatus::InvalidArgument, format!("text is not UTF-8: {e}")))?;
        let format = match format {
            BwFormat::Gr => Format::Gr,
            BwFormat::Hgr => Format::Hgr,
        };
        let inst = io::parse(text, format).map_err(BwError::from)?;
        publish(AnyHypergraph::from_instance(&inst)?, out);
        Ok(())
    })
}

/// Builds a handle from `m` edges over vertices `0..n`. Edge `i` consists of
/// `vertices[offsets[i] .. offsets[i + 1]]`; `offsets` has `m + 1` entries.
///
/// # Safety
/// `offsets` must point to `m + 1` values, `vertices` to `offsets[m]`
/// values (it may be null when that is 0), and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bw_graph_from_edges(
    n: usize,
    m: usize,
    offsets: *const usize,
    vertices: *const usize,
    out: *mut *mut BwGraph,
) -> BwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        if offsets.is_null() {
            return Err(null("offsets"));
        }
        let len = m.checked_add(1).ok_or_else(|| Failure(BwStatus::InvalidArgument, "m is too large".into()))?;
        let offsets = std::slice::from_raw_parts(offsets, len);
        let total = offsets[m];
        if offsets[0] != 0 || offsets.windows(2).any(|w| w[0] > w[1]) {
            return Err(Failure(BwStatus::InvalidArgument, "offsets must start at 0 and be nondecreasing".into()));
        }
        let vertices: &[usize] = match (vertices.is_null(), total) {
            (_, 0) => &[],
            (true, _) => return Err(null("vertices")),
            (false, t) => std::slice::from_raw_parts(vertices, t),
        };
        let edges = offsets.windows(2).map(|w| vertices[w[0]..w[1]].to_vec()).collect();
        let inst = Instance { n, edges, comment: None };
        publish(AnyHypergraph::from_instance(&inst)?, out);
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `g` must be null or a handle from this library that was not freed.
#[no_mangle]
pub unsafe extern "C" fn bw_graph_free(g: *mut BwGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bw_graph_vertex_count(g: *const BwGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.n())
}

/// Edge count, 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bw_graph_edge_count(g: *const BwGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.m())
}

/// Computes the branchwidth into `*width`. A negative or non-finite
/// `timeout_secs` means no limit.
///
/// # Safety
/// `g` must be a live handle and `width` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bw_solve(g: *const BwGraph, alg: BwAlgorithm, timeout_secs: f64, width: *mut usize) -> BwStatus {
    guard(|| {
        let h = graph(g)?;
        if width.is_null() {
            return Err(null("width"));
        }
        *width = h.solve(&options(alg, timeout_secs))?.width;
        Ok(())
    })
}

/// Decides whether the branchwidth is at most `k`; the answer goes to `*yes`.
///
/// # Safety
/// `g` must be a live handle and `yes` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bw_decide(g: *const BwGraph, alg: BwAlgorithm, k: usize, timeout_secs: f64, yes: *mut bool) -> BwStatus {
    guard(|| {
        let h = graph(g)?;
        if yes.is_null() {
            return Err(null("yes"));
        }
        *yes = h.decide(k, &options(alg, timeout_secs))?;
        Ok(())
    })
}

/// Computes the branchwidth and an optimal decomposition in the text
/// format read by `bw solve --check`. The text is stored in `*text` and must
/// be released with `bw_string_free`.
///
/// # Safety
/// `g` must be a live handle; `width` and `text` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bw_solve_decomposition(
    g: *const BwGraph,
    alg: BwAlgorithm,
    timeout_secs: f64,
    width: *mut usize,
    text: *mut *mut c_char,
) -> BwStatus {
    guard(|| {
        let h = graph(g)?;
        if width.is_null() {
            return Err(null("width"));
        }
        if text.is_null() {
            return Err(null("text"));
        }
        *text = ptr::null_mut();
        let sol = h.solve(&options(alg, timeout_secs))?;
        let s = CString::new(h.write_decomposition(&sol.decomposition)).map_err(|e| Failure(BwStatus::Invariant, e.to_string()))?;
        *width = sol.width;
        *text = s.into_raw();
        Ok(())
    })
}

/// Checks decomposition text against `g`; the width goes to `*width`.
/// Fails with `BW_STATUS_INVARIANT` if the text is not a decomposition of
/// every edge or its width exceeds `k`.
///
/// # Safety
/// `g` must be a live handle, `text` a NUL-terminated string and `width` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bw_check_decomposition(g: *const BwGraph, text: *const c_char, k: usize, width: *mut usize) -> BwStatus {
    guard(|| {
        let h = graph(g)?;
        if text.is_null() {
            return Err(null("text"));
        }
        if width.is_null() {
            return Err(null("width"));
        }
        let text = CStr::from_ptr(text).to_str().map_err(|e| Failure(BwStatus::InvalidArgument, format!("text is not UTF-8: {e}")))?;
        *width = h.check_decomposition_text(text, k)?;
        Ok(())
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library that was not freed.
#[no_mangle]
pub unsafe extern "C" fn bw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn bw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn bw_status_name(status: BwStatus) -> *const c_char {
    let s: &'static CStr = match status {
        BwStatus::Ok => c"ok",
        BwStatus::NullPointer => c"null pointer",
        BwStatus::InvalidArgument => c"invalid argument",
        BwStatus::Parse => c"parse error",
        BwStatus::InvalidInput => c"invalid input",
        BwStatus::TooLarge => c"too large",
        BwStatus::NotAGraph => c"not a graph",
        BwStatus::Timeout => c"timeout",
        BwStatus::Invariant => c"invariant violated",
        BwStatus::Io => c"i/o error",
        BwStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}
