//! C ABI over `renyi-core`.
//!
//! Graphs cross the boundary as opaque `RenyiGraph` handles. Every fallible
//! function returns a `RenyiStatus`; on failure the message is available from
//! `renyi_last_error_message` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use renyi_core::asymptotics;
use renyi_core::generators::{self, HeteroErConfig, PowerLawConfig, SeedSpec};
use renyi_core::graph::{self, Graph};
use renyi_core::index::{self, IndexError, WeightSequence};
use renyi_core::kernels::Kernel;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenyiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    /// The input has no positive weight (for a graph: no edges).
    Degenerate = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenyiKernelKind {
    /// `f(x, y) = c`; the parameter is `c`.
    Constant = 0,
    /// `f(x, y) = e^{-κx} e^{-κy}`; the parameter is `κ`.
    Exponential = 1,
}

/// A graph, plus the truncated weights when it came from the power-law model.
pub struct RenyiGraph {
    graph: Graph,
    truncated: Option<Vec<f64>>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(RenyiStatus, String);

impl Failure {
    fn invalid(msg: impl ToString) -> Self {
        Failure(RenyiStatus::InvalidArgument, msg.to_string())
    }
}

impl From<IndexError> for Failure {
    fn from(e: IndexError) -> Self {
        let status = match e {
            IndexError::Empty | IndexError::AllZeroWeights => RenyiStatus::Degenerate,
            _ => RenyiStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RenyiStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RenyiStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            RenyiStatus::Panic
        }
    }
}

fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(RenyiStatus::NullPointer, "output pointer is null".into()));
    }
    unsafe { out.write(value) };
    Ok(())
}

unsafe fn graph_ref<'a>(g: *const RenyiGraph) -> Result<&'a RenyiGraph, Failure> {
    g.as_ref()
        .ok_or_else(|| Failure(RenyiStatus::NullPointer, "graph handle is null".into()))
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(RenyiStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure::invalid(format!("{what} is not valid UTF-8")))
}

fn make_kernel(kind: RenyiKernelKind, param: f64) -> Result<Kernel, Failure> {
    match kind {
        RenyiKernelKind::Constant => Kernel::constant(param),
        RenyiKernelKind::Exponential => Kernel::exponential_product(param),
    }
    .map_err(Failure::invalid)
}

fn into_handle(out: *mut *mut RenyiGraph, g: RenyiGraph) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(RenyiStatus::NullPointer, "output pointer is null".into()));
    }
    unsafe { out.write(Box::into_raw(Box::new(g))) };
    Ok(())
}

/// Message for the last failed call on this thread, or NULL.
///
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn renyi_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn renyi_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Rényi index of `len` nonnegative values.
///
/// # Safety
/// `values` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn renyi_index(values: *const f64, len: usize, alpha: f64, out: *mut f64) -> RenyiStatus {
    guard(|| {
        if values.is_null() && len > 0 {
            return Err(Failure(RenyiStatus::NullPointer, "values is null".into()));
        }
        let slice = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(values, len)
        };
        let r = index::renyi_index_of(slice, alpha)?;
        write_out(out, r)
    })
}

/// Parse edge-list text into a new graph handle.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn renyi_graph_parse(text: *const c_char, out: *mut *mut RenyiGraph) -> RenyiStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let parsed = graph::parse_edge_list(text).map_err(|e| Failure(RenyiStatus::Parse, e.to_string()))?;
        into_handle(
            out,
            RenyiGraph {
                graph: parsed.graph,
                truncated: None,
            },
        )
    })
}

/// Sample a heterogeneous Erdős–Rényi graph.
///
/// # Safety
/// `cell_id` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn renyi_graph_sample_hetero_er(
    n: usize,
    p: f64,
    kernel: RenyiKernelKind,
    kernel_param: f64,
    master_seed: u64,
    cell_id: *const c_char,
    replicate: u64,
    out: *mut *mut RenyiGraph,
) -> RenyiStatus {
    guard(|| {
        let cell_id = str_arg(cell_id, "cell_id")?;
        let kernel = make_kernel(kernel, kernel_param)?;
        let cfg = HeteroErConfig::new(n, p, kernel).map_err(Failure::invalid)?;
        let seed = SeedSpec::new(master_seed, cell_id, replicate);
        let graph = generators::sample_hetero_er(&cfg, &seed);
        into_handle(out, RenyiGraph { graph, truncated: None })
    })
}

/// Sample a power-law graph; the truncated weights are kept on the handle.
///
/// # Safety
/// `cell_id` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn renyi_graph_sample_power_law(
    n: usize,
    tau: f64,
    p: f64,
    master_seed: u64,
    cell_id: *const c_char,
    replicate: u64,
    out: *mut *mut RenyiGraph,
) -> RenyiStatus {
    guard(|| {
        let cell_id = str_arg(cell_id, "cell_id")?;
        let cfg = PowerLawConfig::new(n, tau, p).map_err(Failure::invalid)?;
        let seed = SeedSpec::new(master_seed, cell_id, replicate);
        let sample = generators::sample_power_law_graph(&cfg, &seed);
        into_handle(
            out,
            RenyiGraph {
                graph: sample.graph,
                truncated: Some(sample.truncated),
            },
        )
    })
}

/// Release a handle. NULL is ignored.
///
/// # Safety
/// `g` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn renyi_graph_free(g: *mut RenyiGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Node count, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn renyi_graph_node_count(g: *const RenyiGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.n())
}

/// Edge count, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn renyi_graph_edge_count(g: *const RenyiGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.edge_count())
}

/// Copy the degree sequence into `buf`, which must hold at least
/// `renyi_graph_node_count(g)` entries.
///
/// # Safety
/// `g` must be a live handle; `buf` must point to `len` writable `uint32_t`s.
#[no_mangle]
pub unsafe extern "C" fn renyi_graph_degrees(g: *const RenyiGraph, buf: *mut u32, len: usize) -> RenyiStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let ds = graph::degree_sequence(&g.graph);
        copy_into(ds.as_slice(), buf, len)
    })
}

/// Copy the truncated weights of a power-law graph into `buf`.
///
/// # Safety
/// `g` must be a live handle; `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn renyi_graph_truncated_weights(g: *const RenyiGraph, buf: *mut f64, len: usize) -> RenyiStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let w = g
            .truncated
            .as_deref()
            .ok_or_else(|| Failure::invalid("graph has no weights"))?;
        copy_into(w, buf, len)
    })
}

unsafe fn copy_into<T: Copy>(src: &[T], buf: *mut T, len: usize) -> Result<(), Failure> {
    if len < src.len() {
        return Err(Failure(
            RenyiStatus::BufferTooSmall,
            format!("buffer holds {len} entries, need {}", src.len()),
        ));
    }
    if src.is_empty() {
        return Ok(());
    }
    if buf.is_null() {
        return Err(Failure(RenyiStatus::NullPointer, "buffer is null".into()));
    }
    ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    Ok(())
}

/// Rényi index of the graph's degree sequence.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn renyi_graph_index(g: *const RenyiGraph, alpha: f64, out: *mut f64) -> RenyiStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let ds = graph::degree_sequence(&g.graph);
        let w = WeightSequence::from_degrees(&ds)?;
        let params = index::IndexParams::new(alpha)?;
        write_out(out, index::renyi_index(&w, params)?)
    })
}

fn theory(out: *mut f64, f: impl FnOnce() -> Result<f64, asymptotics::AsymptoticsError>) -> RenyiStatus {
    guard(|| {
        let v = f().map_err(Failure::invalid)?;
        write_out(out, v)
    })
}

/// Limit of the index for the exponential kernel.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn renyi_limit_exponential(alpha: f64, kappa: f64, out: *mut f64) -> RenyiStatus {
    theory(out, || asymptotics::limit_exponential(alpha, kappa))
}

/// `g(κ)` for the exponential kernel.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn renyi_g_kappa(kappa: f64, out: *mut f64) -> RenyiStatus {
    theory(out, || asymptotics::g_kappa(kappa))
}

/// `α = 1` limit `1 − e^{−g(κ)}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn renyi_limit_r1_exponential(kappa: f64, out: *mut f64) -> RenyiStatus {
    theory(out, || asymptotics::limit_r1_exponential(kappa))
}

/// Finite-n plug-in prediction from the kernel moments.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn renyi_plugin_prediction(
    kernel: RenyiKernelKind,
    kernel_param: f64,
    n: usize,
    alpha: f64,
    out: *mut f64,
) -> RenyiStatus {
    guard(|| {
        let k = make_kernel(kernel, kernel_param)?;
        let v = asymptotics::plugin_prediction(&k, n, alpha).map_err(Failure::invalid)?;
        write_out(out, v)
    })
}

/// `E[ω̃^k]` for Pareto(τ) weights truncated at `√n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn renyi_truncated_pareto_moment(n: usize, tau: f64, k: f64, out: *mut f64) -> RenyiStatus {
    theory(out, || asymptotics::truncated_pareto_moment(n, tau, k))
}

/// Rate `n^{τ/2 − 1}` for `1 − R₂` in the power-law model.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn renyi_powerlaw_gap_rate(n: usize, tau: f64, out: *mut f64) -> RenyiStatus {
    theory(out, || asymptotics::powerlaw_gap_rate(n, tau))
}
