//! C ABI for the diffnet toolkit.
//!
//! Networks cross the boundary as opaque [`DnNetwork`] handles created by one
//! of the `dn_network_*` constructors and released with [`dn_network_free`].
//! Every fallible call returns a [`DnStatus`]; on failure a description is
//! available from [`dn_last_error`] until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use diffnet::graph::NetworkBuilder;
use diffnet::graphlet::{count_orbits, ORBITS};
use diffnet::io::{load_network, parse_edge_list, NetworkFormat};
use diffnet::ml::metrics::auc;
use diffnet::ml::stats::ks_two_sample;
use diffnet::portrait::{portrait_divergence_with, PathMode};
use diffnet::{dgcd13, extract_features, DiffusionNetwork, Error};

/// Number of values written by `dn_features`.
pub const DN_FEATURE_COUNT: usize = 7;

/// Number of orbit columns per node written by `dn_orbit_counts`.
pub const DN_ORBIT_COUNT: usize = 13;

const _: () = assert!(DN_ORBIT_COUNT == ORBITS);

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    EmptyGraph = 4,
    InvalidArgument = 5,
    Io = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Opaque network handle.
pub struct DnNetwork {
    inner: DiffusionNetwork,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DnStatus {
    match e {
        Error::EmptyGraph | Error::EmptySample => DnStatus::EmptyGraph,
        Error::Format { .. } | Error::SelfLoop { .. } | Error::MalformedEvent { .. } | Error::Csv(_) | Error::Json(_) => DnStatus::Parse,
        Error::Io { .. } => DnStatus::Io,
        _ => DnStatus::InvalidArgument,
    }
}

fn fail(status: DnStatus, message: impl Into<String>) -> DnStatus {
    set_error(message.into());
    status
}

/// Runs `f`, records any error or panic, and converts the outcome to a status.
fn guard(f: impl FnOnce() -> Result<(), DnStatus>) -> DnStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DnStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(DnStatus::Panic, "internal panic"),
    }
}

fn lift<T>(r: diffnet::Result<T>) -> Result<T, DnStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn handle<'a>(h: *const DnNetwork) -> Result<&'a DiffusionNetwork, DnStatus> {
    h.as_ref()
        .map(|n| &n.inner)
        .ok_or_else(|| fail(DnStatus::NullPointer, "null network handle"))
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, DnStatus> {
    if s.is_null() {
        return Err(fail(DnStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|e| fail(DnStatus::InvalidUtf8, e.to_string()))
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], DnStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(fail(DnStatus::NullPointer, "null buffer"));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn emit(out: *mut *mut DnNetwork, net: DiffusionNetwork) -> Result<(), DnStatus> {
    *out = Box::into_raw(Box::new(DnNetwork { inner: net }));
    Ok(())
}

/// Parses a tab- or whitespace-separated edge list (`src dst` per line,
/// `#` comments allowed) into a new network.
///
/// # Safety
/// `edges` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dn_network_from_edge_list(edges: *const c_char, out: *mut *mut DnNetwork) -> DnStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(DnStatus::NullPointer, "null output pointer"));
        }
        let body = text(edges)?;
        let mut builder = NetworkBuilder::new();
        lift(parse_edge_list(body.as_bytes(), "<edge list>", &mut builder))?;
        emit(out, builder.build(""))
    })
}

/// Builds a network over nodes `0..n_nodes` from parallel `src`/`dst`
/// arrays of length `n_edges`. Duplicate edges are merged; self-loops and
/// out-of-range indices are rejected.
///
/// # Safety
/// `src` and `dst` must point to `n_edges` readable values and `out` must be
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dn_network_from_edges(
    n_nodes: usize,
    src: *const u32,
    dst: *const u32,
    n_edges: usize,
    out: *mut *mut DnNetwork,
) -> DnStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(DnStatus::NullPointer, "null output pointer"));
        }
        let (s, d) = (slice(src, n_edges)?, slice(dst, n_edges)?);
        if n_nodes == 0 {
            return Err(fail(DnStatus::EmptyGraph, "network has no nodes"));
        }
        for (i, (&u, &v)) in s.iter().zip(d).enumerate() {
            if u as usize >= n_nodes || v as usize >= n_nodes {
                return Err(fail(DnStatus::InvalidArgument, format!("edge {i} ({u}, {v}) outside 0..{n_nodes}")));
            }
            if u == v {
                return Err(fail(DnStatus::InvalidArgument, format!("edge {i} is a self-loop on {u}")));
            }
        }
        emit(
            out,
            DiffusionNetwork::from_indexed(n_nodes, s.iter().zip(d).map(|(&u, &v)| (u as usize, v as usize))),
        )
    })
}

/// Loads an edge-list file (and its `.nodes` manifest, when present).
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dn_network_load(path: *const c_char, out: *mut *mut DnNetwork) -> DnStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(DnStatus::NullPointer, "null output pointer"));
        }
        let p = text(path)?;
        emit(out, lift(load_network(Path::new(p), NetworkFormat::EdgeList))?)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `network` must come from a `dn_network_*` constructor and not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn dn_network_free(network: *mut DnNetwork) {
    if !network.is_null() {
        drop(Box::from_raw(network));
    }
}

/// Node count, or 0 for a null handle.
///
/// # Safety
/// `network` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dn_network_node_count(network: *const DnNetwork) -> usize {
    network.as_ref().map_or(0, |n| n.inner.node_count())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `network` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dn_network_edge_count(network: *const DnNetwork) -> usize {
    network.as_ref().map_or(0, |n| n.inner.edge_count())
}

/// Writes the seven global features in the order
/// scc, lscc, wcc, lwcc, dwcc, cc, kc.
///
/// # Safety
/// `out` must point to `DN_FEATURE_COUNT` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn dn_features(network: *const DnNetwork, out: *mut f64) -> DnStatus {
    guard(|| {
        let net = handle(network)?;
        if out.is_null() {
            return Err(fail(DnStatus::NullPointer, "null output buffer"));
        }
        let f = lift(extract_features(net))?;
        ptr::copy_nonoverlapping(f.to_array().as_ptr(), out, DN_FEATURE_COUNT);
        Ok(())
    })
}

/// Writes per-node orbit counts row-major (`node_count * DN_ORBIT_COUNT`
/// values). `capacity` is the length of `out` in elements.
///
/// # Safety
/// `out` must point to `capacity` writable values.
#[no_mangle]
pub unsafe extern "C" fn dn_orbit_counts(network: *const DnNetwork, out: *mut u64, capacity: usize) -> DnStatus {
    guard(|| {
        let net = handle(network)?;
        let needed = net.node_count() * DN_ORBIT_COUNT;
        if capacity < needed {
            return Err(fail(DnStatus::BufferTooSmall, format!("need {needed} values, got {capacity}")));
        }
        if out.is_null() {
            return Err(fail(DnStatus::NullPointer, "null output buffer"));
        }
        let counts = count_orbits(net);
        for (i, row) in counts.rows().iter().enumerate() {
            ptr::copy_nonoverlapping(row.as_ptr(), out.add(i * DN_ORBIT_COUNT), DN_ORBIT_COUNT);
        }
        Ok(())
    })
}

/// Graphlet correlation distance over the 13 directed orbits.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dn_dgcd13(a: *const DnNetwork, b: *const DnNetwork, out: *mut f64) -> DnStatus {
    guard(|| {
        let (a, b) = (handle(a)?, handle(b)?);
        if out.is_null() {
            return Err(fail(DnStatus::NullPointer, "null output pointer"));
        }
        *out = dgcd13(a, b);
        Ok(())
    })
}

/// Portrait divergence in [0, 1]. Nonzero `undirected` ignores edge
/// direction when measuring path lengths.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dn_portrait_divergence(a: *const DnNetwork, b: *const DnNetwork, undirected: c_int, out: *mut f64) -> DnStatus {
    guard(|| {
        let (a, b) = (handle(a)?, handle(b)?);
        if out.is_null() {
            return Err(fail(DnStatus::NullPointer, "null output pointer"));
        }
        let mode = if undirected != 0 {
            PathMode::Undirected
        } else {
            PathMode::Directed
        };
        *out = portrait_divergence_with(a, b, mode);
        Ok(())
    })
}

/// Area under the ROC curve. `labels` holds 0 (negative) or nonzero
/// (positive) per score.
///
/// # Safety
/// `scores` and `labels` must point to `n` readable values; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dn_roc_auc(scores: *const f64, labels: *const u8, n: usize, out: *mut f64) -> DnStatus {
    guard(|| {
        let (s, l) = (slice(scores, n)?, slice(labels, n)?);
        if out.is_null() {
            return Err(fail(DnStatus::NullPointer, "null output pointer"));
        }
        let labels: Vec<bool> = l.iter().map(|&x| x != 0).collect();
        *out = lift(auc(s, &labels))?;
        Ok(())
    })
}

/// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value.
///
/// # Safety
/// `xs`/`ys` must point to `nx`/`ny` readable values; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn dn_ks_two_sample(
    xs: *const f64,
    nx: usize,
    ys: *const f64,
    ny: usize,
    statistic: *mut f64,
    p_value: *mut f64,
) -> DnStatus {
    guard(|| {
        let (x, y) = (slice(xs, nx)?, slice(ys, ny)?);
        if statistic.is_null() || p_value.is_null() {
            return Err(fail(DnStatus::NullPointer, "null output pointer"));
        }
        let r = lift(ks_two_sample(x, y))?;
        *statistic = r.statistic;
        *p_value = r.p_value;
        Ok(())
    })
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next `dn_*` call on the same thread.
#[no_mangle]
pub extern "C" fn dn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
