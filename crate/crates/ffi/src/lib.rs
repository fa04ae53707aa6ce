//! C interface to `talpha`.
//!
//! Every function returns a [`TalphaStatus`]. On failure the message of the
//! most recent error on the calling thread is available through
//! [`talpha_last_error`]. Objects are opaque and released with their `_free`
//! function. Vertex ids are 0-indexed.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use talpha::io::parse_gr;
use talpha::mwis::{mwis_td, STATE_GUARD};
use talpha::structures::{check_class, Budget, Verdict};
use talpha::treedec::{ta_pipeline, TdStats, TreeDecomposition};
use talpha::weights::Rational;
use talpha::{Error, Graph};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TalphaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Format = 3,
    InvalidGraph = 4,
    NotInClass = 5,
    TooLarge = 6,
    AssertionFailed = 7,
    OracleFailure = 8,
    BudgetExhausted = 9,
    Internal = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TalphaVerdict {
    In = 0,
    Out = 1,
    Unknown = 2,
}

/// Opaque graph.
pub struct TalphaGraph(Graph);

/// Opaque tree decomposition together with its statistics.
pub struct TalphaTd {
    td: TreeDecomposition,
    stats: TdStats,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> TalphaStatus {
    match e {
        Error::Format { .. } | Error::Io(_) | Error::Json(_) => TalphaStatus::Format,
        Error::InvalidGraph(_) => TalphaStatus::InvalidGraph,
        Error::Weight(_) | Error::BadParams(_) => TalphaStatus::InvalidArgument,
        Error::DiamondPresent(_) | Error::NotC4Free(_) | Error::NotInClass(_) => {
            TalphaStatus::NotInClass
        }
        Error::TooLarge { .. } | Error::StateBlowup { .. } | Error::CoverBudgetExceeded { .. } => {
            TalphaStatus::TooLarge
        }
        Error::AssertionFailed { .. }
        | Error::VerificationFailed(_)
        | Error::PropertyViolation(_) => TalphaStatus::AssertionFailed,
        Error::OracleFailure(_) | Error::Unsolvable(_) => TalphaStatus::OracleFailure,
        Error::BudgetExhausted => TalphaStatus::BudgetExhausted,
        _ => TalphaStatus::Internal,
    }
}

fn fail(status: TalphaStatus, msg: impl Into<String>) -> TalphaStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, turning errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), TalphaStatus>) -> TalphaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TalphaStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(TalphaStatus::Internal, msg)
        }
    }
}

fn lift<T>(r: talpha::Result<T>) -> Result<T, TalphaStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, TalphaStatus> {
    p.as_ref()
        .ok_or_else(|| fail(TalphaStatus::NullPointer, "null pointer argument"))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, TalphaStatus> {
    p.as_mut()
        .ok_or_else(|| fail(TalphaStatus::NullPointer, "null output pointer"))
}

/// Copies the last error message of this thread into `buf` (nul-terminated,
/// truncated to `cap`). Returns the full message length without the nul, or 0
/// when there is no error.
///
/// # Safety
/// `buf` must be null or point to `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn talpha_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| match &*e.borrow() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes();
            if !buf.is_null() && cap > 0 {
                let k = bytes.len().min(cap - 1);
                ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, k);
                *buf.add(k) = 0;
            }
            bytes.len()
        }
    })
}

/// Builds a graph on `n` vertices from `m` edges given as `2m` vertex ids.
///
/// # Safety
/// `edges` must point to `2 * m` readable values; `graph` must be writable.
#[no_mangle]
pub unsafe extern "C" fn talpha_graph_new(
    n: usize,
    edges: *const u32,
    m: usize,
    graph: *mut *mut TalphaGraph,
) -> TalphaStatus {
    guard(|| {
        let slot = out(graph)?;
        let raw: &[u32] = if m == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(deref(edges)?, 2 * m)
        };
        let pairs: Vec<(usize, usize)> = raw
            .chunks(2)
            .map(|p| (p[0] as usize, p[1] as usize))
            .collect();
        let g = lift(Graph::from_edges(n, &pairs))?;
        *slot = Box::into_raw(Box::new(TalphaGraph(g)));
        Ok(())
    })
}

/// Parses a graph in the `p edge` text format.
///
/// # Safety
/// `text` must be a nul-terminated string; `graph` must be writable.
#[no_mangle]
pub unsafe extern "C" fn talpha_graph_parse(
    text: *const c_char,
    graph: *mut *mut TalphaGraph,
) -> TalphaStatus {
    guard(|| {
        let slot = out(graph)?;
        let s = CStr::from_ptr(deref(text)?)
            .to_str()
            .map_err(|_| fail(TalphaStatus::Format, "text is not UTF-8"))?;
        let g = lift(parse_gr(s))?;
        *slot = Box::into_raw(Box::new(TalphaGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `graph` must be null or come from a `talpha_graph_*` constructor, and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn talpha_graph_free(graph: *mut TalphaGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be a live graph; `n` and `m` must be writable.
#[no_mangle]
pub unsafe extern "C" fn talpha_graph_size(
    graph: *const TalphaGraph,
    n: *mut usize,
    m: *mut usize,
) -> TalphaStatus {
    guard(|| {
        let g = &deref(graph)?.0;
        *out(n)? = g.n();
        *out(m)? = g.m();
        Ok(())
    })
}

fn verdict(v: &Verdict) -> TalphaVerdict {
    match v {
        Verdict::In => TalphaVerdict::In,
        Verdict::Out(_) => TalphaVerdict::Out,
        Verdict::Unknown => TalphaVerdict::Unknown,
    }
}

/// Decides membership in C and C*. `budget_ms` of 0 means unlimited.
///
/// # Safety
/// `graph` must be a live graph; `c` and `c_star` must be writable.
#[no_mangle]
pub unsafe extern "C" fn talpha_check_class(
    graph: *const TalphaGraph,
    budget_ms: u64,
    c: *mut TalphaVerdict,
    c_star: *mut TalphaVerdict,
) -> TalphaStatus {
    guard(|| {
        let g = &deref(graph)?.0;
        let b = if budget_ms == 0 {
            Budget::UNLIMITED
        } else {
            Budget::millis(budget_ms)
        };
        let r = check_class(g, b);
        *out(c)? = verdict(&r.c);
        *out(c_star)? = verdict(&r.c_star);
        Ok(())
    })
}

/// Builds a tree decomposition of a graph in C.
///
/// # Safety
/// `graph` must be a live graph; `td` must be writable.
#[no_mangle]
pub unsafe extern "C" fn talpha_decompose(
    graph: *const TalphaGraph,
    td: *mut *mut TalphaTd,
) -> TalphaStatus {
    guard(|| {
        let g = &deref(graph)?.0;
        let slot = out(td)?;
        let r = lift(ta_pipeline(g))?;
        *slot = Box::into_raw(Box::new(TalphaTd {
            td: r.td,
            stats: r.stats,
        }));
        Ok(())
    })
}

/// # Safety
/// `td` must be null or come from [`talpha_decompose`], and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn talpha_td_free(td: *mut TalphaTd) {
    if !td.is_null() {
        drop(Box::from_raw(td));
    }
}

/// Bag count, width, largest bag independence and largest bag clique cover.
///
/// # Safety
/// `td` must be live; every output pointer must be writable.
#[no_mangle]
pub unsafe extern "C" fn talpha_td_stats(
    td: *const TalphaTd,
    bags: *mut usize,
    width: *mut usize,
    independence: *mut usize,
    cover: *mut usize,
) -> TalphaStatus {
    guard(|| {
        let t = deref(td)?;
        *out(bags)? = t.td.len();
        *out(width)? = t.stats.width;
        *out(independence)? = t.stats.independence;
        *out(cover)? = t.stats.cover;
        Ok(())
    })
}

/// Writes bag `index` into `buf` (up to `cap` ids) and its size into `len`.
/// Returns `InvalidArgument` when the bag does not fit; `len` is still set.
///
/// # Safety
/// `td` must be live; `buf` must point to `cap` writable values; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn talpha_td_bag(
    td: *const TalphaTd,
    index: usize,
    buf: *mut u32,
    cap: usize,
    len: *mut usize,
) -> TalphaStatus {
    guard(|| {
        let t = deref(td)?;
        let bag = t.td.bags.get(index).ok_or_else(|| {
            fail(
                TalphaStatus::InvalidArgument,
                format!("bag {index} out of range"),
            )
        })?;
        *out(len)? = bag.len();
        if bag.len() > cap {
            return Err(fail(
                TalphaStatus::InvalidArgument,
                "buffer too small for bag",
            ));
        }
        if !bag.is_empty() {
            let dst = std::slice::from_raw_parts_mut(out(buf)?, cap);
            for (d, v) in dst.iter_mut().zip(bag.iter()) {
                *d = v as u32;
            }
        }
        Ok(())
    })
}

/// Maximum weight independent set over `td` with integer weights. The chosen
/// vertices go to `set_out` (capacity n) as a 0/1 indicator and the optimum to `value`.
///
/// # Safety
/// `graph` and `td` must be live; `weights` and `set_out` must hold n values; `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn talpha_mwis(
    graph: *const TalphaGraph,
    td: *const TalphaTd,
    weights: *const u64,
    set_out: *mut u8,
    value: *mut u64,
) -> TalphaStatus {
    guard(|| {
        let g = &deref(graph)?.0;
        let t = deref(td)?;
        let n = g.n();
        let w: Vec<Rational> = if n == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(deref(weights)?, n)
                .iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect()
        };
        let value = out(value)?;
        let r = lift(mwis_td(g, &w, &t.td, STATE_GUARD))?;
        *value = r
            .value
            .to_integer()
            .try_into()
            .map_err(|_| fail(TalphaStatus::TooLarge, "optimum does not fit in 64 bits"))?;
        if n > 0 {
            let dst = std::slice::from_raw_parts_mut(out(set_out)?, n);
            for (v, d) in dst.iter_mut().enumerate() {
                *d = r.set.contains(v) as u8;
            }
        }
        Ok(())
    })
}
