//! C ABI over `gwburn`.
//!
//! Distributions and trees are opaque heap handles created by `*_new`-style
//! functions and released with the matching `*_free`. Every fallible call
//! returns a [`GwbStatus`]; on failure a message is kept per thread and can be
//! read with [`gwb_last_error_message`]. Panics are caught at the boundary and
//! reported as `GWB_STATUS_PANIC`. Vertex indices are 0-based preorder
//! positions with the root at 0.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gwburn::burning::{
    bhat_exact, burning_number_exact, known_bounds, pair_lower_bound, scheme_upper_bound,
};
use gwburn::sampler::{default_max_attempts, sample_conditioned};
use gwburn::stats::DEFAULT_PAIR_CAP;
use gwburn::{Error, OffspringDistribution, PreorderDegreeSequence, RandomStream, Tree};

/// Offspring law handle.
pub struct GwbDistribution(OffspringDistribution);

/// Rooted ordered tree handle.
pub struct GwbTree(Tree);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GwbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    InvalidSequence = 3,
    CapExceeded = 4,
    IncompatibleSize = 5,
    RejectionLimit = 6,
    SourceAlreadyBurning = 7,
    InvariantViolation = 8,
    Parse = 9,
    Io = 10,
    BufferTooSmall = 11,
    Panic = 12,
}

/// Closed-form upper bounds on the burning number of any `n`-vertex
/// connected graph.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GwbKnownBounds {
    pub dfs_cycle: u64,
    pub bessy: u64,
    pub land_lu: u64,
    pub bastide: u64,
    pub min: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GwbStatus {
    match e {
        Error::InvalidParameter(_) => GwbStatus::InvalidParameter,
        Error::InvalidSequence(_) | Error::BadSum { .. } => GwbStatus::InvalidSequence,
        Error::CapExceeded { .. } => GwbStatus::CapExceeded,
        Error::IncompatibleSize { .. } => GwbStatus::IncompatibleSize,
        Error::RejectionLimitExceeded { .. } => GwbStatus::RejectionLimit,
        Error::SourceAlreadyBurning { .. } => GwbStatus::SourceAlreadyBurning,
        Error::InvariantViolation(_) => GwbStatus::InvariantViolation,
        Error::Parse(_) => GwbStatus::Parse,
        Error::Io(_) => GwbStatus::Io,
    }
}

fn fail(status: GwbStatus, message: impl Into<String>) -> GwbStatus {
    set_error(message.into());
    status
}

impl From<Error> for GwbStatus {
    fn from(e: Error) -> Self {
        fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, turning panics into `Panic` and clearing the error on success.
fn guard(f: impl FnOnce() -> Result<(), GwbStatus>) -> GwbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            GwbStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => fail(GwbStatus::Panic, "panic inside gwburn"),
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, GwbStatus> {
    // SAFETY: the caller passes a handle from this library or NULL.
    unsafe { p.as_ref() }.ok_or_else(|| fail(GwbStatus::NullPointer, format!("{what} is NULL")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), GwbStatus> {
    if out.is_null() {
        return Err(fail(GwbStatus::NullPointer, format!("{what} is NULL")));
    }
    // SAFETY: non-NULL and, per the contract, writable.
    unsafe { out.write(value) };
    Ok(())
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, GwbStatus> {
    if s.is_null() {
        return Err(fail(GwbStatus::NullPointer, format!("{what} is NULL")));
    }
    // SAFETY: non-NULL and NUL-terminated per the contract.
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| fail(GwbStatus::Parse, format!("{what} is not UTF-8")))
}

/// Message of the last failed call on this thread, or NULL after a success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn gwb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a law from `poisson`, `geometric`, `binomial:d`, `two_point:m` or
/// `custom:FILE`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gwb_distribution_new(
    spec: *const c_char,
    out: *mut *mut GwbDistribution,
) -> GwbStatus {
    guard(|| {
        let spec = unsafe { read_str(spec, "spec") }?;
        let dist = OffspringDistribution::from_spec(spec)?;
        unsafe { write_out(out, Box::into_raw(Box::new(GwbDistribution(dist))), "out") }
    })
}

/// # Safety
/// `dist` must be NULL or a handle from [`gwb_distribution_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gwb_distribution_free(dist: *mut GwbDistribution) {
    if !dist.is_null() {
        // SAFETY: created by Box::into_raw in gwb_distribution_new.
        drop(unsafe { Box::from_raw(dist) });
    }
}

/// Mean, variance and lattice span of the law.
///
/// # Safety
/// `dist` must be a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn gwb_distribution_moments(
    dist: *const GwbDistribution,
    mean: *mut f64,
    variance: *mut f64,
    span: *mut u32,
) -> GwbStatus {
    guard(|| {
        let d = &unsafe { borrow(dist, "dist") }?.0;
        unsafe {
            write_out(mean, d.mean(), "mean")?;
            write_out(variance, d.variance(), "variance")?;
            write_out(span, d.span(), "span")
        }
    })
}

/// Tree from a preorder degree sequence of length `len`.
///
/// # Safety
/// `degrees` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gwb_tree_from_degrees(
    degrees: *const u32,
    len: usize,
    out: *mut *mut GwbTree,
) -> GwbStatus {
    guard(|| {
        if degrees.is_null() && len > 0 {
            return Err(fail(GwbStatus::NullPointer, "degrees is NULL"));
        }
        let seq = if len == 0 {
            Vec::new()
        } else {
            // SAFETY: checked non-NULL; the caller guarantees `len` values.
            unsafe { std::slice::from_raw_parts(degrees, len) }.to_vec()
        };
        let tree = Tree::from_degrees(seq)?;
        unsafe { write_out(out, Box::into_raw(Box::new(GwbTree(tree))), "out") }
    })
}

/// Tree from whitespace-separated degrees, e.g. `"2 0 0"`.
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gwb_tree_parse(text: *const c_char, out: *mut *mut GwbTree) -> GwbStatus {
    guard(|| {
        let text = unsafe { read_str(text, "text") }?;
        let seq: PreorderDegreeSequence = text.trim().parse()?;
        let tree = Tree::from_degrees(seq)?;
        unsafe { write_out(out, Box::into_raw(Box::new(GwbTree(tree))), "out") }
    })
}

/// Exact draw of the tree conditioned on `n` vertices from stream
/// `(seed, stream)`. `max_attempts = 0` selects the default budget.
/// `attempts` may be NULL.
///
/// # Safety
/// `dist` must be a live handle; `out` must be writable; `attempts` must be
/// NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn gwb_tree_sample(
    dist: *const GwbDistribution,
    n: usize,
    seed: u64,
    stream: u64,
    max_attempts: u64,
    out: *mut *mut GwbTree,
    attempts: *mut u64,
) -> GwbStatus {
    guard(|| {
        let d = &unsafe { borrow(dist, "dist") }?.0;
        let budget = if max_attempts == 0 {
            default_max_attempts(n)
        } else {
            max_attempts
        };
        let mut rng = RandomStream::new(seed, stream);
        let sample = sample_conditioned(d, n, &mut rng, budget)?;
        if !attempts.is_null() {
            unsafe { attempts.write(sample.attempts) };
        }
        unsafe { write_out(out, Box::into_raw(Box::new(GwbTree(sample.tree))), "out") }
    })
}

/// # Safety
/// `tree` must be NULL or a live tree handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gwb_tree_free(tree: *mut GwbTree) {
    if !tree.is_null() {
        // SAFETY: created by Box::into_raw in this crate.
        drop(unsafe { Box::from_raw(tree) });
    }
}

/// Vertex count, height and diameter.
///
/// # Safety
/// `tree` must be a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn gwb_tree_shape(
    tree: *const GwbTree,
    n: *mut usize,
    height: *mut usize,
    diameter: *mut usize,
) -> GwbStatus {
    guard(|| {
        let t = &unsafe { borrow(tree, "tree") }?.0;
        unsafe {
            write_out(n, t.n(), "n")?;
            write_out(height, t.height(), "height")?;
            write_out(diameter, t.diameter(), "diameter")
        }
    })
}

/// Copies the preorder degree sequence into `buf`. `len` receives the
/// sequence length even when `capacity` is too small (status
/// `GWB_STATUS_BUFFER_TOO_SMALL`), so callers can size a second call.
///
/// # Safety
/// `buf` must hold `capacity` writable values (or be NULL with capacity 0);
/// `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gwb_tree_degrees(
    tree: *const GwbTree,
    buf: *mut u32,
    capacity: usize,
    len: *mut usize,
) -> GwbStatus {
    guard(|| {
        let t = &unsafe { borrow(tree, "tree") }?.0;
        let degrees = t.degrees().as_slice();
        unsafe { write_out(len, degrees.len(), "len") }?;
        copy_into(degrees, buf, capacity)
    })
}

fn copy_into<T: Copy>(values: &[T], buf: *mut T, capacity: usize) -> Result<(), GwbStatus> {
    if values.len() > capacity {
        return Err(fail(
            GwbStatus::BufferTooSmall,
            format!("need {} slots, got {capacity}", values.len()),
        ));
    }
    if values.is_empty() {
        return Ok(());
    }
    if buf.is_null() {
        return Err(fail(GwbStatus::NullPointer, "buf is NULL"));
    }
    // SAFETY: buf holds at least `capacity >= values.len()` slots.
    unsafe { ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len()) };
    Ok(())
}

/// Smallest `k` such that `k` balls of radius `k` cover the tree.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gwb_bhat(tree: *const GwbTree, out: *mut usize) -> GwbStatus {
    guard(|| {
        let t = &unsafe { borrow(tree, "tree") }?.0;
        unsafe { write_out(out, bhat_exact(t).0, "out") }
    })
}

/// Exact burning number for trees of at most `node_cap` (and 64) vertices.
/// The witness schedule is copied to `schedule` (`schedule_len` receives its
/// length, which may be one less than the burning number when the last
/// round only spreads). `schedule` may be NULL with capacity 0.
///
/// # Safety
/// `tree` must be a live handle; `out` and `schedule_len` must be writable;
/// `schedule` must hold `capacity` writable values.
#[no_mangle]
pub unsafe extern "C" fn gwb_burning_number_exact(
    tree: *const GwbTree,
    node_cap: usize,
    out: *mut usize,
    schedule: *mut usize,
    capacity: usize,
    schedule_len: *mut usize,
) -> GwbStatus {
    guard(|| {
        let t = &unsafe { borrow(tree, "tree") }?.0;
        let (b, witness) = burning_number_exact(t, node_cap)?;
        unsafe {
            write_out(out, b, "out")?;
            write_out(schedule_len, witness.len(), "schedule_len")?;
        }
        if capacity > 0 || !schedule.is_null() {
            copy_into(&witness.sources, schedule, capacity)?;
        }
        Ok(())
    })
}

/// `4k` for the first `k` with `min_j |C_k^j| <= 2k - 1`.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gwb_scheme_upper_bound(
    tree: *const GwbTree,
    out: *mut usize,
) -> GwbStatus {
    guard(|| {
        let t = &unsafe { borrow(tree, "tree") }?.0;
        unsafe { write_out(out, scheme_upper_bound(t).bound, "out") }
    })
}

/// Certified `k` of the pair-count lower bound (`b >= k + 1`). `pair_cap = 0`
/// selects the default work cap.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gwb_pair_lower_bound(
    tree: *const GwbTree,
    pair_cap: u64,
    out: *mut usize,
) -> GwbStatus {
    guard(|| {
        let t = &unsafe { borrow(tree, "tree") }?.0;
        let cap = if pair_cap == 0 {
            DEFAULT_PAIR_CAP
        } else {
            pair_cap
        };
        unsafe { write_out(out, pair_lower_bound(t, cap)?.k, "out") }
    })
}

/// Closed-form bounds for `n >= 2` vertices.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gwb_known_bounds(n: u64, out: *mut GwbKnownBounds) -> GwbStatus {
    guard(|| {
        if n < 2 {
            return Err(fail(
                GwbStatus::InvalidParameter,
                "known bounds need n >= 2",
            ));
        }
        let k = known_bounds(n);
        let value = GwbKnownBounds {
            dfs_cycle: k.dfs_cycle,
            bessy: k.bessy,
            land_lu: k.land_lu,
            bastide: k.bastide,
            min: k.min(),
        };
        unsafe { write_out(out, value, "out") }
    })
}
