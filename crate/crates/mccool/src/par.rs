//! Data-parallel helpers.
//!
//! With the `parallel` feature (default) the bulk operations (relation
//! verification, per-degree rank computations, exhaustive word searches,
//! randomized suites) run on rayon.  Without it, or after
//! [`set_parallel_enabled`]`(false)`, the same code runs sequentially.
//! Results are independent of the schedule: every helper preserves input
//! order.

use std::sync::atomic::{AtomicBool, Ordering};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

static PARALLEL: AtomicBool = AtomicBool::new(true);

/// Runtime switch for rayon parallelism; a no-op without the `parallel`
/// feature.  Used by the benchmarks to compare both code paths.
pub fn set_parallel_enabled(enabled: bool) {
    PARALLEL.store(enabled, Ordering::Relaxed);
}

pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel") && PARALLEL.load(Ordering::Relaxed)
}

/// Order-preserving map over a vector.
pub(crate) fn map_vec<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel_enabled() {
        return items.into_par_iter().map(f).collect();
    }
    items.into_iter().map(f).collect()
}

/// Order-preserving map over an index range.
pub(crate) fn map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel_enabled() {
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}
