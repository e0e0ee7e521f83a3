//! Trial-level data parallelism.
//!
//! With the `parallel` feature (default) batches run on the rayon pool;
//! without it, or with [`Mode::Sequential`], they run in order on the calling
//! thread. Results are always returned in index order, so both paths produce
//! identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Result;
use crate::tower::{evaluate, QuotientValue, ReprPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    Sequential,
    #[default]
    Parallel,
}

impl Mode {
    /// Whether this mode actually runs on several threads in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Mode::Parallel
    }
}

/// `(0..count).map(f)`, possibly in parallel, collected in index order.
pub fn map_indexed<T, F>(mode: Mode, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return (0..count).into_par_iter().map(f).collect();
    }
    let _ = mode;
    (0..count).map(f).collect()
}

/// Evaluates the quotient map on every point.
pub fn evaluate_batch(points: &[ReprPoint], mode: Mode) -> Vec<Result<QuotientValue>> {
    map_indexed(mode, points.len(), |i| evaluate(&points[i]))
}
