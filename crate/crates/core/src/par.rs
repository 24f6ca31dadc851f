//! Sequential/parallel execution switch.
//!
//! Parallel work is always split into index chunks whose results are merged
//! in chunk order, so both modes produce identical output. Without the
//! `parallel` feature, [`Execution::Parallel`] runs sequentially.

use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    fn workers(self) -> usize {
        match self {
            Execution::Sequential => 1,
            #[cfg(feature = "parallel")]
            Execution::Parallel => rayon::current_num_threads(),
            #[cfg(not(feature = "parallel"))]
            Execution::Parallel => 1,
        }
    }
}

/// Splits `0..len` into contiguous ranges, a few per worker.
fn chunks(len: usize, workers: usize) -> Vec<Range<usize>> {
    if len == 0 {
        return Vec::new();
    }
    let pieces = if workers == 1 { 1 } else { (workers * 4).min(len) };
    let step = len.div_ceil(pieces);
    (0..len).step_by(step).map(|lo| lo..(lo + step).min(len)).collect()
}

/// Runs `f` on contiguous chunks of `0..len` and returns the results in order.
pub(crate) fn map_chunks<T, F>(exec: Execution, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<usize>) -> T + Sync + Send,
{
    let ranges = chunks(len, exec.workers());
    #[cfg(feature = "parallel")]
    if exec == Execution::Parallel && ranges.len() > 1 {
        use rayon::prelude::*;
        return ranges.into_par_iter().map(f).collect();
    }
    ranges.into_iter().map(f).collect()
}
