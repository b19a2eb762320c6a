//! Fixed-shape parallel reductions.
//!
//! Index ranges are cut into leaves of [`LEAF`] consecutive indices. Each leaf
//! is summed pairwise, and leaf sums are combined by a pairwise tree over the
//! leaf index. The shape depends only on the length, never on the worker
//! count, so results are bit-identical however rayon schedules the leaves.

use std::ops::{Add, Range};

use rayon::prelude::*;

use crate::error::{Error, Result};

pub const LEAF: usize = 1024;

/// Runs `f` on a dedicated pool of `workers` threads.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Pairwise sum of a slice with a fixed split point at the midpoint.
pub fn pairwise<T>(items: &[T]) -> T
where
    T: Copy + Default + Add<Output = T>,
{
    match items.len() {
        0 => T::default(),
        1 => items[0],
        2 => items[0] + items[1],
        n => {
            let mid = n / 2;
            pairwise(&items[..mid]) + pairwise(&items[mid..])
        }
    }
}

/// Deterministic tree sum of `term(i)` over `range`.
pub fn tree_sum<T, F>(range: Range<u64>, term: F) -> Result<T>
where
    T: Copy + Default + Send + Sync + Add<Output = T>,
    F: Fn(u64) -> Result<T> + Sync,
{
    let len = range.end.saturating_sub(range.start);
    let leaves = len.div_ceil(LEAF as u64);
    let sums: Vec<T> = (0..leaves)
        .into_par_iter()
        .map(|leaf| {
            let lo = range.start + leaf * LEAF as u64;
            let hi = (lo + LEAF as u64).min(range.end);
            let mut buf = Vec::with_capacity((hi - lo) as usize);
            for i in lo..hi {
                buf.push(term(i)?);
            }
            Ok(pairwise(&buf))
        })
        .collect::<Result<_>>()?;
    Ok(pairwise(&sums))
}

/// Maps fixed-size chunks of `range` in parallel and returns the chunk
/// results in ascending order.
pub fn map_chunks<T, F>(range: Range<u64>, chunk: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(Range<u64>) -> Result<T> + Sync,
{
    let len = range.end.saturating_sub(range.start);
    let count = len.div_ceil(chunk);
    (0..count)
        .into_par_iter()
        .map(|c| {
            let lo = range.start + c * chunk;
            f(lo..(lo + chunk).min(range.end))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_sum_is_worker_independent() {
        let term = |i: u64| Ok(((i as f64) * 0.618_033_988_749_895).sin());
        let one = with_workers(1, || tree_sum(0..100_003, term)).unwrap().unwrap();
        let eight = with_workers(8, || tree_sum(0..100_003, term)).unwrap().unwrap();
        let f: f64 = one;
        assert_eq!(f.to_bits(), eight.to_bits());
    }

    #[test]
    fn empty_range_sums_to_default() {
        let s: f64 = tree_sum(5..5, |_| Ok(1.0)).unwrap();
        assert_eq!(s, 0.0);
    }

    #[test]
    fn map_chunks_preserves_order() {
        let v = map_chunks(1..11, 3, |r| Ok(r.start)).unwrap();
        assert_eq!(v, vec![1, 4, 7, 10]);
    }

    #[test]
    fn term_errors_propagate() {
        let r: Result<f64> = tree_sum(0..10, |i| {
            if i == 7 {
                Err(Error::InvalidParameter("boom".into()))
            } else {
                Ok(1.0)
            }
        });
        assert!(r.is_err());
    }
}
