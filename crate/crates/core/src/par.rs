//! Execution policy for the data-parallel inner loops.
//!
//! With the `parallel` feature (default) the loops run on the rayon
//! global pool; without it every policy runs sequentially. Results are
//! identical either way: work is split by index and collected in order,
//! and reductions are performed sequentially over the ordered partials.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parallelism {
    Sequential,
    Parallel,
}

impl Default for Parallelism {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Parallelism::Parallel
        } else {
            Parallelism::Sequential
        }
    }
}

impl Parallelism {
    /// Whether this policy actually fans out in the current build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }
}

/// Below this many items the parallel path is not worth the fork.
pub(crate) const MIN_PARALLEL_LEN: usize = 1 << 10;

/// `(0..len).map(f).collect()`, possibly in parallel.
pub(crate) fn map_indexed<T, F>(policy: Parallelism, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if policy.is_parallel() {
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = policy;
    (0..len).map(f).collect()
}

/// Like [`map_indexed`] but skips the fan-out for short inputs.
pub(crate) fn map_indexed_min<T, F>(policy: Parallelism, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if len < MIN_PARALLEL_LEN {
        map_indexed(Parallelism::Sequential, len, f)
    } else {
        map_indexed(policy, len, f)
    }
}

/// Apply `f` to every chunk of `data` (chunk index, chunk).
pub(crate) fn for_each_chunk_mut<T, F>(policy: Parallelism, data: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if policy.is_parallel() {
        data.par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(i, c)| f(i, c));
        return;
    }
    let _ = policy;
    data.chunks_mut(chunk)
        .enumerate()
        .for_each(|(i, c)| f(i, c));
}

/// Element-wise update `data[i] = f(i, data[i])`.
pub(crate) fn update_indexed<T, F>(policy: Parallelism, data: &mut [T], f: F)
where
    T: Send + Copy,
    F: Fn(usize, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if policy.is_parallel() && data.len() >= MIN_PARALLEL_LEN {
        data.par_iter_mut()
            .enumerate()
            .for_each(|(i, v)| *v = f(i, *v));
        return;
    }
    let _ = policy;
    data.iter_mut().enumerate().for_each(|(i, v)| *v = f(i, *v));
}
