//! Execution helpers: data-parallel maps with a sequential fallback.
//!
//! With the `parallel` feature (default) these fan out over rayon; without it
//! they run in place. Results are always collected in input order and any
//! floating-point reduction happens sequentially afterwards, so outputs are
//! bit-identical across thread counts and across the two build modes.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn map_slice<'a, T, U, F>(items: &'a [T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&'a T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_slice<'a, T, U, F>(items: &'a [T], f: F) -> Vec<U>
where
    F: Fn(&'a T) -> U,
{
    items.iter().map(f).collect()
}
