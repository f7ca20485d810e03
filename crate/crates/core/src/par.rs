//! Index-range scans with a rayon backend and a sequential fallback.
//!
//! Both backends expose the same functions; the crate root picks one with the
//! `parallel` feature. Every reduction is order-insensitive or resolves ties
//! by the lowest index, so output is identical for any thread count.

pub mod seq {
    pub fn map<T, F>(n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).map(f).collect()
    }

    pub fn find_first<F>(n: usize, pred: F) -> Option<usize>
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        (0..n).find(|&i| pred(i))
    }

    pub fn find_map_first<T, F>(n: usize, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(usize) -> Option<T> + Sync + Send,
    {
        (0..n).find_map(f)
    }

    pub fn all<F>(n: usize, pred: F) -> bool
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        (0..n).all(pred)
    }

    pub fn count<F>(n: usize, pred: F) -> usize
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        (0..n).filter(|&i| pred(i)).count()
    }

    pub fn join<A, B, RA, RB>(a: A, b: B) -> (RA, RB)
    where
        A: FnOnce() -> RA + Send,
        B: FnOnce() -> RB + Send,
        RA: Send,
        RB: Send,
    {
        (a(), b())
    }
}

#[cfg(feature = "parallel")]
pub mod rayon_backend {
    use rayon::prelude::*;

    // Below this many items the split overhead dominates.
    const MIN_LEN: usize = 64;

    pub fn map<T, F>(n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).into_par_iter().with_min_len(MIN_LEN).map(f).collect()
    }

    pub fn find_first<F>(n: usize, pred: F) -> Option<usize>
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        (0..n).into_par_iter().with_min_len(MIN_LEN).find_first(|&i| pred(i))
    }

    pub fn find_map_first<T, F>(n: usize, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(usize) -> Option<T> + Sync + Send,
    {
        (0..n).into_par_iter().with_min_len(MIN_LEN).find_map_first(f)
    }

    pub fn all<F>(n: usize, pred: F) -> bool
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        (0..n).into_par_iter().with_min_len(MIN_LEN).all(pred)
    }

    pub fn count<F>(n: usize, pred: F) -> usize
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        (0..n).into_par_iter().with_min_len(MIN_LEN).filter(|&i| pred(i)).count()
    }

    pub fn join<A, B, RA, RB>(a: A, b: B) -> (RA, RB)
    where
        A: FnOnce() -> RA + Send,
        B: FnOnce() -> RB + Send,
        RA: Send,
        RB: Send,
    {
        rayon::join(a, b)
    }
}

#[cfg(feature = "parallel")]
pub use rayon_backend::*;

#[cfg(not(feature = "parallel"))]
pub use seq::*;

/// Maps over a slice, preserving order.
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    map(items.len(), |i| f(&items[i]))
}

/// Finds the lowest `(i, j)` in row-major order with `pred(i, j)`.
pub fn find_first_pair<F>(n: usize, pred: F) -> Option<(usize, usize)>
where
    F: Fn(usize, usize) -> bool + Sync + Send,
{
    find_map_first(n, |i| (0..n).find(|&j| pred(i, j)).map(|j| (i, j)))
}

/// Finds the lowest `(i, j, k)` in row-major order with `pred(i, j, k)`.
pub fn find_first_triple<F>(n: usize, pred: F) -> Option<(usize, usize, usize)>
where
    F: Fn(usize, usize, usize) -> bool + Sync + Send,
{
    find_map_first(n, |i| {
        (0..n).find_map(|j| (0..n).find(|&k| pred(i, j, k)).map(|k| (i, j, k)))
    })
}
