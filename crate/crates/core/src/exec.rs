//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) [`Exec::Auto`] and [`Exec::Parallel`]
//! run on the rayon pool; without it every mode runs sequentially. Results are
//! always returned in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    #[default]
    Auto,
    Sequential,
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self != Exec::Sequential
    }
}

pub fn map<T, R, F>(mode: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

pub fn map_range<R, F>(mode: Exec, range: std::ops::Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return range.into_par_iter().map(f).collect();
    }
    let _ = mode;
    range.map(f).collect()
}

/// Splits `[lo, hi)` into fixed chunks; chunk boundaries do not depend on the
/// thread count, so chunked reductions are reproducible.
pub fn chunks(lo: usize, hi: usize, chunk: usize) -> Vec<(usize, usize)> {
    let chunk = chunk.max(1);
    (lo..hi)
        .step_by(chunk)
        .map(|a| (a, (a + chunk).min(hi)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_stable() {
        let v: Vec<usize> = (0..1000).collect();
        let a = map(Exec::Parallel, &v, |x| x * x);
        let b = map(Exec::Sequential, &v, |x| x * x);
        assert_eq!(a, b);
        assert_eq!(chunks(3, 10, 4), vec![(3, 7), (7, 10)]);
    }
}
