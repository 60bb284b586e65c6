//! Batch evaluation, on the rayon pool when the `parallel` feature is on.
//!
//! Every helper returns results in input order, so output never depends on
//! the mode or on the number of threads.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    pub fn map_range<R, F>(self, range: Range<u64>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u64) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    /// The smallest index in `range` for which `f` yields a value.
    pub fn find_first<R, F>(self, range: Range<u64>, f: F) -> Option<(u64, R)>
    where
        R: Send,
        F: Fn(u64) -> Option<R> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().find_map_first(|i| f(i).map(|r| (i, r)));
        }
        range.into_iter().find_map(|i| f(i).map(|r| (i, r)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..500).collect();
        let sq = |x: &u64| x * x;
        assert_eq!(Execution::Sequential.map(&xs, sq), Execution::Parallel.map(&xs, sq));
        let pick = |i: u64| (i % 37 == 36 && i > 100).then_some(i * 2);
        assert_eq!(Execution::Sequential.find_first(0..1000, pick), Some((110, 220)));
        assert_eq!(Execution::Parallel.find_first(0..1000, pick), Some((110, 220)));
        assert_eq!(Execution::Parallel.find_first(0..10, pick), None);
    }
}
