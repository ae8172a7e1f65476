//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Execution::Parallel`] runs on
//! the rayon pool; without it every strategy runs sequentially. Results never
//! depend on the strategy: maps keep input order and searches return the
//! smallest matching index.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
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
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// `items.iter().map(f).collect()`, order preserved.
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

    /// `(0..n).map(f).collect()`, order preserved.
    pub fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// The first `i < n` (by index) for which `f` returns `Some`.
    pub fn find_first<R, F>(self, n: usize, f: F) -> Option<(usize, R)>
    where
        R: Send,
        F: Fn(usize) -> Option<R> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n)
                .into_par_iter()
                .find_map_first(|i| f(i).map(|r| (i, r)));
        }
        (0..n).find_map(|i| f(i).map(|r| (i, r)))
    }

    /// Sum of `f(i)` over `0..n`.
    pub fn sum<F>(self, n: usize, f: F) -> u64
    where
        F: Fn(usize) -> u64 + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(f).sum();
        }
        (0..n).map(f).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        for e in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(e.map(&xs, |x| x * 2)[999], 1998);
            assert_eq!(
                e.find_first(1000, |i| (i % 7 == 6 && i > 100).then_some(i)),
                Some((104, 104))
            );
            assert_eq!(e.sum(10, |i| i as u64), 45);
            assert_eq!(e.map_range(3, |i| i), vec![0, 1, 2]);
        }
    }
}
