//! Sequential/parallel dispatch for the independent-query loops.
//!
//! With the `parallel` feature (default) [`Execution::Parallel`] maps over
//! rayon's pool; without it both variants run on the calling thread. Results
//! always come back in input order.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
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
    pub fn map<T, R, Fun>(self, items: &[T], f: Fun) -> Vec<R>
    where
        T: Sync,
        R: Send,
        Fun: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }

    /// Maps over `0..n` in contiguous chunks, concatenating chunk results in
    /// index order.
    pub fn map_chunks<R, Fun>(self, n: u64, chunk: u64, f: Fun) -> Vec<R>
    where
        R: Send,
        Fun: Fn(std::ops::Range<u64>) -> Vec<R> + Sync + Send,
    {
        let chunk = chunk.max(1);
        let ranges: Vec<std::ops::Range<u64>> = (0..n.div_ceil(chunk))
            .map(|c| c * chunk..((c + 1) * chunk).min(n))
            .collect();
        self.map(&ranges, |r| f(r.clone())).into_iter().flatten().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_preserve_order() {
        let xs: Vec<u32> = (0..1000).collect();
        let seq = Execution::Sequential.map(&xs, |x| x * 3);
        let par = Execution::Parallel.map(&xs, |x| x * 3);
        assert_eq!(seq, par);
        let chunks = Execution::Parallel.map_chunks(1003, 10, |r| r.collect());
        assert_eq!(chunks, (0..1003).collect::<Vec<u64>>());
    }
}
