//! Switch between the rayon-backed and the single-threaded code paths.
//!
//! Every hot loop in the crate is written once as a map/reduce over a slice
//! and dispatched through [`Execution`]. With the `parallel` feature disabled
//! `Execution::Parallel` silently degrades to the sequential path, so callers
//! never need to gate on the feature themselves.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run work on more than one thread.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    /// The strategy actually used once feature availability is accounted for.
    pub fn effective(self) -> Execution {
        if Self::parallel_available() {
            self
        } else {
            Execution::Sequential
        }
    }

    /// Fold each chunk of `items` into an accumulator, then merge the
    /// accumulators. `merge` must be associative and commutative up to the
    /// equality the caller cares about.
    pub(crate) fn map_reduce<T, A, Id, Fold, Merge>(
        self,
        items: &[T],
        chunk: usize,
        identity: Id,
        fold: Fold,
        merge: Merge,
    ) -> A
    where
        T: Sync,
        A: Send,
        Id: Fn() -> A + Sync + Send,
        Fold: Fn(A, &T) -> A + Sync + Send,
        Merge: Fn(A, A) -> A + Sync + Send,
    {
        #[cfg(not(feature = "parallel"))]
        let _ = (chunk, merge);
        match self.effective() {
            Execution::Sequential => items.iter().fold(identity(), &fold),
            #[cfg(feature = "parallel")]
            Execution::Parallel => items
                .par_chunks(chunk.max(1))
                .map(|c| c.iter().fold(identity(), &fold))
                .reduce(&identity, &merge),
            #[cfg(not(feature = "parallel"))]
            Execution::Parallel => unreachable!("effective() never yields Parallel"),
        }
    }

    /// Order-preserving map.
    pub(crate) fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self.effective() {
            Execution::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().map(f).collect(),
            #[cfg(not(feature = "parallel"))]
            Execution::Parallel => unreachable!("effective() never yields Parallel"),
        }
    }
}
