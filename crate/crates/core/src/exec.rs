//! Sequential / row-parallel dispatch for the data-parallel loops.
//!
//! Every parallel loop in the crate writes each output element from a pure
//! function of the inputs, so results are bit-identical under either
//! execution mode. Reductions (dot products, norms) are always sequential.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a data-parallel loop is executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    /// Plain loop on the calling thread.
    Sequential,
    /// Rayon over rows. Falls back to [`Execution::Sequential`] when the
    /// `parallel` feature is disabled.
    #[default]
    Parallel,
}

impl Execution {
    /// True if this mode will actually use more than one thread.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Fill `out` row by row; `row_len` elements per row, `f(row, row_slice)`.
    pub fn fill_rows<T, F>(self, out: &mut [T], row_len: usize, f: F)
    where
        T: Send,
        F: Fn(usize, &mut [T]) + Sync + Send,
    {
        assert!(row_len > 0 && out.len().is_multiple_of(row_len));
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            out.par_chunks_mut(row_len)
                .enumerate()
                .for_each(|(row, chunk)| f(row, chunk));
            return;
        }
        out.chunks_mut(row_len)
            .enumerate()
            .for_each(|(row, chunk)| f(row, chunk));
    }

    /// Map `0..len` through `f`, preserving order.
    pub fn map_indices<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }
}
