//! Execution-strategy helpers: rayon data parallelism with a sequential
//! fallback.
//!
//! Every data-parallel loop in the crate funnels through these helpers so
//! that the same kernel can run on the rayon pool (default `parallel`
//! feature) or on the current thread (`--no-default-features`). Reductions
//! are always *ordered*: parallel variants map independently and fold the
//! results in index order, so both strategies execute identical
//! floating-point operations and produce bitwise-identical output.

/// Which loop driver to use for a data-parallel kernel.
///
/// `Exec::default()` follows the crate feature: `Par` when built with the
/// `parallel` feature, `Seq` otherwise. The sequential path is always
/// compiled, which lets the benchmark suite compare both on one build.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Exec {
    /// Run on the calling thread.
    Seq,
    /// Run on the rayon thread pool (falls back to `Seq` without the
    /// `parallel` feature).
    Par,
}

impl Default for Exec {
    #[cfg(feature = "parallel")]
    fn default() -> Self {
        Exec::Par
    }
    #[cfg(not(feature = "parallel"))]
    fn default() -> Self {
        Exec::Seq
    }
}

/// Maps `0..n` and collects results in index order.
pub fn map_collect<R, F>(exec: Exec, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync,
{
    match exec {
        Exec::Seq => (0..n).map(f).collect(),
        Exec::Par => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                (0..n).map(f).collect()
            }
        }
    }
}

/// Applies `f(line_index, chunk)` to consecutive `chunk_len` slices of `data`.
///
/// `data.len()` must be a multiple of `chunk_len`.
pub fn for_each_chunk_mut<T, F>(exec: Exec, data: &mut [T], chunk_len: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync,
{
    debug_assert_eq!(data.len() % chunk_len.max(1), 0);
    match exec {
        Exec::Seq => {
            for (i, chunk) in data.chunks_mut(chunk_len).enumerate() {
                f(i, chunk);
            }
        }
        Exec::Par => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                data.par_chunks_mut(chunk_len)
                    .enumerate()
                    .for_each(|(i, chunk)| f(i, chunk));
            }
            #[cfg(not(feature = "parallel"))]
            {
                for (i, chunk) in data.chunks_mut(chunk_len).enumerate() {
                    f(i, chunk);
                }
            }
        }
    }
}

/// Maps `0..n` and folds the results in index order (deterministic reduce).
pub fn map_fold<R, A, F, G>(exec: Exec, n: usize, init: A, f: F, fold: G) -> A
where
    R: Send,
    F: Fn(usize) -> R + Sync,
    G: FnMut(A, R) -> A,
{
    map_collect(exec, n, f).into_iter().fold(init, fold)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_collect_orders_match() {
        let seq = map_collect(Exec::Seq, 100, |i| i * i);
        let par = map_collect(Exec::Par, 100, |i| i * i);
        assert_eq!(seq, par);
    }

    #[test]
    fn chunk_mut_covers_all() {
        let mut a = vec![0usize; 12];
        let mut b = vec![0usize; 12];
        for_each_chunk_mut(Exec::Seq, &mut a, 3, |i, c| c.iter_mut().for_each(|v| *v = i));
        for_each_chunk_mut(Exec::Par, &mut b, 3, |i, c| c.iter_mut().for_each(|v| *v = i));
        assert_eq!(a, b);
        assert_eq!(a[..3], [0, 0, 0]);
        assert_eq!(a[9..], [3, 3, 3]);
    }

    #[test]
    fn ordered_fold_is_deterministic() {
        // Sum of f32 values in a fixed order must match exactly across strategies.
        let f = |i: usize| (i as f32).sin();
        let s1 = map_fold(Exec::Seq, 1000, 0.0f32, f, |a, x| a + x);
        let s2 = map_fold(Exec::Par, 1000, 0.0f32, f, |a, x| a + x);
        assert_eq!(s1.to_bits(), s2.to_bits());
    }
}
