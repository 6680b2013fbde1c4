//! Execution strategy for the residue-enumeration kernels.
//!
//! Every kernel accumulates integer counts and merges them by addition, so the
//! sequential and parallel paths produce identical results. Without the
//! `parallel` feature, [`ExecMode::Parallel`] silently runs sequentially.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ExecMode {
    Sequential,
    #[default]
    Parallel,
}

/// Ranges shorter than this are always enumerated on the calling thread.
#[cfg(feature = "parallel")]
const PAR_THRESHOLD: u64 = 4096;

/// Folds `f` over `0..len` into `Vec<u64>` accumulators of length `width` and
/// sums them elementwise.
pub fn sum_counts<F>(mode: ExecMode, len: u64, width: usize, f: F) -> Vec<u64>
where
    F: Fn(u64, &mut [u64]) + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel if len >= PAR_THRESHOLD => {
            use rayon::prelude::*;
            // fold whole chunks so each task amortizes its accumulator
            let chunks = len.div_ceil(PAR_THRESHOLD);
            (0..chunks)
                .into_par_iter()
                .fold(
                    || vec![0u64; width],
                    |mut acc, c| {
                        for i in c * PAR_THRESHOLD..len.min((c + 1) * PAR_THRESHOLD) {
                            f(i, &mut acc);
                        }
                        acc
                    },
                )
                .reduce(
                    || vec![0u64; width],
                    |mut a, b| {
                        for (x, y) in a.iter_mut().zip(b) {
                            *x += y;
                        }
                        a
                    },
                )
        }
        _ => {
            let mut acc = vec![0u64; width];
            for i in 0..len {
                f(i, &mut acc);
            }
            acc
        }
    }
}

/// Maps `f` over the items, preserving order.
pub fn map_ordered<T, R, F>(mode: ExecMode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel if items.len() > 1 => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}
