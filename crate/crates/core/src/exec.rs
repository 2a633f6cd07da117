//! Row-level work scheduling.
//!
//! Every parallel path writes each output element from exactly one task and
//! reduces in a fixed order, so results are bit-identical for any thread
//! count. Without the `parallel` feature both schedules run sequentially.

use num_complex::Complex64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Schedule {
    Sequential,
    #[default]
    Parallel,
}

impl Schedule {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Schedule::Parallel
    }
}

/// Calls `f(row_index, row)` for every `width`-long row of `data`.
pub(crate) fn for_each_row<T, F>(schedule: Schedule, data: &mut [T], width: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if schedule.is_parallel() {
        use rayon::prelude::*;
        data.par_chunks_mut(width)
            .enumerate()
            .for_each(|(i, row)| f(i, row));
        return;
    }
    let _ = schedule;
    for (i, row) in data.chunks_mut(width).enumerate() {
        f(i, row);
    }
}

/// Like [`for_each_row`] but with a per-task scratch buffer.
pub(crate) fn for_each_row_with_scratch<F>(
    schedule: Schedule,
    data: &mut [Complex64],
    width: usize,
    scratch_len: usize,
    f: F,
) where
    F: Fn(&mut [Complex64], &mut [Complex64]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if schedule.is_parallel() {
        use rayon::prelude::*;
        data.par_chunks_mut(width).for_each_init(
            || vec![Complex64::new(0.0, 0.0); scratch_len],
            |scratch, row| f(row, scratch),
        );
        return;
    }
    let _ = schedule;
    let mut scratch = vec![Complex64::new(0.0, 0.0); scratch_len];
    for row in data.chunks_mut(width) {
        f(row, &mut scratch);
    }
}

/// Maps `f` over `0..n`, preserving index order in the output.
pub(crate) fn map_indices<T, F>(schedule: Schedule, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if schedule.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = schedule;
    (0..n).map(f).collect()
}
