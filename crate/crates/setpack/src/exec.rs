//! Pluggable execution strategy for the solvers' independent inner loops.
//!
//! The dynamic programs contain batches of mutually independent tasks (one
//! per candidate member, or one per outer search branch). A [`TaskPool`]
//! evaluates such a batch and hands the results back *in task-index order*,
//! so the merged output is identical no matter how many workers ran the
//! batch. The core crate only ships the sequential [`Serial`] pool; a
//! threaded implementation lives in the CLI crate.

use alloc::vec::Vec;

pub trait TaskPool: Sync {
    /// Evaluates `task(0), …, task(n-1)` and returns the outputs in index
    /// order.
    fn map_ordered<T: Send>(&self, n: usize, task: &(dyn Fn(usize) -> T + Sync)) -> Vec<T>;

    /// Returns the `Some` result of the lowest task index that produces one,
    /// or `None` if no task does. Implementations may evaluate tasks
    /// concurrently or skip trailing tasks, but the returned value must be
    /// the first in index order.
    fn find_map_ordered<T: Send>(
        &self,
        n: usize,
        task: &(dyn Fn(usize) -> Option<T> + Sync),
    ) -> Option<T> {
        (0..n).find_map(task)
    }
}

/// Runs every task on the calling thread.
pub struct Serial;

impl TaskPool for Serial {
    fn map_ordered<T: Send>(&self, n: usize, task: &(dyn Fn(usize) -> T + Sync)) -> Vec<T> {
        (0..n).map(task).collect()
    }
}
