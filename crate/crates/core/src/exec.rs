//! Data-parallel execution with a sequential fallback.
//!
//! Batch workloads (census points, sweep jobs, exhaustive oracles) go through
//! [`map_collect`]. With the `parallel` feature enabled the `Parallel` mode
//! dispatches to rayon; without it both modes run sequentially. Results are
//! always returned in input order, so output never depends on scheduling.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// `Parallel` when the crate was built with rayon, `Sequential` otherwise.
    pub fn best_available() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map_collect<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Runs `op` on a pool with `workers` threads (or the global pool when `None`).
///
/// The worker count only changes throughput; every caller in this crate
/// produces order-stable output.
pub fn with_workers<R, F>(workers: Option<usize>, op: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    {
        if let Some(n) = workers {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
                return pool.install(op);
            }
        }
        op()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        op()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree_and_keep_order() {
        let items: Vec<u64> = (0..200).collect();
        let seq = map_collect(Execution::Sequential, &items, |x| x * x + 1);
        let par = map_collect(Execution::Parallel, &items, |x| x * x + 1);
        assert_eq!(seq, par);
        assert_eq!(seq[17], 17 * 17 + 1);
    }

    #[test]
    fn worker_pool_runs_closure() {
        let v = with_workers(Some(2), || {
            map_collect(Execution::Parallel, &[1u32, 2, 3], |x| x + 1)
        });
        assert_eq!(v, vec![2, 3, 4]);
    }
}
