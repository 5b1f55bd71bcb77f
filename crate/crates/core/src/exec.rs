//! Execution settings and the data-parallel map used by the hot loops.
//!
//! With the `parallel` feature (default) [`ExecMode::Parallel`] fans work out
//! over rayon's pool. Without it every mode runs sequentially. Results are
//! always returned in input order, so output never depends on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    Sequential,
    #[default]
    Parallel,
}

impl ExecMode {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == ExecMode::Parallel
    }
}

/// Tunables shared by the whole pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Settings {
    /// Maximum number of S-pairs a single Gröbner computation may treat.
    pub pair_budget: usize,
    /// Maximum number of candidates tried by the primitive element search.
    pub primitive_search_cap: usize,
    /// Maximum number of integers scanned when looking for a prime in a class.
    pub prime_search_cap: u64,
    pub exec: ExecMode,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            pair_budget: 100_000,
            primitive_search_cap: 1_000,
            prime_search_cap: 10_000_000,
            exec: ExecMode::Parallel,
        }
    }
}

impl Settings {
    pub fn sequential() -> Self {
        Settings {
            exec: ExecMode::Sequential,
            ..Settings::default()
        }
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, U, F>(mode: ExecMode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if mode == ExecMode::Parallel && items.len() > 1 {
            return items.par_iter().map(f).collect();
        }
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// Like [`map`] but short-circuits on the first error (in input order).
pub fn try_map<T, U, E, F>(mode: ExecMode, items: &[T], f: F) -> Result<Vec<U>, E>
where
    T: Sync,
    U: Send,
    E: Send,
    F: Fn(&T) -> Result<U, E> + Sync + Send,
{
    map(mode, items, f).into_iter().collect()
}
