//! Work distribution for the residual suites. The checks fan out over
//! independent (manifold, check) tasks; results are collected in task order,
//! so parallel and sequential runs produce identical reports.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    #[cfg(feature = "parallel")]
    Rayon,
}

impl Default for Parallelism {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Parallelism::Rayon
        }
        #[cfg(not(feature = "parallel"))]
        {
            Parallelism::Sequential
        }
    }
}

impl Parallelism {
    pub fn label(&self) -> &'static str {
        match self {
            Parallelism::Sequential => "sequential",
            #[cfg(feature = "parallel")]
            Parallelism::Rayon => "rayon",
        }
    }
}

/// Applies `f` to every item, preserving order.
pub fn map_collect<T, U, F>(items: &[T], par: Parallelism, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match par {
        Parallelism::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Parallelism::Rayon => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
    }
}
