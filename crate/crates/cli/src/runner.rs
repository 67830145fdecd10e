use datagame_core::analysis::GridRunner;
use rayon::prelude::*;
use rayon::ThreadPool;

/// Grid runner backed by a private rayon pool. Results come back in index
/// order, so the worker count never changes the output.
pub struct Parallel {
    pool: ThreadPool,
}

impl Parallel {
    /// `workers == 0` lets rayon pick one thread per core.
    pub fn new(workers: usize) -> Result<Self, rayon::ThreadPoolBuildError> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build()?;
        Ok(Self { pool })
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl GridRunner for Parallel {
    fn map_indexed<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        let f = &f;
        self.pool.install(|| (0..n).into_par_iter().map(f).collect())
    }
}
