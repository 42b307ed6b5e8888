use crate::{Error, Result};

/// How chunked Monte Carlo work is scheduled.
///
/// Scheduling never affects results: every chunk owns its RNG substream and
/// chunk outputs are always reduced in chunk order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    /// All chunks in order on the calling thread.
    Sequential,
    /// Chunks on rayon. `workers: None` uses the global pool, `Some(k)` a
    /// dedicated pool of `k` threads. Falls back to sequential when the
    /// `parallel` feature is disabled.
    Parallel { workers: Option<usize> },
}

impl Default for Execution {
    fn default() -> Self {
        Execution::parallel()
    }
}

impl Execution {
    pub fn parallel() -> Self {
        Execution::Parallel { workers: None }
    }

    pub fn with_workers(workers: usize) -> Self {
        Execution::Parallel {
            workers: Some(workers),
        }
    }

    /// Run `task` for every chunk index in `0..chunks`, returning outputs in index order.
    pub(crate) fn map_chunks<T, F>(self, chunks: usize, task: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Execution::Sequential => Ok((0..chunks).map(task).collect()),
            Execution::Parallel { workers } => {
                if workers == Some(0) {
                    return Err(Error::invalid("worker count must be positive"));
                }
                par_map(chunks, workers, task)
            }
        }
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, F>(chunks: usize, workers: Option<usize>, task: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;

    let run = || (0..chunks).into_par_iter().map(&task).collect::<Vec<T>>();
    match workers {
        None => Ok(run()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
            Ok(pool.install(run))
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, F>(chunks: usize, _workers: Option<usize>, task: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    Ok((0..chunks).map(task).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outputs_in_chunk_order() {
        for exec in [
            Execution::Sequential,
            Execution::parallel(),
            Execution::with_workers(3),
        ] {
            let out = exec.map_chunks(100, |i| i * i).unwrap();
            assert_eq!(out, (0..100).map(|i| i * i).collect::<Vec<_>>());
        }
    }

    #[test]
    fn zero_workers_rejected() {
        assert!(Execution::with_workers(0).map_chunks(1, |i| i).is_err());
    }
}
