// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Task execution: a rayon pool when the `parallel` feature is on, the
//! calling thread otherwise.
//!
//! Tasks are mapped in input order and collected in input order, so any
//! reduction done over the returned vector is independent of the schedule.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Executor {
    Sequential,
    /// `workers == 0` lets rayon pick the thread count.
    Parallel { workers: usize },
}

impl Default for Executor {
    fn default() -> Self {
        Executor::with_workers(0)
    }
}

impl Executor {
    /// `1` worker means sequential.
    pub fn with_workers(workers: usize) -> Self {
        if workers == 1 || !cfg!(feature = "parallel") {
            Executor::Sequential
        } else {
            Executor::Parallel { workers }
        }
    }

    pub fn is_parallel(&self) -> bool {
        matches!(self, Executor::Parallel { .. })
    }

    pub fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match *self {
            Executor::Sequential => items.into_iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Executor::Parallel { workers } => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .build()
                    .expect("failed to build rayon pool");
                pool.install(|| items.into_par_iter().map(f).collect())
            }
            #[cfg(not(feature = "parallel"))]
            Executor::Parallel { .. } => items.into_iter().map(f).collect(),
        }
    }

    /// Like [`Executor::map`] but stops at the first error, in input order.
    pub fn try_map<T, R, E, F>(&self, items: Vec<T>, f: F) -> Result<Vec<R>, E>
    where
        T: Send,
        R: Send,
        E: Send,
        F: Fn(T) -> Result<R, E> + Sync + Send,
    {
        self.map(items, f).into_iter().collect()
    }
}
