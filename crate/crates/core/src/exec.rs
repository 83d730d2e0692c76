//! Execution mode for independent checks and seeded per-sample randomness.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses the rayon pool when the `parallel` feature is enabled and falls
    /// back to sequential evaluation otherwise.
    #[default]
    Parallel,
}

impl Execution {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Execution::Sequential => items.iter().map(f).collect(),
            Execution::Parallel => par_map(items, f),
        }
    }

    /// Maps `f` over `0..n`, preserving order.
    pub fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        let idx: Vec<usize> = (0..n).collect();
        self.map(&idx, |&i| f(i))
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Seeded sampling parameters shared by the law checkers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampler {
    pub seed: u64,
    pub count: usize,
    /// Longest family drawn when sampling objects of `T(A)`.
    pub max_len: usize,
    pub exec: Execution,
}

impl Default for Sampler {
    fn default() -> Sampler {
        Sampler {
            seed: 42,
            count: 100,
            max_len: 4,
            exec: Execution::default(),
        }
    }
}

impl Sampler {
    pub fn new(seed: u64, count: usize) -> Sampler {
        Sampler {
            seed,
            count,
            ..Sampler::default()
        }
    }

    pub fn with_count(self, count: usize) -> Sampler {
        Sampler { count, ..self }
    }

    /// Independent generator for sample `index` of law `law`; the stream
    /// does not depend on the execution mode or on other samples.
    pub fn rng(&self, law: &str, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ fnv1a(law));
        rng.set_stream(index as u64);
        rng
    }

    /// Runs `f` on every sample index and returns results in index order.
    pub fn run<R, F>(&self, law: &str, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize, &mut ChaCha8Rng) -> R + Sync + Send,
    {
        self.exec.map_range(self.count, |i| f(i, &mut self.rng(law, i)))
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf29ce484222325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100000001b3)
    })
}
