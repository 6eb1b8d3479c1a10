//! Seeded replication harness.
//!
//! Replication `i` always draws from `ChaCha8Rng::seed_from_u64(base_seed)`
//! switched to stream `i`, so a result vector depends only on
//! `(base_seed, n_reps)` and never on scheduling. With the `parallel`
//! feature the replications fan out over rayon's pool; without it they run
//! in order on the calling thread.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Generator for replication `index` under `base_seed`.
pub fn child_rng(base_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
    rng.set_stream(index);
    rng
}

/// A unit of Monte Carlo work that can be replicated independently.
pub trait Experiment: Sync {
    type Output: Send;

    fn run(&self, rng: &mut ChaCha8Rng, index: usize) -> Self::Output;
}

impl<T, F> Experiment for F
where
    F: Fn(&mut ChaCha8Rng, usize) -> T + Sync,
    T: Send,
{
    type Output = T;

    fn run(&self, rng: &mut ChaCha8Rng, index: usize) -> T {
        self(rng, index)
    }
}

pub fn run_sequential<E: Experiment>(
    experiment: &E,
    n_reps: usize,
    base_seed: u64,
) -> Vec<E::Output> {
    (0..n_reps)
        .map(|i| experiment.run(&mut child_rng(base_seed, i as u64), i))
        .collect()
}

#[cfg(feature = "parallel")]
pub fn run_parallel<E: Experiment>(
    experiment: &E,
    n_reps: usize,
    base_seed: u64,
) -> Vec<E::Output> {
    (0..n_reps)
        .into_par_iter()
        .map(|i| experiment.run(&mut child_rng(base_seed, i as u64), i))
        .collect()
}

/// Runs `n_reps` replications; output is in replication order.
pub fn run_replications<E: Experiment>(
    experiment: &E,
    n_reps: usize,
    base_seed: u64,
) -> Vec<E::Output> {
    #[cfg(feature = "parallel")]
    {
        run_parallel(experiment, n_reps, base_seed)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_sequential(experiment, n_reps, base_seed)
    }
}

/// Maps `f` over `items` on the pool when available, preserving order.
pub fn map_items<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::{combined_se, SampleSummary};
    use rand::Rng;

    fn mean_of_uniforms(rng: &mut ChaCha8Rng, _i: usize) -> f64 {
        (0..100).map(|_| rng.random::<f64>()).sum::<f64>() / 100.0
    }

    #[test]
    fn same_seed_same_output() {
        let a = run_replications(&mean_of_uniforms, 64, 42);
        let b = run_replications(&mean_of_uniforms, 64, 42);
        assert_eq!(a, b);
    }

    #[test]
    fn single_replication_matches_direct_run() {
        let a = run_replications(&mean_of_uniforms, 1, 7);
        let direct = mean_of_uniforms(&mut child_rng(7, 0), 0);
        assert_eq!(a, vec![direct]);
    }

    #[test]
    fn prefix_is_stable_when_adding_replications() {
        let short = run_replications(&mean_of_uniforms, 10, 3);
        let long = run_replications(&mean_of_uniforms, 20, 3);
        assert_eq!(short[..], long[..10]);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_equals_sequential() {
        let par = run_parallel(&mean_of_uniforms, 200, 9);
        let seq = run_sequential(&mean_of_uniforms, 200, 9);
        assert_eq!(par, seq);
    }

    #[test]
    fn adjacent_seeds_are_compatible() {
        let a = SampleSummary::of(&run_replications(&mean_of_uniforms, 400, 100));
        let b = SampleSummary::of(&run_replications(&mean_of_uniforms, 400, 101));
        assert_ne!(a.mean, b.mean);
        assert!((a.mean - b.mean).abs() < 3.0 * combined_se(a.std_error, b.std_error));
    }
}
