//! Seeded Monte Carlo estimators. Trial `t` always draws from
//! `RandomStream::new(seed, t)`, and results are reduced in trial order.

use rand::Rng;
use serde::Serialize;

use super::pairs::{pair_counts_within, DEFAULT_PAIR_CAP};
use crate::error::Result;
use crate::offspring::OffspringDistribution;
use crate::sampler::{default_max_attempts, sample_progeny, ConditionedSampler, RandomStream};
use crate::trials::{mean_and_stderr, proportion, run_trials};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioEstimate {
    pub i: usize,
    /// Mean of `P_i(T_n) / (n i)` over trials.
    pub mean: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailEstimate {
    pub k: u64,
    pub probability: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointEstimate {
    pub value: f64,
    pub stderr: f64,
}

/// Estimates `E[P_i(T_n)] / (n i)` for `i = 1..=i_max`.
pub fn estimate_pair_ratio(
    dist: &OffspringDistribution,
    n: usize,
    i_max: usize,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<Vec<RatioEstimate>> {
    dist.require_size(n as u64)?;
    let per_trial: Vec<Result<Vec<f64>>> = run_trials(trials, workers, |t| {
        let mut rng = RandomStream::new(seed, t);
        let tree = ConditionedSampler::new(dist, n)?
            .sample(&mut rng, default_max_attempts(n))?
            .tree;
        let prof = pair_counts_within(&tree, i_max, DEFAULT_PAIR_CAP)?;
        Ok((1..=i_max)
            .map(|i| prof.p_at(i) as f64 / (n as f64 * i as f64))
            .collect())
    });
    let per_trial: Vec<Vec<f64>> = per_trial.into_iter().collect::<Result<_>>()?;
    Ok((1..=i_max)
        .map(|i| {
            let column: Vec<f64> = per_trial.iter().map(|r| r[i - 1]).collect();
            let (mean, stderr) = mean_and_stderr(&column);
            RatioEstimate { i, mean, stderr }
        })
        .collect())
}

/// `Pr(h(T) >= k)` for the unconditioned tree. Trees that outgrow
/// `size_cap` are counted as reaching every `k`, which can only overstate
/// the tail.
pub fn estimate_height_tail(
    dist: &OffspringDistribution,
    k_values: &[u64],
    trials: u64,
    size_cap: u64,
    seed: u64,
    workers: usize,
) -> Vec<TailEstimate> {
    let height_cap = k_values.iter().copied().max().unwrap_or(0);
    let heights: Vec<u64> = run_trials(trials, workers, |t| {
        let mut rng = RandomStream::new(seed, t);
        let prog = sample_progeny(dist, &mut rng, size_cap, height_cap);
        if prog.overflow {
            u64::MAX
        } else {
            prog.height
        }
    });
    k_values
        .iter()
        .map(|&k| {
            let hits = heights.iter().filter(|&&h| h >= k).count() as u64;
            let (probability, stderr) = proportion(hits, trials);
            TailEstimate {
                k,
                probability,
                stderr,
            }
        })
        .collect()
}

/// `Pr(h(τ_u) >= k)` for a uniform vertex `u` of `T_n`.
pub fn estimate_subtree_tail(
    dist: &OffspringDistribution,
    n: usize,
    k: u64,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<TailEstimate> {
    let hits: Vec<Result<bool>> = run_trials(trials, workers, |t| {
        let mut rng = RandomStream::new(seed, t);
        let tree = ConditionedSampler::new(dist, n)?
            .sample(&mut rng, default_max_attempts(n))?
            .tree;
        let u = rng.random_range(0..n);
        Ok(tree.subtree_height(u) as u64 >= k)
    });
    let hits = hits.into_iter().collect::<Result<Vec<bool>>>()?;
    let (probability, stderr) = proportion(hits.iter().filter(|&&h| h).count() as u64, trials);
    Ok(TailEstimate {
        k,
        probability,
        stderr,
    })
}

/// Empirical `Pr(|T| = s)` for each requested size.
pub fn estimate_progeny_pmf(
    dist: &OffspringDistribution,
    sizes: &[u64],
    trials: u64,
    seed: u64,
    workers: usize,
) -> Vec<(u64, PointEstimate)> {
    let cap = sizes.iter().copied().max().unwrap_or(1);
    let observed: Vec<u64> = run_trials(trials, workers, |t| {
        let mut rng = RandomStream::new(seed, t);
        let prog = sample_progeny(dist, &mut rng, cap, u64::MAX);
        if prog.extinct {
            prog.size
        } else {
            0
        }
    });
    sizes
        .iter()
        .map(|&s| {
            let hits = observed.iter().filter(|&&x| x == s).count() as u64;
            let (value, stderr) = proportion(hits, trials);
            (s, PointEstimate { value, stderr })
        })
        .collect()
}

/// Empirical `Pr(S_s = m)` for a sum of `s` i.i.d. offspring counts.
pub fn estimate_sum_probability(
    dist: &OffspringDistribution,
    s: u64,
    m: u64,
    trials: u64,
    seed: u64,
    workers: usize,
) -> PointEstimate {
    let hits: Vec<bool> = run_trials(trials, workers, |t| {
        let mut rng = RandomStream::new(seed, t);
        let total: u64 = (0..s).map(|_| dist.sample(&mut rng) as u64).sum();
        total == m
    });
    let (value, stderr) = proportion(hits.iter().filter(|&&h| h).count() as u64, trials);
    PointEstimate { value, stderr }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_ratio_at_one_is_deterministic() {
        let d = OffspringDistribution::poisson();
        let rows = estimate_pair_ratio(&d, 50, 3, 10, 1, 1).unwrap();
        assert_eq!(rows[0].i, 1);
        assert!((rows[0].mean - 49.0 / 50.0).abs() < 1e-15);
        assert!(rows[0].stderr < 1e-12);
        let single = estimate_pair_ratio(&d, 1, 4, 5, 1, 1).unwrap();
        assert!(single.iter().all(|r| r.mean == 0.0));
    }

    #[test]
    fn height_tail_first_levels() {
        let d = OffspringDistribution::poisson();
        let rows = estimate_height_tail(&d, &[0, 1, 2, 5], 200_000, 1_000_000, 3, 1);
        assert_eq!(rows[0].probability, 1.0);
        let p1 = 1.0 - (-1.0f64).exp();
        assert!((rows[1].probability - p1).abs() < 4.0 * rows[1].stderr);
        for w in rows.windows(2) {
            assert!(w[1].probability <= w[0].probability);
        }
    }

    #[test]
    fn subtree_tail_edges() {
        let d = OffspringDistribution::geometric();
        let at_zero = estimate_subtree_tail(&d, 200, 0, 20, 4, 1).unwrap();
        assert_eq!(at_zero.probability, 1.0);
        let beyond = estimate_subtree_tail(&d, 200, 200, 20, 4, 1).unwrap();
        assert_eq!(beyond.probability, 0.0);
    }

    #[test]
    fn progeny_single_vertex_mass() {
        let d = OffspringDistribution::poisson();
        let rows = estimate_progeny_pmf(&d, &[1], 100_000, 8, 1);
        let (_, est) = rows[0];
        assert!((est.value - (-1.0f64).exp()).abs() < 4.0 * est.stderr);
    }
}
