use std::collections::HashMap;

use statrs::distribution::{ChiSquared, ContinuousCDF};

use gwburn::oracle::conditioned_law;
use gwburn::sampler::{
    predicted_acceptance_rate, sample_conditioned, ConditionedSampler, RandomStream,
};
use gwburn::stats::{estimate_height_tail, estimate_pair_ratio, estimate_subtree_tail};
use gwburn::trials::run_trials;
use gwburn::OffspringDistribution;

/// Chi-square p-value of `samples` conditioned draws against the
/// enumeration law.
fn goodness_of_fit(dist: &OffspringDistribution, n: usize, samples: u64, seed: u64) -> f64 {
    let law = conditioned_law(dist, n);
    let law: Vec<_> = law.into_iter().filter(|(_, p)| *p > 0.0).collect();
    let index: HashMap<Vec<u32>, usize> = law
        .iter()
        .enumerate()
        .map(|(i, (s, _))| (s.as_slice().to_vec(), i))
        .collect();
    let mut counts = vec![0u64; law.len()];
    for i in run_trials(samples, 1, |t| {
        let tree = sample_conditioned(dist, n, &mut RandomStream::new(seed, t), 1_000_000)
            .unwrap()
            .tree;
        index[tree.degrees().as_slice()]
    }) {
        counts[i] += 1;
    }
    let stat: f64 = law
        .iter()
        .zip(&counts)
        .map(|((_, p), &c)| {
            let e = p * samples as f64;
            (c as f64 - e).powi(2) / e
        })
        .sum();
    1.0 - ChiSquared::new((law.len() - 1) as f64).unwrap().cdf(stat)
}

#[test]
fn poisson_conditioned_law() {
    let p = goodness_of_fit(&OffspringDistribution::poisson(), 6, 100_000, 21);
    assert!(p > 1e-3, "p = {p}");
}

#[test]
fn binomial_conditioned_law() {
    let p = goodness_of_fit(&OffspringDistribution::binomial(2).unwrap(), 6, 100_000, 22);
    assert!(p > 1e-3, "p = {p}");
}

#[test]
fn two_point_conditioned_law() {
    // full binary trees on 7 vertices, all equally likely
    let d = OffspringDistribution::two_point(2).unwrap();
    let law: Vec<_> = conditioned_law(&d, 7)
        .into_iter()
        .filter(|(_, p)| *p > 0.0)
        .collect();
    assert_eq!(law.len(), 5);
    let p = goodness_of_fit(&d, 7, 50_000, 23);
    assert!(p > 1e-3, "p = {p}");
}

#[test]
fn acceptance_rate_matches_local_limit() {
    let d = OffspringDistribution::poisson();
    let attempts = 200_000u64;
    let hits = ConditionedSampler::new(&d, 100)
        .unwrap()
        .count_acceptances(&mut RandomStream::new(5, 0), attempts);
    let rate = hits as f64 / attempts as f64;
    // Pr(Poisson(100) = 99) = Pr(Poisson(100) = 100)
    let exact = (-100.0f64 + 99.0 * 100f64.ln() - statrs::function::gamma::ln_gamma(100.0)).exp();
    let se = (exact * (1.0 - exact) / attempts as f64).sqrt();
    assert!(
        (rate - exact).abs() < 4.0 * se,
        "rate {rate}, exact {exact}"
    );
    let predicted = predicted_acceptance_rate(&d, 100).unwrap();
    assert!((predicted - exact).abs() / exact < 0.01);
}

#[test]
fn rejection_limit_reported() {
    let d = OffspringDistribution::poisson();
    let err = sample_conditioned(&d, 10_000, &mut RandomStream::new(0, 0), 1).unwrap_err();
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn estimator_trivial_values() {
    let d = OffspringDistribution::poisson();
    let tails = estimate_height_tail(&d, &[0, 1], 200_000, 1_000_000, 3, 1);
    assert_eq!(tails[0].probability, 1.0);
    let p1 = 1.0 - (-1.0f64).exp();
    assert!((tails[1].probability - p1).abs() < 4.0 * tails[1].stderr);

    let sub = estimate_subtree_tail(&d, 50, 0, 20, 3, 1).unwrap();
    assert_eq!(sub.probability, 1.0);
    let sub = estimate_subtree_tail(&d, 50, 50, 20, 3, 1).unwrap();
    assert_eq!(sub.probability, 0.0);

    let ratios = estimate_pair_ratio(&d, 200, 5, 10, 3, 2).unwrap();
    assert!((ratios[0].mean - 199.0 / 200.0).abs() < 1e-12);
}

#[test]
fn subtree_tail_decreases() {
    let d = OffspringDistribution::poisson();
    let mut last = 1.0;
    for k in [5, 20, 80] {
        let t = estimate_subtree_tail(&d, 2_000, k, 100, 9, 1).unwrap();
        assert!(t.probability <= last);
        last = t.probability;
    }
}
