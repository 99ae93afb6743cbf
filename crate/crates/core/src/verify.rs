//! The acceptance criteria as runnable checks.
//!
//! Criteria 1-4 are exhaustive comparisons against brute force and closed
//! forms (the `oracle` suite); 5-12 are seeded Monte Carlo checks (the
//! `statistical` suite); 13 reruns 5-12 under another worker count and
//! compares their CSV output byte for byte. All tolerances live here.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::burning::{
    bhat_exact, burning_number_exact, known_bounds, min_ball_cover, pair_lower_bound, scheme_cover,
    scheme_upper_bound, verify_cover,
};
use crate::error::{Error, Result};
use crate::experiment::{estimate_rows_csv, run_ckj, run_pairs, run_scaling, ExperimentConfig};
use crate::offspring::OffspringDistribution;
use crate::oracle::{brute_force_min_cover, conditioned_law, sequences_with_sum, valid_rotations};
use crate::sampler::{default_max_attempts, ConditionedSampler, RandomStream};
use crate::stats::{
    borel_pmf, estimate_height_tail, estimate_progeny_pmf, estimate_sum_probability,
    llt_sum_asymptote, DEFAULT_PAIR_CAP,
};
use crate::tree::{enumerate_trees_capped, unique_valid_rotation, Tree};
use crate::trials::run_trials;

/// Seed used by every statistical criterion.
pub const VERIFY_SEED: u64 = 1;
/// Standard errors allowed between an estimate and its reference.
pub const Z_TOLERANCE: f64 = 3.0;
pub const CHI_SQUARE_SIGNIFICANCE: f64 = 1e-3;
pub const BOREL_LLT_TOLERANCE: f64 = 0.02;
pub const HEIGHT_TAIL_WINDOW: (f64, f64) = (1.5, 2.5);
pub const PAIR_RATIO_RELATIVE_TOLERANCE: f64 = 0.2;
pub const SLOPE_WINDOW: (f64, f64) = (0.25, 0.42);
pub const CKJ_MIN_FRACTION: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Oracle,
    Statistical,
    All,
}

impl Suite {
    pub fn criteria(self) -> Vec<u32> {
        match self {
            Suite::Oracle => (1..=4).collect(),
            Suite::Statistical => (5..=13).collect(),
            Suite::All => (1..=13).collect(),
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(Suite::Oracle),
            "statistical" => Ok(Suite::Statistical),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidParameter(format!(
                "unknown suite {other:?} (expected oracle, statistical or all)"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    /// Measured values, one line.
    pub detail: String,
    /// Deterministic output compared by the determinism criterion.
    pub csv: Option<String>,
}

impl CriterionResult {
    fn new(id: u32, name: &'static str, passed: bool, detail: String) -> Self {
        CriterionResult {
            id,
            name,
            passed,
            detail,
            csv: None,
        }
    }

    fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    /// `PASS 7 borel-llt: ...`
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

pub const CRITERION_NAMES: [&str; 13] = [
    "path-formula",
    "sandwich-sweep",
    "greedy-cover-optimality",
    "rotation-lemma",
    "scheme-cover",
    "sampler-exactness",
    "borel-llt",
    "sum-llt",
    "height-tail",
    "pair-ratio",
    "scaling-exponent",
    "ckj-frequency",
    "determinism",
];

fn trees_up_to(max_s: usize) -> impl Iterator<Item = Tree> {
    (1..=max_s).flat_map(|s| {
        enumerate_trees_capped(s, usize::MAX)
            .expect("s >= 1")
            .map(|seq| Tree::from_degrees(seq).expect("enumerated trees are valid"))
    })
}

/// 1: exact burning number of `P_n` is `ceil(sqrt n)` for `n <= 64`.
pub fn path_formula() -> Result<CriterionResult> {
    let mut wrong = Vec::new();
    for n in 1..=64usize {
        let (b, _) = burning_number_exact(&Tree::path(n), 64)?;
        let expect = (1..).find(|k| k * k >= n).expect("exists");
        if b != expect {
            wrong.push(format!("P_{n}: {b} != {expect}"));
        }
    }
    let detail = if wrong.is_empty() {
        "b(P_n) = ceil(sqrt n) for n = 1..=64".to_string()
    } else {
        wrong.join("; ")
    };
    Ok(CriterionResult::new(
        1,
        CRITERION_NAMES[0],
        wrong.is_empty(),
        detail,
    ))
}

/// 2: on every ordered tree with at most 10 vertices,
/// `pair_lb + 1 <= bhat <= b <= 2 bhat`, `b` below every known bound, the
/// scheme bound and `ceil(sqrt n)`.
pub fn sandwich_sweep() -> Result<CriterionResult> {
    let mut checked = 0u64;
    let mut violations = Vec::new();
    for tree in trees_up_to(10) {
        checked += 1;
        let n = tree.n();
        let (bhat, _) = bhat_exact(&tree);
        let (b, _) = burning_number_exact(&tree, 64)?;
        let lb = pair_lower_bound(&tree, DEFAULT_PAIR_CAP)?.k;
        let scheme = scheme_upper_bound(&tree).bound;
        let sqrt_n = (1..).find(|k| k * k >= n).expect("exists");
        let mut ok = lb < bhat && bhat <= b && b <= 2 * bhat && b <= scheme && b <= sqrt_n;
        if n >= 2 {
            let kb = known_bounds(n as u64);
            ok &= [kb.dfs_cycle, kb.bessy, kb.land_lu, kb.bastide]
                .iter()
                .all(|&x| b as u64 <= x);
        }
        if !ok && violations.len() < 5 {
            violations.push(format!(
                "{}: lb {lb} bhat {bhat} b {b} scheme {scheme}",
                tree.degrees()
            ));
        }
    }
    let passed = violations.is_empty();
    let detail = if passed {
        format!("{checked} trees with n <= 10, no violation")
    } else {
        format!("{checked} trees; violations: {}", violations.join("; "))
    };
    Ok(CriterionResult::new(2, CRITERION_NAMES[1], passed, detail))
}

/// 3: greedy cover count equals the subset-enumeration optimum for every
/// tree with at most 9 vertices and `r <= 3`.
pub fn greedy_optimality() -> Result<CriterionResult> {
    let mut checked = 0u64;
    let mut mismatches = Vec::new();
    for tree in trees_up_to(9) {
        for r in 0..=3 {
            checked += 1;
            let greedy = min_ball_cover(&tree, r).count;
            let brute = brute_force_min_cover(&tree, r);
            if greedy != brute && mismatches.len() < 5 {
                mismatches.push(format!("{} r={r}: {greedy} != {brute}", tree.degrees()));
            }
        }
    }
    let passed = mismatches.is_empty();
    let detail = if passed {
        format!("{checked} (tree, r) pairs agree")
    } else {
        mismatches.join("; ")
    };
    Ok(CriterionResult::new(3, CRITERION_NAMES[2], passed, detail))
}

/// 4: each sequence of length `s <= 8`, entries at most 4 and sum `s - 1`
/// has exactly one valid rotation, and the linear-time finder returns it.
pub fn rotation_lemma() -> Result<CriterionResult> {
    let mut checked = 0u64;
    let mut bad = Vec::new();
    for s in 1..=8 {
        for seq in sequences_with_sum(s, 4) {
            checked += 1;
            let all = valid_rotations(&seq);
            let fast = unique_valid_rotation(&seq)?;
            if (all.len() != 1 || all[0] != fast) && bad.len() < 5 {
                bad.push(format!("{seq:?}: valid {all:?}, found {fast}"));
            }
        }
    }
    let passed = bad.is_empty();
    let detail = if passed {
        format!("{checked} sequences, one valid rotation each")
    } else {
        bad.join("; ")
    };
    Ok(CriterionResult::new(4, CRITERION_NAMES[3], passed, detail))
}

/// 5: the level-class scheme covers 100 sampled `T_1000` for all `k <= 10`
/// and `j < k`.
pub fn scheme_cover_check(workers: usize) -> Result<CriterionResult> {
    let dist = OffspringDistribution::poisson();
    let n = 1000;
    // (k, j, number of centers, covered) per tree
    type Rows = Vec<(usize, usize, usize, bool)>;
    let per_tree: Vec<Result<Rows>> = run_trials(100, workers, |t| {
        let mut rng = RandomStream::new(VERIFY_SEED, t);
        let tree = ConditionedSampler::new(&dist, n)?
            .sample(&mut rng, default_max_attempts(n))?
            .tree;
        let mut out = Vec::new();
        for k in 1..=10 {
            for j in 0..k {
                let cert = scheme_cover(&tree, k, j);
                out.push((k, j, cert.centers.len(), verify_cover(&tree, &cert)));
            }
        }
        Ok(out)
    });
    let mut csv = String::from("trial,k,j,centers,covered\n");
    let mut failures = 0;
    let mut checks = 0;
    for (t, rows) in per_tree.into_iter().enumerate() {
        for (k, j, c, ok) in rows? {
            checks += 1;
            failures += usize::from(!ok);
            let _ = writeln!(csv, "{t},{k},{j},{c},{ok}");
        }
    }
    Ok(CriterionResult::new(
        5,
        CRITERION_NAMES[4],
        failures == 0,
        format!("{checks} covers checked, {failures} failures"),
    )
    .with_csv(csv))
}

/// 6: 10^5 conditioned geometric trees on 5 vertices against the uniform
/// law on the 14 plane trees, chi-square at significance 10^-3.
pub fn sampler_exactness(workers: usize) -> Result<CriterionResult> {
    let dist = OffspringDistribution::geometric();
    let law = conditioned_law(&dist, 5);
    let index: HashMap<Vec<u32>, usize> = law
        .iter()
        .enumerate()
        .map(|(i, (seq, _))| (seq.as_slice().to_vec(), i))
        .collect();
    let samples = 100_000u64;
    let drawn: Vec<Result<usize>> = run_trials(samples, workers, |t| {
        let mut rng = RandomStream::new(VERIFY_SEED, t);
        let tree = ConditionedSampler::new(&dist, 5)?
            .sample(&mut rng, default_max_attempts(5))?
            .tree;
        Ok(index[tree.degrees().as_slice()])
    });
    let mut counts = vec![0u64; law.len()];
    for d in drawn {
        counts[d?] += 1;
    }
    let mut stat = 0.0;
    let mut csv = String::from("tree,count,expected\n");
    for ((seq, p), &c) in law.iter().zip(&counts) {
        let e = p * samples as f64;
        stat += (c as f64 - e).powi(2) / e;
        let _ = writeln!(csv, "{seq},{c},{e}");
    }
    let df = (law.len() - 1) as f64;
    let p_value = 1.0 - ChiSquared::new(df).expect("df > 0").cdf(stat);
    Ok(CriterionResult::new(
        6,
        CRITERION_NAMES[5],
        law.len() == 14 && p_value >= CHI_SQUARE_SIGNIFICANCE,
        format!(
            "{} trees, chi2 = {stat:.3} on {df} df, p = {p_value:.4}",
            law.len()
        ),
    )
    .with_csv(csv))
}

/// 7: Borel law against its local-limit asymptote at `s = 10^4`, and the
/// empirical total-progeny law at `s = 1, 2, 3, 5, 10` from 10^6 trees.
pub fn borel_llt(workers: usize) -> Result<CriterionResult> {
    let s = 10_000u64;
    let ratio = borel_pmf(s) * (2.0 * std::f64::consts::PI * (s as f64).powi(3)).sqrt();
    let trials = 1_000_000u64;
    let est = estimate_progeny_pmf(
        &OffspringDistribution::poisson(),
        &[1, 2, 3, 5, 10],
        trials,
        VERIFY_SEED,
        workers,
    );
    let mut csv = String::from("s,estimate,stderr,borel,z\n");
    let mut worst: f64 = 0.0;
    for (s, e) in &est {
        let p = borel_pmf(*s);
        // reference standard error, from the exact probability
        let se = (p * (1.0 - p) / trials as f64).sqrt();
        let z = (e.value - p) / se;
        worst = worst.max(z.abs());
        let _ = writeln!(csv, "{s},{},{},{p},{z}", e.value, e.stderr);
    }
    let passed = (ratio - 1.0).abs() <= BOREL_LLT_TOLERANCE && worst <= Z_TOLERANCE;
    Ok(CriterionResult::new(
        7,
        CRITERION_NAMES[6],
        passed,
        format!("borel(1e4)*sqrt(2 pi s^3) = {ratio:.5}, max |z| = {worst:.3}"),
    )
    .with_csv(csv))
}

/// 8: `Pr(S_100 = 100)` from 10^6 sums against the local-limit value.
pub fn sum_llt(workers: usize) -> Result<CriterionResult> {
    let dist = OffspringDistribution::poisson();
    let trials = 1_000_000u64;
    let target = llt_sum_asymptote(&dist, 100, 100)?;
    let est = estimate_sum_probability(&dist, 100, 100, trials, VERIFY_SEED, workers);
    let se = (target * (1.0 - target) / trials as f64).sqrt();
    let z = (est.value - target) / se;
    let csv = format!(
        "parameter,estimate,stderr,asymptote\nsum_100_eq_100,{},{},{target}\n",
        est.value, est.stderr
    );
    Ok(CriterionResult::new(
        8,
        CRITERION_NAMES[7],
        z.abs() <= Z_TOLERANCE,
        format!("estimate {:.6} vs {target:.6}, z = {z:.3}", est.value),
    )
    .with_csv(csv))
}

/// 9: `k Pr(h >= k)` for the unconditioned Poisson tree at `k = 20, 50`.
pub fn height_tail(workers: usize) -> Result<CriterionResult> {
    let trials = 1_000_000u64;
    let tails = estimate_height_tail(
        &OffspringDistribution::poisson(),
        &[20, 50],
        trials,
        10_000_000,
        VERIFY_SEED,
        workers,
    );
    let mut csv = String::from("k,probability,stderr,scaled\n");
    let mut passed = true;
    let mut parts = Vec::new();
    for t in &tails {
        let scaled = t.k as f64 * t.probability;
        passed &= (HEIGHT_TAIL_WINDOW.0..=HEIGHT_TAIL_WINDOW.1).contains(&scaled);
        parts.push(format!("k = {}: k*P = {scaled:.4}", t.k));
        let _ = writeln!(csv, "{},{},{},{scaled}", t.k, t.probability, t.stderr);
    }
    Ok(CriterionResult::new(9, CRITERION_NAMES[8], passed, parts.join(", ")).with_csv(csv))
}

/// 10: maximum over `i <= 50` of the mean `P_i / (n i)` is finite and
/// stable between `n = 1000` and `n = 2000` (200 trees each).
pub fn pair_ratio(workers: usize) -> Result<CriterionResult> {
    let mut config = ExperimentConfig::new(
        OffspringDistribution::poisson(),
        vec![1000, 2000],
        200,
        VERIFY_SEED,
    );
    config.workers = workers;
    let rows = run_pairs(&config, 50)?;
    let maxima: Vec<f64> = rows
        .iter()
        .filter(|r| r.parameter.starts_with("pair_ratio_max"))
        .map(|r| r.estimate)
        .collect();
    let (a, b) = (maxima[0], maxima[1]);
    let rel = (a - b).abs() / a.max(b);
    let passed = a.is_finite() && b.is_finite() && rel <= PAIR_RATIO_RELATIVE_TOLERANCE;
    Ok(CriterionResult::new(
        10,
        CRITERION_NAMES[9],
        passed,
        format!("max ratio {a:.4} (n = 1000), {b:.4} (n = 2000), relative difference {rel:.4}"),
    )
    .with_csv(estimate_rows_csv(&rows)))
}

/// 11: slope of `log median bhat` against `log n` over `n = 10^3, 10^4, 10^5`.
pub fn scaling_exponent(workers: usize) -> Result<CriterionResult> {
    let mut config = ExperimentConfig::new(
        OffspringDistribution::poisson(),
        vec![1_000, 10_000, 100_000],
        50,
        VERIFY_SEED,
    );
    config.workers = workers;
    let report = run_scaling(&config)?;
    let medians: Vec<String> = report
        .rows
        .iter()
        .filter(|r| r.parameter.starts_with("median_bhat"))
        .map(|r| format!("{}", r.estimate))
        .collect();
    Ok(CriterionResult::new(
        11,
        CRITERION_NAMES[10],
        (SLOPE_WINDOW.0..=SLOPE_WINDOW.1).contains(&report.slope),
        format!("slope {:.4} (medians {})", report.slope, medians.join(", ")),
    )
    .with_csv(estimate_rows_csv(&report.rows)))
}

/// 12: fraction of `T_{10^5}` with `min_j |C_k^j| <= 2k - 1` at
/// `k = floor((n / 0.1)^(1/3)) = 100`.
pub fn ckj_frequency(workers: usize) -> Result<CriterionResult> {
    let mut config = ExperimentConfig::new(
        OffspringDistribution::poisson(),
        vec![100_000],
        200,
        VERIFY_SEED,
    );
    config.epsilon = 0.1;
    config.workers = workers;
    let rows = run_ckj(&config)?;
    let fraction = rows[0].estimate;
    Ok(CriterionResult::new(
        12,
        CRITERION_NAMES[11],
        fraction >= CKJ_MIN_FRACTION,
        format!("{} = {fraction}", rows[0].parameter),
    )
    .with_csv(estimate_rows_csv(&rows)))
}

/// Runs one of criteria 1-12.
pub fn run_criterion(id: u32, workers: usize) -> Result<CriterionResult> {
    match id {
        1 => path_formula(),
        2 => sandwich_sweep(),
        3 => greedy_optimality(),
        4 => rotation_lemma(),
        5 => scheme_cover_check(workers),
        6 => sampler_exactness(workers),
        7 => borel_llt(workers),
        8 => sum_llt(workers),
        9 => height_tail(workers),
        10 => pair_ratio(workers),
        11 => scaling_exponent(workers),
        12 => ckj_frequency(workers),
        _ => Err(Error::InvalidParameter(format!("no criterion {id}"))),
    }
}

/// Worker count used for the determinism rerun.
pub fn alternate_workers(workers: usize) -> usize {
    if workers == 1 {
        3
    } else {
        1
    }
}

/// 13: reruns criteria 5-12 with another worker count and compares CSVs
/// against `first` (results of 5-12 already computed).
pub fn determinism(first: &[CriterionResult], workers: usize) -> Result<CriterionResult> {
    let other = alternate_workers(workers);
    let mut differing = Vec::new();
    for id in 5..=12 {
        let original = first
            .iter()
            .find(|r| r.id == id)
            .ok_or_else(|| Error::InvalidParameter(format!("criterion {id} has not run")))?;
        let rerun = run_criterion(id, other)?;
        if original.csv != rerun.csv || original.csv.is_none() {
            differing.push(id.to_string());
        }
    }
    let passed = differing.is_empty();
    let detail = if passed {
        format!("criteria 5-12 byte-identical with {workers} and {other} workers")
    } else {
        format!("output differs for criteria {}", differing.join(", "))
    };
    Ok(CriterionResult::new(
        13,
        CRITERION_NAMES[12],
        passed,
        detail,
    ))
}

/// Runs a suite, calling `report` after each criterion. Criterion 13 runs
/// the statistical criteria it needs if they are not part of the suite.
pub fn run_suite(
    suite: Suite,
    workers: usize,
    mut report: impl FnMut(&CriterionResult),
) -> Result<Vec<CriterionResult>> {
    let mut results: Vec<CriterionResult> = Vec::new();
    for id in suite.criteria() {
        let r = if id == 13 {
            determinism(&results, workers)?
        } else {
            run_criterion(id, workers)?
        };
        report(&r);
        results.push(r);
    }
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!("oracle".parse::<Suite>().unwrap(), Suite::Oracle);
        assert_eq!(Suite::All.criteria().len(), 13);
        assert!("fast".parse::<Suite>().is_err());
    }

    #[test]
    fn result_lines() {
        let r = CriterionResult::new(7, "borel-llt", true, "ok".into());
        assert_eq!(r.line(), "PASS  7 borel-llt: ok");
    }

    #[test]
    fn rotation_criterion_passes() {
        assert!(rotation_lemma().unwrap().passed);
    }
}
