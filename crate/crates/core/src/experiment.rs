//! Seeded experiment runners behind the command-line tool, and their CSV and
//! JSON writers.
//!
//! Streams: in every runner the trial with global index `g` (counting across
//! all requested `n`, in order) draws from `RandomStream::new(seed, g)`.
//! Results are collected in trial order, so output bytes never depend on the
//! worker count.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::burning::{
    bhat_exact, burning_number_exact, known_bounds, pair_lower_bound, scheme_upper_bound,
    DEFAULT_NODE_CAP,
};
use crate::error::{Error, Result};
use crate::offspring::OffspringDistribution;
use crate::sampler::{default_max_attempts, ConditionedSampler, RandomStream};
use crate::stats::pairs::check_pair_budget;
use crate::stats::{
    estimate_height_tail, estimate_pair_ratio, estimate_subtree_tail, DEFAULT_PAIR_CAP,
};
use crate::tree::Tree;
use crate::trials::{mean_and_stderr, proportion, run_trials};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Settings shared by all runners.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub offspring: OffspringDistribution,
    pub n_values: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    pub epsilon: f64,
    pub k_values: Vec<u64>,
    pub workers: usize,
    pub node_cap: usize,
    pub pair_cap: u64,
    /// Record per-trial wall time (makes output nondeterministic).
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(
        offspring: OffspringDistribution,
        n_values: Vec<usize>,
        trials: u64,
        seed: u64,
    ) -> Self {
        ExperimentConfig {
            offspring,
            n_values,
            trials,
            seed,
            epsilon: 0.1,
            k_values: Vec::new(),
            workers: 1,
            node_cap: DEFAULT_NODE_CAP,
            pair_cap: DEFAULT_PAIR_CAP,
            timing: false,
        }
    }

    /// Checks everything that can be checked before any work starts.
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must lie in (0, 1], got {}",
                self.epsilon
            )));
        }
        for &n in &self.n_values {
            if n == 0 {
                return Err(Error::InvalidParameter("n must be at least 1".into()));
            }
            self.offspring.require_size(n as u64)?;
        }
        Ok(())
    }

    fn require_n(&self) -> Result<()> {
        if self.n_values.is_empty() {
            return Err(Error::InvalidParameter(
                "at least one --n is required".into(),
            ));
        }
        Ok(())
    }
}

/// One sampled (or supplied) tree and everything measured on it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial_index: u64,
    pub n: usize,
    pub seed: u64,
    pub rejection_attempts: u64,
    pub bhat: usize,
    pub scheme_bound: usize,
    /// Certified `k` of the pair-count bound, so `b >= pair_lb + 1`; absent
    /// when the tree is over the pair budget.
    pub pair_lb: Option<usize>,
    /// Smallest of the closed-form bounds in `n`; absent for `n = 1`.
    pub known_bound: Option<u64>,
    pub exact_b: Option<usize>,
    pub height: usize,
    pub diameter: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl TrialRecord {
    /// The ordering `pair_lb + 1 <= bhat <= exact_b <= 2 bhat`, plus every
    /// upper bound dominating `exact_b` (or `bhat` when `exact_b` is absent).
    pub fn check(&self) -> Result<()> {
        let fail = |what: &str| {
            Err(Error::InvariantViolation(format!(
                "trial {} (n = {}): {what}: {self:?}",
                self.trial_index, self.n
            )))
        };
        if let Some(lb) = self.pair_lb {
            if lb + 1 > self.bhat {
                return fail("pair_lb + 1 > bhat");
            }
        }
        let b = match self.exact_b {
            Some(b) => {
                if b < self.bhat || b > 2 * self.bhat {
                    return fail("exact_b outside [bhat, 2 bhat]");
                }
                b
            }
            None => self.bhat,
        };
        if b > self.scheme_bound {
            return fail("scheme bound below the burning number");
        }
        if let Some(known) = self.known_bound {
            if b as u64 > known {
                return fail("known bound below the burning number");
            }
        }
        Ok(())
    }
}

/// Everything `bounds` reports for one tree. The record is checked before
/// it is returned.
pub fn measure_tree(
    tree: &Tree,
    trial_index: u64,
    seed: u64,
    rejection_attempts: u64,
    config: &ExperimentConfig,
) -> Result<TrialRecord> {
    let start = Instant::now();
    let n = tree.n();
    let (bhat, _) = bhat_exact(tree);
    let scheme_bound = scheme_upper_bound(tree).bound;
    let pair_lb = if check_pair_budget(n, config.pair_cap).is_ok() {
        Some(pair_lower_bound(tree, config.pair_cap)?.k)
    } else {
        None
    };
    let exact_b = if n <= config.node_cap {
        Some(burning_number_exact(tree, config.node_cap)?.0)
    } else {
        None
    };
    let record = TrialRecord {
        trial_index,
        n,
        seed,
        rejection_attempts,
        bhat,
        scheme_bound,
        pair_lb,
        known_bound: (n >= 2).then(|| known_bounds(n as u64).min()),
        exact_b,
        height: tree.height(),
        diameter: tree.diameter(),
        wall_time_ms: config.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    };
    record.check()?;
    Ok(record)
}

/// `(global index, n)` for every trial, in output order.
fn trial_plan(config: &ExperimentConfig) -> Vec<(u64, usize)> {
    let mut plan = Vec::with_capacity(config.n_values.len() * config.trials as usize);
    for (a, &n) in config.n_values.iter().enumerate() {
        for t in 0..config.trials {
            plan.push((a as u64 * config.trials + t, n));
        }
    }
    plan
}

fn sample_tree(config: &ExperimentConfig, index: u64, n: usize) -> Result<(Tree, u64)> {
    let mut rng = RandomStream::new(config.seed, index);
    let s =
        ConditionedSampler::new(&config.offspring, n)?.sample(&mut rng, default_max_attempts(n))?;
    Ok((s.tree, s.attempts))
}

/// Sampled trees in trial order, with their rejection attempt counts.
pub fn run_sample(config: &ExperimentConfig) -> Result<Vec<(u64, Tree, u64)>> {
    config.validate()?;
    config.require_n()?;
    let plan = trial_plan(config);
    run_trials(plan.len() as u64, config.workers, |i| {
        let (g, n) = plan[i as usize];
        sample_tree(config, g, n).map(|(t, a)| (g, t, a))
    })
    .into_iter()
    .collect()
}

/// Samples trees and measures every bound on each.
pub fn run_bounds(config: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    config.validate()?;
    config.require_n()?;
    let plan = trial_plan(config);
    run_trials(plan.len() as u64, config.workers, |i| {
        let (g, n) = plan[i as usize];
        let (tree, attempts) = sample_tree(config, g, n)?;
        measure_tree(&tree, g, config.seed, attempts, config)
    })
    .into_iter()
    .collect()
}

/// One line of estimator output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateRow {
    pub parameter: String,
    pub estimate: f64,
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
}

impl EstimateRow {
    fn new(parameter: String, estimate: f64, stderr: f64, trials: u64, seed: u64) -> Self {
        EstimateRow {
            parameter,
            estimate,
            stderr,
            trials,
            seed,
        }
    }
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let m = values.len();
    if m % 2 == 1 {
        values[m / 2]
    } else {
        (values[m / 2 - 1] + values[m / 2]) / 2.0
    }
}

/// Least-squares fit `y = a + b x`; returns `(b, stderr of b)`. The standard
/// error is NaN when there are fewer than three points.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let stderr = if xs.len() > 2 {
        (rss / (m - 2.0) / sxx).sqrt()
    } else {
        f64::NAN
    };
    (slope, stderr)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport {
    /// Per-trial `bhat` and `scheme_bound` (no exact or pair work).
    pub records: Vec<TrialRecord>,
    /// `median_bhat:n=..`, `median_scheme_bound:n=..` per n, then `slope`.
    pub rows: Vec<EstimateRow>,
    pub slope: f64,
}

/// Median `bhat` per `n` and the slope of `log(median bhat)` against `log n`.
pub fn run_scaling(config: &ExperimentConfig) -> Result<ScalingReport> {
    config.validate()?;
    let mut distinct = config.n_values.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "a scaling fit needs at least 3 distinct n, got {}",
            distinct.len()
        )));
    }
    let plan = trial_plan(config);
    let records: Vec<TrialRecord> = run_trials(plan.len() as u64, config.workers, |i| {
        let (g, n) = plan[i as usize];
        let start = Instant::now();
        let (tree, attempts) = sample_tree(config, g, n)?;
        let record = TrialRecord {
            trial_index: g,
            n,
            seed: config.seed,
            rejection_attempts: attempts,
            bhat: bhat_exact(&tree).0,
            scheme_bound: scheme_upper_bound(&tree).bound,
            pair_lb: None,
            known_bound: (n >= 2).then(|| known_bounds(n as u64).min()),
            exact_b: None,
            height: tree.height(),
            diameter: tree.diameter(),
            wall_time_ms: config.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
        };
        record.check()?;
        Ok(record)
    })
    .into_iter()
    .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for &n in &distinct {
        let of_n: Vec<&TrialRecord> = records.iter().filter(|r| r.n == n).collect();
        let count = of_n.len() as u64;
        for (label, pick) in [
            (
                "median_bhat",
                (|r: &TrialRecord| r.bhat) as fn(&TrialRecord) -> usize,
            ),
            ("median_scheme_bound", |r: &TrialRecord| r.scheme_bound),
        ] {
            let mut values: Vec<f64> = of_n.iter().map(|r| pick(r) as f64).collect();
            let (_, se_mean) = mean_and_stderr(&values);
            let med = median(&mut values);
            // normal-theory standard error of a median
            let se = se_mean * (std::f64::consts::PI / 2.0).sqrt();
            rows.push(EstimateRow::new(
                format!("{label}:n={n}"),
                med,
                se,
                count,
                config.seed,
            ));
            if label == "median_bhat" {
                xs.push((n as f64).ln());
                ys.push(med.ln());
            }
        }
    }
    let (slope, slope_se) = least_squares_slope(&xs, &ys);
    rows.push(EstimateRow::new(
        "slope".into(),
        slope,
        slope_se,
        config.trials,
        config.seed,
    ));
    Ok(ScalingReport {
        records,
        rows,
        slope,
    })
}

/// Largest `k` with `k^3 <= n / epsilon`, at least 1.
pub fn ckj_k(n: usize, epsilon: f64) -> usize {
    let x = n as f64 / epsilon;
    // relative slack absorbs rounding in n / epsilon (10^5 / 0.1 must give 100)
    let fits = |k: usize| (k as f64).powi(3) <= x * (1.0 + 1e-12);
    let mut k = x.cbrt().floor().max(1.0) as usize;
    while fits(k + 1) {
        k += 1;
    }
    while k > 1 && !fits(k) {
        k -= 1;
    }
    k
}

/// For each `n`, the fraction of trees with `min_j |C_k^j| <= 2k - 1` at
/// `k = ckj_k(n, epsilon)`, and the mean of that minimum.
pub fn run_ckj(config: &ExperimentConfig) -> Result<Vec<EstimateRow>> {
    config.validate()?;
    config.require_n()?;
    let plan = trial_plan(config);
    let minima: Vec<usize> = run_trials(plan.len() as u64, config.workers, |i| {
        let (g, n) = plan[i as usize];
        let (tree, _) = sample_tree(config, g, n)?;
        let k = ckj_k(n, config.epsilon);
        Ok(tree.c_k_sizes(k).into_iter().min().expect("k >= 1"))
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for (a, &n) in config.n_values.iter().enumerate() {
        let k = ckj_k(n, config.epsilon);
        let t = config.trials as usize;
        let chunk = &minima[a * t..(a + 1) * t];
        let hits = chunk.iter().filter(|&&m| m < 2 * k).count() as u64;
        let (fraction, se) = proportion(hits, config.trials);
        let tag = format!("n={n}:epsilon={}:k={k}", config.epsilon);
        rows.push(EstimateRow::new(
            format!("ckj_fraction:{tag}"),
            fraction,
            se,
            config.trials,
            config.seed,
        ));
        let sizes: Vec<f64> = chunk.iter().map(|&m| m as f64).collect();
        let (mean, se) = mean_and_stderr(&sizes);
        rows.push(EstimateRow::new(
            format!("ckj_min_class:{tag}"),
            mean,
            se,
            config.trials,
            config.seed,
        ));
    }
    Ok(rows)
}

/// `E[P_i(T_n)] / (n i)` for `i = 1..=i_max` per `n`, plus the maximum over
/// `i` (reported with that entry's standard error). The trials of the `a`-th
/// `n` use seed `seed + a`.
pub fn run_pairs(config: &ExperimentConfig, i_max: usize) -> Result<Vec<EstimateRow>> {
    config.validate()?;
    config.require_n()?;
    let mut rows = Vec::new();
    for (a, &n) in config.n_values.iter().enumerate() {
        let seed = config.seed.wrapping_add(a as u64);
        let est = estimate_pair_ratio(
            &config.offspring,
            n,
            i_max,
            config.trials,
            seed,
            config.workers,
        )?;
        for r in &est {
            rows.push(EstimateRow::new(
                format!("pair_ratio:n={n}:i={}", r.i),
                r.mean,
                r.stderr,
                config.trials,
                seed,
            ));
        }
        if let Some(best) = est.iter().max_by(|x, y| x.mean.total_cmp(&y.mean)) {
            rows.push(EstimateRow::new(
                format!("pair_ratio_max:n={n}:i={}", best.i),
                best.mean,
                best.stderr,
                config.trials,
                seed,
            ));
        }
    }
    Ok(rows)
}

/// Height tail `Pr(h >= k)` of the unconditioned tree for each `k`, then for
/// each `n` the subtree tail `Pr(h(τ_u) >= k)` under `T_n` (seed `seed + 1 + a`).
pub fn run_tails(config: &ExperimentConfig, size_cap: u64) -> Result<Vec<EstimateRow>> {
    config.validate()?;
    if config.k_values.is_empty() {
        return Err(Error::InvalidParameter(
            "at least one --k is required".into(),
        ));
    }
    let mut rows = Vec::new();
    let tails = estimate_height_tail(
        &config.offspring,
        &config.k_values,
        config.trials,
        size_cap,
        config.seed,
        config.workers,
    );
    for t in tails {
        rows.push(EstimateRow::new(
            format!("height_tail:k={}", t.k),
            t.probability,
            t.stderr,
            config.trials,
            config.seed,
        ));
    }
    for (a, &n) in config.n_values.iter().enumerate() {
        let seed = config.seed.wrapping_add(1 + a as u64);
        for &k in &config.k_values {
            let t = estimate_subtree_tail(
                &config.offspring,
                n,
                k,
                config.trials,
                seed,
                config.workers,
            )?;
            rows.push(EstimateRow::new(
                format!("subtree_tail:n={n}:k={k}"),
                t.probability,
                t.stderr,
                config.trials,
                seed,
            ));
        }
    }
    Ok(rows)
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

pub const TRIAL_CSV_HEADER: &str =
    "trial_index,n,seed,rejection_attempts,bhat,scheme_bound,pair_lb,known_bound,exact_b,height,diameter";

/// Header row plus one line per record. The `wall_time_ms` column appears
/// only when some record carries a time.
pub fn trial_records_csv(records: &[TrialRecord]) -> String {
    let timed = records.iter().any(|r| r.wall_time_ms.is_some());
    let mut out = String::from(TRIAL_CSV_HEADER);
    if timed {
        out.push_str(",wall_time_ms");
    }
    out.push('\n');
    for r in records {
        let _ = write!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.trial_index,
            r.n,
            r.seed,
            r.rejection_attempts,
            r.bhat,
            r.scheme_bound,
            opt(&r.pair_lb),
            opt(&r.known_bound),
            opt(&r.exact_b),
            r.height,
            r.diameter
        );
        if timed {
            let _ = write!(out, ",{}", opt(&r.wall_time_ms));
        }
        out.push('\n');
    }
    out
}

pub const ESTIMATE_CSV_HEADER: &str = "parameter,estimate,stderr,trials,seed";

pub fn estimate_rows_csv(rows: &[EstimateRow]) -> String {
    let mut out = format!("{ESTIMATE_CSV_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.parameter, r.estimate, r.stderr, r.trials, r.seed
        );
    }
    out
}

/// Pretty JSON array; non-finite numbers become `null`.
pub fn to_json<T: Serialize>(items: &[T]) -> String {
    let mut s = serde_json::to_string_pretty(items).expect("records serialize");
    s.push('\n');
    s
}

/// Summary line per sampled tree for `sample`.
pub const SAMPLE_CSV_HEADER: &str =
    "trial_index,n,seed,rejection_attempts,height,diameter,leaves,file";
