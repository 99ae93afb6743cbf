//! Ordered parallel execution of independent trials.

use rayon::prelude::*;

/// Runs `f(0), f(1), ..., f(count - 1)` on a pool of `workers` threads
/// (0 = one per core) and returns the results in trial order, so the output
/// does not depend on scheduling.
pub fn run_trials<T, F>(count: u64, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    pool.install(|| (0..count).into_par_iter().map(&f).collect())
}

/// Mean and standard error (sample standard deviation over sqrt(count)).
pub fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, f64::NAN);
    }
    let ss: f64 = values.iter().map(|x| (x - mean) * (x - mean)).sum();
    (mean, (ss / (n - 1) as f64 / n as f64).sqrt())
}

/// Empirical frequency of `hits` out of `trials` with its binomial standard error.
pub fn proportion(hits: u64, trials: u64) -> (f64, f64) {
    let p = hits as f64 / trials as f64;
    (p, (p * (1.0 - p) / trials as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_independent_of_workers() {
        let a = run_trials(100, 1, |i| i * i);
        let b = run_trials(100, 3, |i| i * i);
        assert_eq!(a, b);
        assert_eq!(a[7], 49);
    }

    #[test]
    fn summary_statistics() {
        let (m, se) = mean_and_stderr(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((se - (5.0f64 / 12.0).sqrt()).abs() < 1e-12);
        let (m, se) = mean_and_stderr(&[2.0, 2.0, 2.0]);
        assert_eq!((m, se), (2.0, 0.0));
        let (p, se) = proportion(25, 100);
        assert_eq!(p, 0.25);
        assert!((se - (0.25f64 * 0.75 / 100.0).sqrt()).abs() < 1e-15);
    }
}
