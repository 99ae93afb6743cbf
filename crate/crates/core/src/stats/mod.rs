//! Pair-distance statistics, Monte Carlo estimators and closed-form oracles.

mod estimate;
mod llt;
pub mod pairs;

pub use estimate::{
    estimate_height_tail, estimate_pair_ratio, estimate_progeny_pmf, estimate_subtree_tail,
    estimate_sum_probability, PointEstimate, RatioEstimate, TailEstimate,
};
pub use llt::{borel_pmf, llt_size_asymptote, llt_sum_asymptote};
pub use pairs::{pair_counts, pair_counts_within, PairCountProfile, DEFAULT_PAIR_CAP};
