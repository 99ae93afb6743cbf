//! Pair-count lower bound on the covering number.
//!
//! If `k` balls of radius at most `k` covered the tree, assigning each vertex
//! to one ball would split it into at most `k` parts of diameter at most `2k`,
//! forcing `Q_{2k} >= n^2/(2k) - n/2` by convexity. A tree with fewer close
//! pairs than that therefore has `bhat > k`.

use serde::Serialize;

use crate::error::Result;
use crate::stats::pairs::{check_pair_budget, pair_counts_within};
use crate::tree::Tree;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBoundCertificate {
    pub k: usize,
    /// `Q_{2k}` of the tree.
    pub q_value: u64,
    /// The threshold `n^2/(2k) - n/2` as the fraction `(n^2 - k n) / (2k)`.
    pub threshold_numerator: i128,
    pub threshold_denominator: i128,
}

impl LowerBoundCertificate {
    /// Re-checks `q_value < threshold` in exact arithmetic.
    pub fn holds(&self) -> bool {
        (self.q_value as i128) * self.threshold_denominator < self.threshold_numerator
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairLowerBound {
    /// Largest certified `k` (so `bhat >= k + 1`); zero when nothing certifies.
    pub k: usize,
    pub certificate: Option<LowerBoundCertificate>,
}

fn certificate(n: usize, k: usize, q_value: u64) -> LowerBoundCertificate {
    let n = n as i128;
    let k_ = k as i128;
    LowerBoundCertificate {
        k,
        q_value,
        threshold_numerator: n * n - k_ * n,
        threshold_denominator: 2 * k_,
    }
}

/// Largest `k` with `Q_{2k} < n^2/(2k) - n/2`.
///
/// The certified set of `k` is downward closed (`Q` grows and the threshold
/// shrinks with `k`), so the scan stops at the first failure.
pub fn pair_lower_bound(tree: &Tree, pair_cap: u64) -> Result<PairLowerBound> {
    let n = tree.n();
    check_pair_budget(n, pair_cap)?;
    let mut best: Option<LowerBoundCertificate> = None;
    let mut radius = 8usize;
    let mut profile = pair_counts_within(tree, radius, pair_cap)?;
    let mut k = 1usize;
    // the threshold is non-positive once k >= n
    while k < n.max(1) {
        if 2 * k > radius {
            radius = (radius * 2).max(2 * k);
            profile = pair_counts_within(tree, radius, pair_cap)?;
        }
        let cert = certificate(n, k, profile.q_at(2 * k));
        if !cert.holds() {
            break;
        }
        best = Some(cert);
        k += 1;
    }
    Ok(PairLowerBound {
        k: best.as_ref().map_or(0, |c| c.k),
        certificate: best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burning::cover::bhat_exact;
    use crate::stats::pairs::DEFAULT_PAIR_CAP;

    #[test]
    fn single_vertex() {
        let lb = pair_lower_bound(&Tree::path(1), DEFAULT_PAIR_CAP).unwrap();
        assert_eq!(
            lb,
            PairLowerBound {
                k: 0,
                certificate: None
            }
        );
    }

    #[test]
    fn path_hundred() {
        let t = Tree::path(100);
        let lb = pair_lower_bound(&t, DEFAULT_PAIR_CAP).unwrap();
        // Q_{2k}(P_100) = sum_{i<=2k} (100 - i); k = 3: Q_6 = 579 < 10000/6 - 50
        // k = 4: Q_8 = 764 < 1200; k = 5: Q_10 = 945 < 950; k = 6: Q_12 = 1122 > 783.3
        assert_eq!(lb.k, 5);
        let cert = lb.certificate.unwrap();
        assert_eq!(cert.q_value, 945);
        assert!(cert.holds());
        assert!(lb.k < bhat_exact(&t).0);
    }

    #[test]
    fn star_has_no_certificate() {
        // Q_2 covers every pair
        let lb = pair_lower_bound(&Tree::star(8), DEFAULT_PAIR_CAP).unwrap();
        assert_eq!(lb.k, 0);
    }
}
