//! Distance-pair profiles `P_i` (pairs at distance exactly `i`) and their
//! prefix sums `Q_j` (pairs at distance at most `j`).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tree::Tree;

/// Default pair budget: `n(n-1)/2` up to this many pairs (n = 20000).
pub const DEFAULT_PAIR_CAP: u64 = 20_000 * 19_999 / 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCountProfile {
    pub n: usize,
    /// `p[i]` = number of unordered pairs at distance `i`; `p[0] = 0`.
    pub p: Vec<u64>,
    /// `q[j]` = pairs at distance at most `j`.
    pub q: Vec<u64>,
    /// Largest distance counted; profiles may be truncated below the diameter.
    pub max_distance: usize,
}

impl PairCountProfile {
    fn from_ordered_counts(n: usize, ordered: Vec<u64>, max_distance: usize) -> Self {
        let mut p: Vec<u64> = ordered.into_iter().map(|c| c / 2).collect();
        if p.is_empty() {
            p.push(0);
        }
        p[0] = 0;
        let mut q = Vec::with_capacity(p.len());
        let mut acc = 0;
        for &c in &p {
            acc += c;
            q.push(acc);
        }
        PairCountProfile {
            n,
            p,
            q,
            max_distance,
        }
    }

    /// `P_i`, zero beyond the profile.
    pub fn p_at(&self, i: usize) -> u64 {
        self.p.get(i).copied().unwrap_or(0)
    }

    /// `Q_j`; only meaningful for `j <= max_distance`.
    pub fn q_at(&self, j: usize) -> u64 {
        if j < self.q.len() {
            self.q[j]
        } else {
            *self.q.last().expect("q[0] always present")
        }
    }

    pub fn total_pairs(&self) -> u64 {
        self.q_at(self.p.len())
    }
}

pub(crate) fn check_pair_budget(n: usize, pair_cap: u64) -> Result<()> {
    let pairs = n as u64 * (n as u64).saturating_sub(1) / 2;
    if pairs > pair_cap {
        return Err(Error::CapExceeded {
            what: "pair-count work",
            requested: pairs,
            cap: pair_cap,
        });
    }
    Ok(())
}

/// Counts pairs at distance `1..=max_distance` with one truncated BFS per
/// source vertex.
pub fn pair_counts_within(
    tree: &Tree,
    max_distance: usize,
    pair_cap: u64,
) -> Result<PairCountProfile> {
    let n = tree.n();
    check_pair_budget(n, pair_cap)?;
    let mut ordered = vec![0u64; max_distance.min(n) + 1];
    let mut dist = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    for source in 0..n {
        tree.bfs_limited(source, max_distance, &mut dist, &mut order);
        for &v in &order {
            let d = &mut dist[v as usize];
            ordered[*d as usize] += 1;
            *d = u32::MAX;
        }
    }
    while ordered.len() > 1 && *ordered.last().unwrap() == 0 {
        ordered.pop();
    }
    Ok(PairCountProfile::from_ordered_counts(
        n,
        ordered,
        max_distance,
    ))
}

/// Exact all-pairs profile: BFS from every vertex, O(n^2).
pub fn pair_counts(tree: &Tree, pair_cap: u64) -> Result<PairCountProfile> {
    let mut profile = pair_counts_within(tree, usize::MAX, pair_cap)?;
    profile.max_distance = profile.p.len().saturating_sub(1);
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_four() {
        let prof = pair_counts(&Tree::path(4), DEFAULT_PAIR_CAP).unwrap();
        assert_eq!(prof.p, vec![0, 3, 2, 1]);
        assert_eq!(prof.q, vec![0, 3, 5, 6]);
        assert_eq!(prof.total_pairs(), 6);
    }

    #[test]
    fn star_five() {
        let prof = pair_counts(&Tree::star(5), DEFAULT_PAIR_CAP).unwrap();
        assert_eq!((prof.p_at(1), prof.p_at(2), prof.p_at(3)), (5, 10, 0));
    }

    #[test]
    fn single_vertex() {
        let prof = pair_counts(&Tree::path(1), DEFAULT_PAIR_CAP).unwrap();
        assert_eq!(prof.total_pairs(), 0);
        assert_eq!(prof.p, vec![0]);
    }

    #[test]
    fn paths_closed_form() {
        for n in 1..40 {
            let prof = pair_counts(&Tree::path(n), DEFAULT_PAIR_CAP).unwrap();
            for i in 1..n {
                assert_eq!(prof.p_at(i), (n - i) as u64);
            }
            assert_eq!(prof.max_distance, n - 1);
        }
    }

    #[test]
    fn truncated_matches_full() {
        let t = Tree::from_degrees(vec![3, 1, 1, 0, 2, 0, 1, 0, 1, 0]).unwrap();
        let full = pair_counts(&t, DEFAULT_PAIR_CAP).unwrap();
        for r in 0..8 {
            let part = pair_counts_within(&t, r, DEFAULT_PAIR_CAP).unwrap();
            for j in 0..=r {
                assert_eq!(part.q_at(j), full.q_at(j), "r={r} j={j}");
            }
        }
    }

    #[test]
    fn cap() {
        assert!(matches!(
            pair_counts(&Tree::path(100), 100),
            Err(Error::CapExceeded { .. })
        ));
        assert!(pair_counts(&Tree::path(15), 105).is_ok());
    }
}
