//! Brute-force reference computations for small trees.
//!
//! Nothing here shares code paths with the solvers it is used to check: covers
//! are found by subset enumeration, burning numbers by trying every schedule
//! under the process simulator, and rotations by testing each one.

use crate::burning::{burns_within, BurningSchedule};
use crate::offspring::OffspringDistribution;
use crate::tree::{enumerate_trees_capped, validate, PreorderDegreeSequence, Tree};

fn pairwise(tree: &Tree) -> Vec<Vec<usize>> {
    (0..tree.n())
        .map(|u| (0..tree.n()).map(|v| tree.distance(u, v)).collect())
        .collect()
}

fn covers(dist: &[Vec<usize>], centers: &[usize], r: usize) -> bool {
    (0..dist.len()).all(|v| centers.iter().any(|&c| dist[c][v] <= r))
}

/// Calls `f` on every `size`-subset of `0..n` (increasing order) until it
/// returns true.
fn any_subset(n: usize, size: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        start: usize,
        n: usize,
        left: usize,
        cur: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if left == 0 {
            return f(cur);
        }
        for v in start..=n - left {
            cur.push(v);
            if rec(v + 1, n, left - 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    size <= n && rec(0, n, size, &mut Vec::new(), f)
}

/// Fewest radius-`r` balls covering the tree, by subset enumeration.
pub fn brute_force_min_cover(tree: &Tree, r: usize) -> usize {
    let dist = pairwise(tree);
    (1..=tree.n())
        .find(|&size| any_subset(tree.n(), size, &mut |c| covers(&dist, c, r)))
        .expect("all vertices always cover")
}

/// Smallest `k` such that some `k` balls of radius `k` cover the tree.
pub fn brute_force_bhat(tree: &Tree) -> usize {
    let dist = pairwise(tree);
    (1..=tree.n())
        .find(|&k| any_subset(tree.n(), k.min(tree.n()), &mut |c| covers(&dist, c, k)))
        .expect("k = n always works")
}

/// Whether some legal schedule burns the tree within `k` rounds. Schedules of
/// `k` sources and of `k - 1` sources followed by a spreading round are tried.
pub fn burns_in(tree: &Tree, k: usize) -> bool {
    (k.saturating_sub(1).max(1)..=k).any(|len| {
        let n = tree.n();
        let mut seq = vec![0usize; len];
        loop {
            if let Ok(true) = burns_within(tree, &BurningSchedule::new(seq.clone()), k) {
                return true;
            }
            // odometer increment
            let mut pos = len;
            loop {
                if pos == 0 {
                    return false;
                }
                pos -= 1;
                seq[pos] += 1;
                if seq[pos] < n {
                    break;
                }
                seq[pos] = 0;
            }
        }
    })
}

/// Burning number by trying every schedule of length 1, 2, ...
pub fn brute_force_burning_number(tree: &Tree) -> usize {
    (1..=tree.n())
        .find(|&k| burns_in(tree, k))
        .expect("n rounds always suffice")
}

/// Every rotation offset whose left rotation validates.
pub fn valid_rotations(degrees: &[u32]) -> Vec<usize> {
    (0..degrees.len())
        .filter(|&r| {
            let mut v = degrees.to_vec();
            v.rotate_left(r);
            validate(&v)
        })
        .collect()
}

/// Exact law of the conditioned tree on `s` vertices: each ordered tree is
/// weighted by the product of its offspring probabilities, then normalized.
pub fn conditioned_law(
    dist: &OffspringDistribution,
    s: usize,
) -> Vec<(PreorderDegreeSequence, f64)> {
    let trees: Vec<(PreorderDegreeSequence, f64)> = enumerate_trees_capped(s, usize::MAX)
        .expect("s >= 1")
        .map(|seq| {
            let w = seq
                .as_slice()
                .iter()
                .map(|&d| dist.probability(d))
                .product();
            (seq, w)
        })
        .collect();
    let total: f64 = trees.iter().map(|(_, w)| w).sum();
    trees.into_iter().map(|(s, w)| (s, w / total)).collect()
}

/// Every sequence of length `s` with entries in `0..=max_entry` summing to `s - 1`.
pub fn sequences_with_sum(s: usize, max_entry: u32) -> Vec<Vec<u32>> {
    fn rec(s: usize, max_entry: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == s {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for d in 0..=max_entry.min(left) {
            cur.push(d);
            rec(s, max_entry, left - d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(s, max_entry, s as u32 - 1, &mut Vec::new(), &mut out);
    out
}

/// Every sequence of length `s` with entries in `0..=max_entry`.
pub fn all_sequences(s: usize, max_entry: u32) -> Vec<Vec<u32>> {
    let base = max_entry as usize + 1;
    let total = base.pow(s as u32);
    (0..total)
        .map(|mut code| {
            (0..s)
                .map(|_| {
                    let d = (code % base) as u32;
                    code /= base;
                    d
                })
                .collect()
        })
        .collect()
}
