//! Exact burning number by iterative deepening over ball covers.
//!
//! `b(T)` is the least `k` for which balls of radii `k-1, k-2, ..., 0` can be
//! centred so that they cover every vertex. The search represents vertex sets
//! as `u64` masks, so it is limited to 64 vertices.

use std::collections::HashSet;

use super::process::{burns_within, BurningSchedule};
use crate::error::{Error, Result};
use crate::tree::Tree;

pub const DEFAULT_NODE_CAP: usize = 64;
/// Hard limit of the bitmask representation.
pub const MAX_EXACT_VERTICES: usize = 64;

struct Search<'a> {
    n: usize,
    full: u64,
    /// `balls[c][r]` = vertices within distance r of c.
    balls: &'a [Vec<u64>],
    dist: &'a [Vec<u8>],
    /// Largest ball of each radius.
    max_ball: &'a [u32],
    start_vertex: usize,
    /// `(covered, used radii)` states already shown to fail.
    failed: HashSet<(u64, u64)>,
    centers: &'a mut Vec<Option<usize>>,
}

impl Search<'_> {
    fn solve(&mut self, covered: u64, used: u64, k: usize) -> bool {
        if covered == self.full {
            return true;
        }
        let uncovered = (self.full & !covered).count_ones();
        let capacity: u32 = (0..k)
            .filter(|&r| used & (1u64 << r) == 0)
            .map(|r| self.max_ball[r])
            .sum();
        if capacity < uncovered {
            return false;
        }
        if self.failed.contains(&(covered, used)) {
            return false;
        }

        let target = self.pick_target(covered);
        for r in (0..k).rev() {
            if used & (1u64 << r) != 0 {
                continue;
            }
            // candidate centers for this radius, minus dominated ones
            let mut options: Vec<(u64, usize)> = (0..self.n)
                .filter(|&c| self.dist[target][c] as usize <= r)
                .map(|c| (self.balls[c][r] & !covered, c))
                .collect();
            options.sort_by(|a, b| b.0.count_ones().cmp(&a.0.count_ones()).then(a.1.cmp(&b.1)));
            let mut kept: Vec<(u64, usize)> = Vec::with_capacity(options.len());
            for (gain, c) in options {
                if kept.iter().all(|&(g, _)| gain & !g != 0) {
                    kept.push((gain, c));
                }
            }
            for (gain, c) in kept {
                self.centers[r] = Some(c);
                if self.solve(covered | gain, used | (1u64 << r), k) {
                    return true;
                }
                self.centers[r] = None;
            }
        }
        self.failed.insert((covered, used));
        false
    }

    /// The uncovered vertex farthest from every placed center (smallest index
    /// on ties); before any center exists, an end of a longest path.
    fn pick_target(&self, covered: u64) -> usize {
        let placed: Vec<usize> = self.centers.iter().flatten().copied().collect();
        if placed.is_empty() && covered & (1 << self.start_vertex) == 0 {
            return self.start_vertex;
        }
        let mut best = (0usize, usize::MAX);
        for v in 0..self.n {
            if covered & (1 << v) != 0 {
                continue;
            }
            let d = placed
                .iter()
                .map(|&c| self.dist[v][c] as usize)
                .min()
                .unwrap_or(usize::MAX);
            if best.1 == usize::MAX || d > best.0 {
                best = (d, v);
            }
        }
        best.1
    }
}

fn all_pairs(tree: &Tree) -> Vec<Vec<u8>> {
    (0..tree.n())
        .map(|v| {
            tree.distances_from(v)
                .into_iter()
                .map(|d| d as u8)
                .collect()
        })
        .collect()
}

/// Turns a ball cover (radius `k-1-t` at `centers[t]`) into a schedule that
/// is legal for the process: a source already burning when its round comes
/// is swapped for the smallest unburned vertex. The original ball is still
/// covered then, by the fire that reached that source. If nothing is left
/// unburned the schedule stops early.
fn legalize(tree: &Tree, centers: &[usize]) -> BurningSchedule {
    let n = tree.n();
    let mut burning = vec![false; n];
    let mut frontier: Vec<usize> = Vec::new();
    let mut sources = Vec::with_capacity(centers.len());
    for (t, &planned) in centers.iter().enumerate() {
        if t > 0 {
            let mut next = Vec::new();
            for &v in &frontier {
                for w in tree.neighbors(v) {
                    if !burning[w] {
                        burning[w] = true;
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        let source = if burning[planned] {
            match burning.iter().position(|&b| !b) {
                Some(v) => v,
                None => break,
            }
        } else {
            planned
        };
        burning[source] = true;
        frontier.push(source);
        sources.push(source);
    }
    BurningSchedule::new(sources)
}

/// Exact `b(tree)` with a witness schedule; the witness may be one source
/// short when the last round only spreads (see [`burns_within`]).
pub fn burning_number_exact(tree: &Tree, node_cap: usize) -> Result<(usize, BurningSchedule)> {
    let n = tree.n();
    let cap = node_cap.min(MAX_EXACT_VERTICES);
    if n > cap {
        return Err(Error::CapExceeded {
            what: "exact burning search size",
            requested: n as u64,
            cap: cap as u64,
        });
    }
    if n == 1 {
        return Ok((1, BurningSchedule::new(vec![0])));
    }
    let dist = all_pairs(tree);
    let balls: Vec<Vec<u64>> = (0..n)
        .map(|c| {
            let mut masks = vec![0u64; n];
            for (v, &d) in dist[c].iter().enumerate() {
                masks[d as usize] |= 1 << v;
            }
            for r in 1..n {
                masks[r] |= masks[r - 1];
            }
            masks
        })
        .collect();
    let max_ball: Vec<u32> = (0..n)
        .map(|r| balls.iter().map(|b| b[r].count_ones()).max().unwrap_or(0))
        .collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let (start_vertex, _) = tree.peripheral_pair();

    for k in 1..=n {
        let mut centers = vec![None; k];
        let found = {
            let mut search = Search {
                n,
                full,
                balls: &balls,
                dist: &dist,
                max_ball: &max_ball,
                start_vertex,
                failed: HashSet::new(),
                centers: &mut centers,
            };
            search.solve(0, 0, k)
        };
        if found {
            // radius k-1 is lit first; radii never assigned get any vertex
            let ordered: Vec<usize> = (0..k).rev().map(|r| centers[r].unwrap_or(0)).collect();
            let schedule = legalize(tree, &ordered);
            if !burns_within(tree, &schedule, k)? {
                return Err(Error::InvariantViolation(format!(
                    "witness schedule {:?} does not burn the tree in {k} rounds",
                    schedule.sources
                )));
            }
            return Ok((k, schedule));
        }
    }
    unreachable!("k = n always succeeds")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths() {
        for n in 1..=30 {
            let (b, schedule) = burning_number_exact(&Tree::path(n), 64).unwrap();
            let expect = (n as f64).sqrt().ceil() as usize;
            assert_eq!(b, expect, "P_{n}");
            assert!(burns_within(&Tree::path(n), &schedule, b).unwrap());
            assert!(schedule.len() == b || schedule.len() + 1 == b);
        }
    }

    #[test]
    fn star_and_single() {
        assert_eq!(burning_number_exact(&Tree::star(5), 64).unwrap().0, 2);
        assert_eq!(burning_number_exact(&Tree::path(1), 64).unwrap().0, 1);
    }

    #[test]
    fn cap() {
        assert!(matches!(
            burning_number_exact(&Tree::path(65), 100),
            Err(Error::CapExceeded { cap: 64, .. })
        ));
        assert!(burning_number_exact(&Tree::path(20), 10).is_err());
    }

    #[test]
    fn legalize_swaps_burning_source() {
        let p5 = Tree::path(5);
        // vertex 1 is already burning in round 2 when 0 was lit in round 1
        let s = legalize(&p5, &[0, 1]);
        assert_eq!(s.sources, vec![0, 2]);
    }
}
