use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::Tree;

/// Fire sources in ignition order: `sources[t]` is lit in round `t + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurningSchedule {
    pub sources: Vec<usize>,
}

impl BurningSchedule {
    pub fn new(sources: Vec<usize>) -> Self {
        BurningSchedule { sources }
    }

    pub fn len(&self) -> usize {
        self.sources.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sources.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BurnOutcome {
    pub rounds_used: usize,
    pub fully_burned: bool,
}

/// Runs the burning process for `rounds` rounds, lighting `schedule.sources`
/// in the first rounds and only spreading afterwards. A shorter schedule is
/// how a final round with nothing left to light is written (`b(P_2) = 2` has
/// the one-source witness `[0]`). Returns whether every vertex is burning.
pub fn burns_within(tree: &Tree, schedule: &BurningSchedule, rounds: usize) -> Result<bool> {
    if schedule.len() > rounds {
        return Err(Error::InvalidParameter(format!(
            "{} sources do not fit in {rounds} rounds",
            schedule.len()
        )));
    }
    let mut burning = vec![false; tree.n()];
    let mut frontier = run(tree, schedule, &mut burning)?;
    for _ in schedule.len()..rounds {
        if frontier.is_empty() {
            break;
        }
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
    Ok(burning.iter().all(|&b| b))
}

/// Runs the burning process. Each round first lets every burning vertex
/// ignite its neighbours (from round 2 on), then lights that round's source,
/// which must still be unburned.
pub fn simulate_burning(tree: &Tree, schedule: &BurningSchedule) -> Result<BurnOutcome> {
    let n = tree.n();
    let mut burning = vec![false; n];
    run(tree, schedule, &mut burning)?;
    Ok(BurnOutcome {
        rounds_used: schedule.len(),
        fully_burned: burning.iter().all(|&b| b),
    })
}

/// Plays the schedule on `burning`; returns the vertices lit in the last round.
fn run(tree: &Tree, schedule: &BurningSchedule, burning: &mut [bool]) -> Result<Vec<usize>> {
    let n = tree.n();
    if let Some(&bad) = schedule.sources.iter().find(|&&v| v >= n) {
        return Err(Error::InvalidParameter(format!(
            "source {bad} is not a vertex of a {n}-vertex tree"
        )));
    }
    let mut frontier: Vec<usize> = Vec::new();
    let mut next: Vec<usize> = Vec::new();
    for (index, &source) in schedule.sources.iter().enumerate() {
        if index > 0 {
            next.clear();
            for &v in &frontier {
                for w in tree.neighbors(v) {
                    if !burning[w] {
                        burning[w] = true;
                        next.push(w);
                    }
                }
            }
            std::mem::swap(&mut frontier, &mut next);
        }
        if burning[source] {
            return Err(Error::SourceAlreadyBurning { index });
        }
        burning[source] = true;
        frontier.push(source);
    }
    Ok(frontier)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex() {
        let t = Tree::path(1);
        let out = simulate_burning(&t, &BurningSchedule::new(vec![0])).unwrap();
        assert_eq!(
            out,
            BurnOutcome {
                rounds_used: 1,
                fully_burned: true
            }
        );
    }

    #[test]
    fn path_nine_three_rounds() {
        let p9 = Tree::path(9);
        // 1-based path vertices 3, 7, 9: radii 2, 1, 0 tile the path exactly
        let out = simulate_burning(&p9, &BurningSchedule::new(vec![2, 6, 8])).unwrap();
        assert_eq!(
            out,
            BurnOutcome {
                rounds_used: 3,
                fully_burned: true
            }
        );
        // 1-based (5, 2, 8) leaves vertex 9 unburned after three rounds
        let out = simulate_burning(&p9, &BurningSchedule::new(vec![4, 1, 7])).unwrap();
        assert!(!out.fully_burned);
    }

    #[test]
    fn path_nine_no_two_round_schedule() {
        let p9 = Tree::path(9);
        for a in 0..9 {
            for b in 0..9 {
                if let Ok(out) = simulate_burning(&p9, &BurningSchedule::new(vec![a, b])) {
                    assert!(!out.fully_burned);
                }
            }
        }
    }

    #[test]
    fn trailing_spread_rounds() {
        let p2 = Tree::path(2);
        assert!(burns_within(&p2, &BurningSchedule::new(vec![0]), 2).unwrap());
        assert!(!burns_within(&p2, &BurningSchedule::new(vec![0]), 1).unwrap());
        assert!(burns_within(&p2, &BurningSchedule::new(vec![0, 1]), 1).is_err());
        let p9 = Tree::path(9);
        assert!(burns_within(&p9, &BurningSchedule::new(vec![2, 6, 8]), 3).unwrap());
    }

    #[test]
    fn already_burning_source() {
        let p5 = Tree::path(5);
        let err = simulate_burning(&p5, &BurningSchedule::new(vec![2, 3])).unwrap_err();
        assert!(matches!(err, Error::SourceAlreadyBurning { index: 1 }));
        assert!(simulate_burning(&p5, &BurningSchedule::new(vec![7])).is_err());
    }
}
