//! Preorder degree sequences and their Łukasiewicz lattice paths.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Child counts of the vertices of an ordered tree, listed in DFS preorder.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PreorderDegreeSequence(Vec<u32>);

impl PreorderDegreeSequence {
    pub fn new(degrees: Vec<u32>) -> Self {
        PreorderDegreeSequence(degrees)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        validate(&self.0)
    }

    pub fn lattice_path(&self) -> LatticePath {
        to_lattice_path(&self.0)
    }
}

impl From<Vec<u32>> for PreorderDegreeSequence {
    fn from(v: Vec<u32>) -> Self {
        PreorderDegreeSequence(v)
    }
}

impl AsRef<[u32]> for PreorderDegreeSequence {
    fn as_ref(&self) -> &[u32] {
        &self.0
    }
}

/// One line, space separated.
impl fmt::Display for PreorderDegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for PreorderDegreeSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|e| Error::Parse(format!("degree {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(PreorderDegreeSequence)
    }
}

/// True iff `degrees` is the preorder degree sequence of an ordered tree:
/// every proper prefix of length j sums to at least j and the total is s - 1.
pub fn validate(degrees: &[u32]) -> bool {
    let s = degrees.len() as u64;
    if s == 0 {
        return false;
    }
    let mut sum = 0u64;
    for (j, &d) in degrees.iter().enumerate() {
        sum += d as u64;
        let j = j as u64 + 1;
        if j < s && sum < j {
            return false;
        }
    }
    sum == s - 1
}

/// Heights y_0 = 0, y_j = y_{j-1} + d_j - 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePath {
    pub heights: Vec<i64>,
}

impl LatticePath {
    pub fn end(&self) -> i64 {
        *self.heights.last().expect("y_0 always present")
    }

    /// Whether the path ends at -1 without touching -1 before the last step.
    pub fn is_tree_path(&self) -> bool {
        let s = self.heights.len() - 1;
        s >= 1 && self.end() == -1 && self.heights[..s].iter().all(|&y| y > -1)
    }
}

pub fn to_lattice_path(degrees: &[u32]) -> LatticePath {
    let mut heights = Vec::with_capacity(degrees.len() + 1);
    let mut y = 0i64;
    heights.push(y);
    for &d in degrees {
        y += d as i64 - 1;
        heights.push(y);
    }
    LatticePath { heights }
}

/// The unique left rotation offset `r` such that `degrees[r..] ++ degrees[..r]`
/// is a valid preorder degree sequence (cycle lemma).
///
/// Linear time: the rotation starts right after the first step at which the
/// lattice path attains its overall minimum over y_1..y_s.
pub fn unique_valid_rotation(degrees: &[u32]) -> Result<usize> {
    let s = degrees.len();
    let sum: u64 = degrees.iter().map(|&d| d as u64).sum();
    if s == 0 || sum != s as u64 - 1 {
        return Err(Error::BadSum {
            sum,
            expected: (s as u64).saturating_sub(1),
        });
    }
    let mut y = 0i64;
    let mut best = i64::MAX;
    let mut at = 0usize;
    for (j, &d) in degrees.iter().enumerate() {
        y += d as i64 - 1;
        if y < best {
            best = y;
            at = j + 1;
        }
    }
    Ok(at % s)
}

/// Rotates `degrees` in place into its valid cyclic shift; returns the offset.
pub fn rotate_to_valid(degrees: &mut [u32]) -> Result<usize> {
    let r = unique_valid_rotation(degrees)?;
    degrees.rotate_left(r);
    Ok(r)
}

/// Enumeration refuses sizes above this unless a larger cap is passed.
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

/// All valid preorder degree sequences of length `s`, in lexicographic order.
pub fn enumerate_trees(s: usize) -> Result<TreeEnumerator> {
    enumerate_trees_capped(s, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_trees_capped(s: usize, cap: usize) -> Result<TreeEnumerator> {
    if s == 0 {
        return Err(Error::InvalidParameter(
            "trees have at least one vertex".into(),
        ));
    }
    if s > cap {
        return Err(Error::CapExceeded {
            what: "enumeration size",
            requested: s as u64,
            cap: cap as u64,
        });
    }
    Ok(TreeEnumerator {
        s,
        current: Vec::with_capacity(s),
        started: false,
        done: false,
    })
}

/// Lexicographic successor iteration over valid sequences of a fixed length.
#[derive(Debug, Clone)]
pub struct TreeEnumerator {
    s: usize,
    current: Vec<u32>,
    started: bool,
    done: bool,
}

impl TreeEnumerator {
    /// Completes `current` (holding a feasible prefix with sum `sum`) with the
    /// lexicographically smallest valid suffix.
    fn fill_minimal(&mut self, mut sum: u64) {
        let s = self.s;
        for j in self.current.len()..s {
            let d = if j + 1 == s {
                s as u64 - 1 - sum
            } else {
                (j as u64 + 1).saturating_sub(sum)
            };
            self.current.push(d as u32);
            sum += d;
        }
    }
}

impl Iterator for TreeEnumerator {
    type Item = PreorderDegreeSequence;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill_minimal(0);
            return Some(PreorderDegreeSequence(self.current.clone()));
        }
        let s = self.s;
        let total = s as u64 - 1;
        // the last entry is forced, so bump the rightmost earlier entry that can grow
        let mut prefix: Vec<u64> = Vec::with_capacity(s);
        let mut acc = 0u64;
        for &d in &self.current {
            acc += d as u64;
            prefix.push(acc);
        }
        for p in (0..s.saturating_sub(1)).rev() {
            if prefix[p] < total {
                self.current.truncate(p + 1);
                self.current[p] += 1;
                self.fill_minimal(prefix[p] + 1);
                return Some(PreorderDegreeSequence(self.current.clone()));
            }
        }
        self.done = true;
        None
    }
}
