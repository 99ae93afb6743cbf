//! Rooted ordered trees stored by preorder index.
//!
//! Vertex `0` is the root and vertex `i` is the `(i+1)`-th vertex visited by
//! a depth-first search, so every subtree occupies a contiguous index range.

mod sequence;

use std::sync::OnceLock;

pub use sequence::{
    enumerate_trees, enumerate_trees_capped, rotate_to_valid, to_lattice_path,
    unique_valid_rotation, validate, LatticePath, PreorderDegreeSequence, TreeEnumerator,
    DEFAULT_ENUMERATION_CAP,
};

use crate::error::{Error, Result};

/// Largest tree the library will build.
pub const MAX_VERTICES: usize = 1 << 24;

const NO_PARENT: u32 = u32::MAX;

#[derive(Debug)]
pub struct Tree {
    degrees: PreorderDegreeSequence,
    parent: Vec<u32>,
    /// Children of `v` are `children[child_start[v]..child_start[v + 1]]`.
    child_start: Vec<u32>,
    children: Vec<u32>,
    depth: Vec<u32>,
    subtree_height: Vec<u32>,
    subtree_size: Vec<u32>,
    diameter: OnceLock<usize>,
}

impl Clone for Tree {
    fn clone(&self) -> Self {
        let diameter = OnceLock::new();
        if let Some(&d) = self.diameter.get() {
            let _ = diameter.set(d);
        }
        Tree {
            degrees: self.degrees.clone(),
            parent: self.parent.clone(),
            child_start: self.child_start.clone(),
            children: self.children.clone(),
            depth: self.depth.clone(),
            subtree_height: self.subtree_height.clone(),
            subtree_size: self.subtree_size.clone(),
            diameter,
        }
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        self.degrees == other.degrees
    }
}

impl Eq for Tree {}

impl Tree {
    /// Decodes a preorder degree sequence.
    pub fn from_degrees(seq: impl Into<PreorderDegreeSequence>) -> Result<Tree> {
        let seq = seq.into();
        if !seq.is_valid() {
            return Err(Error::InvalidSequence(format!("{:?}", seq.as_slice())));
        }
        if seq.len() > MAX_VERTICES {
            return Err(Error::CapExceeded {
                what: "tree size",
                requested: seq.len() as u64,
                cap: MAX_VERTICES as u64,
            });
        }
        Ok(Self::build_unchecked(seq))
    }

    /// `seq` must already be valid.
    pub(crate) fn build_unchecked(seq: PreorderDegreeSequence) -> Tree {
        let degrees = seq.as_slice();
        let n = degrees.len();
        let mut child_start = Vec::with_capacity(n + 1);
        let mut acc = 0u32;
        for &d in degrees {
            child_start.push(acc);
            acc += d;
        }
        child_start.push(acc);

        let mut parent = vec![NO_PARENT; n];
        let mut depth = vec![0u32; n];
        let mut children = vec![0u32; n.saturating_sub(1)];
        let mut filled = vec![0u32; n];
        // vertices still expecting children, innermost on top
        let mut open: Vec<u32> = Vec::new();
        for v in 0..n {
            if let Some(&p) = open.last() {
                let p = p as usize;
                parent[v] = p as u32;
                depth[v] = depth[p] + 1;
                children[(child_start[p] + filled[p]) as usize] = v as u32;
                filled[p] += 1;
                if filled[p] == degrees[p] {
                    open.pop();
                }
            }
            if degrees[v] > 0 {
                open.push(v as u32);
            }
        }

        let mut subtree_height = vec![0u32; n];
        let mut subtree_size = vec![1u32; n];
        for v in (1..n).rev() {
            let p = parent[v] as usize;
            subtree_height[p] = subtree_height[p].max(subtree_height[v] + 1);
            subtree_size[p] += subtree_size[v];
        }

        Tree {
            degrees: seq,
            parent,
            child_start,
            children,
            depth,
            subtree_height,
            subtree_size,
            diameter: OnceLock::new(),
        }
    }

    /// Path on `n` vertices rooted at an endpoint.
    pub fn path(n: usize) -> Tree {
        assert!(n >= 1);
        let mut d = vec![1u32; n];
        d[n - 1] = 0;
        Self::build_unchecked(d.into())
    }

    /// Star: a root with `leaves` leaf children.
    pub fn star(leaves: usize) -> Tree {
        let mut d = vec![0u32; leaves + 1];
        d[0] = leaves as u32;
        Self::build_unchecked(d.into())
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn degrees(&self) -> &PreorderDegreeSequence {
        &self.degrees
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        match self.parent[v] {
            NO_PARENT => None,
            p => Some(p as usize),
        }
    }

    pub fn children(&self, v: usize) -> &[u32] {
        &self.children[self.child_start[v] as usize..self.child_start[v + 1] as usize]
    }

    /// Parent (if any) followed by the children.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.parent(v)
            .into_iter()
            .chain(self.children(v).iter().map(|&c| c as usize))
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.degrees.as_slice()[v] == 0
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v] as usize
    }

    pub fn depths(&self) -> &[u32] {
        &self.depth
    }

    /// Height of the full subtree rooted at `v`.
    pub fn subtree_height(&self, v: usize) -> usize {
        self.subtree_height[v] as usize
    }

    pub fn subtree_heights(&self) -> &[u32] {
        &self.subtree_height
    }

    pub fn subtree_size(&self, v: usize) -> usize {
        self.subtree_size[v] as usize
    }

    pub fn height(&self) -> usize {
        self.subtree_height[0] as usize
    }

    pub fn leaf_count(&self) -> usize {
        self.degrees.as_slice().iter().filter(|&&d| d == 0).count()
    }

    /// `result[i]` = number of vertices at depth `i`.
    pub fn level_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.height() + 1];
        for &d in &self.depth {
            sizes[d as usize] += 1;
        }
        sizes
    }

    pub fn is_ancestor(&self, a: usize, v: usize) -> bool {
        a <= v && v < a + self.subtree_size[a] as usize
    }

    /// Path length between `u` and `v`, found by climbing parents to the
    /// lowest common ancestor.
    pub fn distance(&self, u: usize, v: usize) -> usize {
        let (mut a, mut b) = (u, v);
        let mut steps = 0;
        while self.depth[a] > self.depth[b] {
            a = self.parent[a] as usize;
            steps += 1;
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b] as usize;
            steps += 1;
        }
        while a != b {
            a = self.parent[a] as usize;
            b = self.parent[b] as usize;
            steps += 2;
        }
        steps
    }

    /// BFS distances from `source` into `dist` (`u32::MAX` = beyond `limit`).
    /// Returns the vertices reached, in BFS order.
    pub(crate) fn bfs_limited(
        &self,
        source: usize,
        limit: usize,
        dist: &mut [u32],
        order: &mut Vec<u32>,
    ) {
        order.clear();
        dist[source] = 0;
        order.push(source as u32);
        let mut head = 0;
        while head < order.len() {
            let v = order[head] as usize;
            head += 1;
            let dv = dist[v];
            if dv as usize >= limit {
                continue;
            }
            for w in self.neighbors(v) {
                if dist[w] == u32::MAX {
                    dist[w] = dv + 1;
                    order.push(w as u32);
                }
            }
        }
    }

    /// Distances from `source` to every vertex.
    pub fn distances_from(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n()];
        let mut order = Vec::with_capacity(self.n());
        self.bfs_limited(source, usize::MAX, &mut dist, &mut order);
        dist
    }

    /// Closed ball `{u : d(u, v) <= r}`, sorted by index.
    pub fn ball(&self, v: usize, r: usize) -> Vec<usize> {
        let mut dist = vec![u32::MAX; self.n()];
        let mut order = Vec::new();
        self.bfs_limited(v, r, &mut dist, &mut order);
        let mut out: Vec<usize> = order.into_iter().map(|u| u as usize).collect();
        out.sort_unstable();
        out
    }

    /// Vertices at depth congruent to `j` mod `k` whose subtree has height at
    /// least `k`.
    pub fn c_k_j(&self, k: usize, j: usize) -> Vec<usize> {
        assert!(k >= 1 && j < k, "need k >= 1 and 0 <= j < k");
        (0..self.n())
            .filter(|&v| self.depth[v] as usize % k == j && self.subtree_height[v] as usize >= k)
            .collect()
    }

    /// `|C_k^j|` for every `j` in `0..k`, in one pass.
    pub fn c_k_sizes(&self, k: usize) -> Vec<usize> {
        assert!(k >= 1);
        let mut sizes = vec![0usize; k];
        for v in 0..self.n() {
            if self.subtree_height[v] as usize >= k {
                sizes[self.depth[v] as usize % k] += 1;
            }
        }
        sizes
    }

    /// Longest path length, by double BFS; cached after the first call.
    pub fn diameter(&self) -> usize {
        *self.diameter.get_or_init(|| {
            let first = self.distances_from(0);
            let (far, _) = first
                .iter()
                .enumerate()
                .max_by_key(|&(i, &d)| (d, std::cmp::Reverse(i)))
                .expect("non-empty tree");
            let second = self.distances_from(far);
            *second.iter().max().expect("non-empty tree") as usize
        })
    }

    /// Both endpoints of a longest path (smallest indices on ties).
    pub fn peripheral_pair(&self) -> (usize, usize) {
        let pick = |dist: &[u32]| {
            dist.iter()
                .enumerate()
                .max_by_key(|&(i, &d)| (d, std::cmp::Reverse(i)))
                .map(|(i, _)| i)
                .expect("non-empty tree")
        };
        let a = pick(&self.distances_from(0));
        let b = pick(&self.distances_from(a));
        (a, b)
    }

    /// Re-derives the preorder degree sequence by an explicit DFS over the
    /// child lists (used to check the decoder).
    pub fn preorder_degrees(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n());
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            out.push(self.children(v).len() as u32);
            stack.extend(self.children(v).iter().rev().map(|&c| c as usize));
        }
        out
    }
}

/// Rebuilds a tree given children lists in breadth-first order: vertex `i`'s
/// children are the next `degrees[i]` unassigned BFS indices.
pub(crate) fn from_bfs_degrees(bfs_degrees: &[u32]) -> Tree {
    let n = bfs_degrees.len();
    let mut first_child = Vec::with_capacity(n);
    let mut next = 1u32;
    for &d in bfs_degrees {
        first_child.push(next);
        next += d;
    }
    let mut preorder = Vec::with_capacity(n);
    let mut stack = vec![0u32];
    while let Some(v) = stack.pop() {
        let v = v as usize;
        let d = bfs_degrees[v];
        preorder.push(d);
        let start = first_child[v];
        for c in (start..start + d).rev() {
            stack.push(c);
        }
    }
    Tree::build_unchecked(preorder.into())
}
