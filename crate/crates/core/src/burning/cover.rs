//! Covering a tree with equal-radius balls.

use serde::{Deserialize, Serialize};

use crate::tree::Tree;

/// Centers plus a common radius claimed to cover every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub centers: Vec<usize>,
    pub radius: usize,
    /// The `k` whose bound this certificate supports.
    #[serde(rename = "k")]
    pub claimed_k: usize,
}

/// Multi-source BFS: true iff every vertex lies within `radius` of a center.
pub fn verify_cover(tree: &Tree, cert: &CoverCertificate) -> bool {
    let n = tree.n();
    let mut dist = vec![u32::MAX; n];
    let mut queue: Vec<u32> = Vec::with_capacity(n);
    for &c in &cert.centers {
        if c >= n {
            return false;
        }
        if dist[c] == u32::MAX {
            dist[c] = 0;
            queue.push(c as u32);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head] as usize;
        head += 1;
        if dist[v] as usize >= cert.radius {
            continue;
        }
        for w in tree.neighbors(v) {
            if dist[w] == u32::MAX {
                dist[w] = dist[v] + 1;
                queue.push(w as u32);
            }
        }
    }
    queue.len() == n
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallCover {
    pub count: usize,
    pub centers: Vec<usize>,
}

const NONE: i64 = i64::MIN;

/// Minimum number of radius-`r` balls covering the tree.
///
/// Bottom-up greedy: for each vertex (children before parents) track the
/// farthest still-uncovered vertex below it and the nearest chosen center
/// below it. A center goes on a vertex exactly when its farthest uncovered
/// descendant is `r` away, the last moment that descendant can be reached.
pub fn min_ball_cover(tree: &Tree, r: usize) -> BallCover {
    let n = tree.n();
    let r = r as i64;
    // far: distance to deepest uncovered vertex in the subtree, NONE if none
    let mut far = vec![NONE; n];
    // near: distance to the closest center in the subtree
    let mut near = vec![i64::MAX; n];
    let mut centers = Vec::new();
    // reverse preorder visits every child before its parent
    for v in (0..n).rev() {
        let mut f = 0i64;
        let mut c = i64::MAX;
        for &child in tree.children(v) {
            let child = child as usize;
            if far[child] != NONE {
                f = f.max(far[child] + 1);
            }
            if near[child] != i64::MAX {
                c = c.min(near[child] + 1);
            }
        }
        if c != i64::MAX && c + f <= r {
            f = NONE;
        } else if f >= r {
            centers.push(v);
            c = 0;
            f = NONE;
        }
        far[v] = f;
        near[v] = c;
    }
    if far[0] != NONE {
        centers.push(0);
    }
    centers.sort_unstable();
    BallCover {
        count: centers.len(),
        centers,
    }
}

/// Smallest `k` such that `k` balls of radius `k` cover the tree, with the
/// greedy centers as certificate.
pub fn bhat_exact(tree: &Tree) -> (usize, CoverCertificate) {
    // cover count is non-increasing in k while the budget k grows
    let mut k = 1;
    loop {
        let cover = min_ball_cover(tree, k);
        if cover.count <= k {
            return (
                k,
                CoverCertificate {
                    centers: cover.centers,
                    radius: k,
                    claimed_k: k,
                },
            );
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_examples() {
        assert_eq!(min_ball_cover(&Tree::path(5), 1).count, 2);
        let star = Tree::star(5);
        assert_eq!(min_ball_cover(&star, 0).count, 6);
        assert_eq!(min_ball_cover(&star, 2).count, 1);
        let t = Tree::from_degrees(vec![1, 2, 2, 0, 0, 1, 0]).unwrap();
        assert_eq!(min_ball_cover(&t, t.diameter()).count, 1);
    }

    #[test]
    fn greedy_centers_cover() {
        let t = Tree::from_degrees(vec![3, 1, 1, 0, 2, 0, 0, 1, 0]).unwrap();
        for r in 0..5 {
            let cover = min_ball_cover(&t, r);
            let cert = CoverCertificate {
                centers: cover.centers,
                radius: r,
                claimed_k: r,
            };
            assert!(verify_cover(&t, &cert));
        }
    }

    #[test]
    fn bhat_examples() {
        assert_eq!(bhat_exact(&Tree::path(9)).0, 2);
        assert_eq!(bhat_exact(&Tree::path(1)).0, 1);
        let (k, cert) = bhat_exact(&Tree::path(30));
        assert!(verify_cover(&Tree::path(30), &cert));
        assert!(cert.centers.len() <= k);
    }

    #[test]
    fn verify_cover_examples() {
        let p5 = Tree::path(5);
        let all = CoverCertificate {
            centers: (0..5).collect(),
            radius: 0,
            claimed_k: 5,
        };
        assert!(verify_cover(&p5, &all));
        let root = CoverCertificate {
            centers: vec![0],
            radius: 4,
            claimed_k: 1,
        };
        assert!(verify_cover(&p5, &root));
        let leaf = CoverCertificate {
            centers: vec![4],
            radius: 1,
            claimed_k: 1,
        };
        assert!(!verify_cover(&p5, &leaf));
        let bogus = CoverCertificate {
            centers: vec![9],
            radius: 9,
            claimed_k: 1,
        };
        assert!(!verify_cover(&p5, &bogus));
    }

    #[test]
    fn certificate_json() {
        let cert = CoverCertificate {
            centers: vec![0, 4],
            radius: 2,
            claimed_k: 2,
        };
        let json = serde_json::to_string(&cert).unwrap();
        assert_eq!(json, r#"{"centers":[0,4],"radius":2,"k":2}"#);
        let back: CoverCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }
}
