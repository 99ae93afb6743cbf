//! The level-class covering scheme: balls of radius `2k` around the root and
//! around every vertex of `C_k^j` cover the whole tree.

use super::cover::CoverCertificate;
use crate::tree::Tree;

/// Centers `C_k^j ∪ {root}` with radius `2k`.
pub fn scheme_cover(tree: &Tree, k: usize, j: usize) -> CoverCertificate {
    let mut centers = tree.c_k_j(k, j);
    if centers.first() != Some(&tree.root()) {
        centers.insert(0, tree.root());
    }
    CoverCertificate {
        centers,
        radius: 2 * k,
        claimed_k: k,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchemeBound {
    /// `4k`, an upper bound on the burning number.
    pub bound: usize,
    pub k: usize,
    /// Level class attaining `min_j |C_k^j| <= 2k - 1` (smallest such j).
    pub j: usize,
}

/// First `k` (scanning upward) with `min_j |C_k^j| <= 2k - 1`; then at most
/// `2k` balls of radius `2k` cover the tree, so `b <= 4k`.
pub fn scheme_upper_bound(tree: &Tree) -> SchemeBound {
    let mut k = 1;
    loop {
        let sizes = tree.c_k_sizes(k);
        let (j, &smallest) = sizes
            .iter()
            .enumerate()
            .min_by_key(|&(j, &s)| (s, j))
            .expect("k >= 1");
        if smallest < 2 * k {
            return SchemeBound { bound: 4 * k, k, j };
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burning::cover::verify_cover;

    #[test]
    fn single_vertex() {
        let t = Tree::path(1);
        let cert = scheme_cover(&t, 1, 0);
        assert_eq!(cert.centers, vec![0]);
        assert_eq!(cert.radius, 2);
        assert!(verify_cover(&t, &cert));
        assert_eq!(
            scheme_upper_bound(&t),
            SchemeBound {
                bound: 4,
                k: 1,
                j: 0
            }
        );
    }

    #[test]
    fn path_seven() {
        let t = Tree::path(7);
        let cert = scheme_cover(&t, 2, 0);
        assert_eq!(cert.centers, vec![0, 2, 4]);
        assert_eq!(cert.radius, 4);
        assert!(verify_cover(&t, &cert));
        let cert = scheme_cover(&t, 2, 1);
        assert_eq!(cert.centers, vec![0, 1, 3]);
        assert!(verify_cover(&t, &cert));
    }

    #[test]
    fn path_nine_bound() {
        let s = scheme_upper_bound(&Tree::path(9));
        // k = 1: 8 internal vertices; k = 2: depths 0..=6 qualify, odd class has 3
        assert_eq!(
            s,
            SchemeBound {
                bound: 8,
                k: 2,
                j: 1
            }
        );
        assert!(verify_cover(
            &Tree::path(9),
            &scheme_cover(&Tree::path(9), 2, 1)
        ));
        assert!(s.bound >= 3);
    }
}
