use proptest::prelude::*;

use gwburn::burning::{
    bhat_exact, burning_number_exact, burns_within, min_ball_cover, pair_lower_bound, scheme_cover,
    scheme_upper_bound, verify_cover, CoverCertificate,
};
use gwburn::oracle::{
    brute_force_bhat, brute_force_burning_number, brute_force_min_cover, valid_rotations,
};
use gwburn::sampler::{sample_conditioned, RandomStream};
use gwburn::stats::{pair_counts, pair_counts_within, DEFAULT_PAIR_CAP};
use gwburn::tree::{rotate_to_valid, to_lattice_path, unique_valid_rotation, validate};
use gwburn::{OffspringDistribution, PreorderDegreeSequence, Tree};

/// Degrees with sum `s - 1`: each of the `s - 1` non-root vertices picks a
/// slot for its parent.
fn degrees_with_tree_sum(max_s: usize) -> impl Strategy<Value = Vec<u32>> {
    (1..=max_s).prop_flat_map(|s| {
        prop::collection::vec(0..s, s - 1).prop_map(move |slots| {
            let mut d = vec![0u32; s];
            for slot in slots {
                d[slot] += 1;
            }
            d
        })
    })
}

fn tree_up_to(max_s: usize) -> impl Strategy<Value = Tree> {
    degrees_with_tree_sum(max_s).prop_map(|mut d| {
        rotate_to_valid(&mut d).unwrap();
        Tree::from_degrees(d).unwrap()
    })
}

fn all_pairs(tree: &Tree) -> Vec<Vec<usize>> {
    (0..tree.n())
        .map(|u| (0..tree.n()).map(|v| tree.distance(u, v)).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn degree_sequence_round_trips(tree in tree_up_to(60)) {
        let seq = tree.degrees().clone();
        prop_assert_eq!(tree.preorder_degrees(), seq.as_slice().to_vec());
        let text = seq.to_string();
        let back: PreorderDegreeSequence = text.parse().unwrap();
        prop_assert_eq!(&back, &seq);
        prop_assert_eq!(Tree::from_degrees(back).unwrap(), tree);
    }

    #[test]
    fn validity_matches_lattice_path(d in prop::collection::vec(0u32..4, 1..12)) {
        let path = to_lattice_path(&d);
        prop_assert_eq!(validate(&d), path.is_tree_path());
        prop_assert_eq!(path.end(), d.iter().map(|&x| x as i64 - 1).sum::<i64>());
    }

    #[test]
    fn exactly_one_rotation_validates(d in degrees_with_tree_sum(30)) {
        let all = valid_rotations(&d);
        prop_assert_eq!(all.len(), 1);
        prop_assert_eq!(unique_valid_rotation(&d).unwrap(), all[0]);
    }

    #[test]
    fn tree_metric(tree in tree_up_to(40)) {
        let dist = all_pairs(&tree);
        let n = tree.n();
        let mut diameter = 0;
        for (u, row) in dist.iter().enumerate() {
            let bfs = tree.distances_from(u);
            for v in 0..n {
                prop_assert_eq!(row[v], dist[v][u]);
                prop_assert_eq!(row[v], bfs[v] as usize);
                prop_assert_eq!(row[v] == 0, u == v);
                diameter = diameter.max(row[v]);
            }
        }
        let m = n.min(12);
        for u in 0..m {
            for v in 0..m {
                for w in 0..m {
                    prop_assert!(dist[u][v] <= dist[u][w] + dist[w][v]);
                }
            }
        }
        prop_assert_eq!(tree.diameter(), diameter);
        prop_assert_eq!(tree.height(), (0..n).map(|v| dist[0][v]).max().unwrap());
    }

    #[test]
    fn pair_profile_matches_pairwise_distances(tree in tree_up_to(50)) {
        let n = tree.n();
        let dist = all_pairs(&tree);
        let prof = pair_counts(&tree, DEFAULT_PAIR_CAP).unwrap();
        prop_assert_eq!(prof.total_pairs(), (n * (n - 1) / 2) as u64);
        for i in 1..=n {
            let brute = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| dist[u][v] == i)
                .count() as u64;
            prop_assert_eq!(prof.p_at(i), brute);
        }
        prop_assert_eq!(prof.q_at(tree.diameter()), (n * (n - 1) / 2) as u64);
        let trunc = pair_counts_within(&tree, 3, DEFAULT_PAIR_CAP).unwrap();
        for i in 1..=3 {
            prop_assert_eq!(trunc.p_at(i), prof.p_at(i));
        }
    }

    #[test]
    fn scheme_cover_always_covers(tree in tree_up_to(80), k in 1usize..8, j in 0usize..8) {
        let cert = scheme_cover(&tree, k, j % k);
        prop_assert!(verify_cover(&tree, &cert));
    }

    #[test]
    fn verify_cover_matches_brute_force(tree in tree_up_to(25), centers in prop::collection::vec(0usize..25, 0..4), r in 0usize..4) {
        let n = tree.n();
        let centers: Vec<usize> = centers.into_iter().map(|c| c % n).collect();
        let dist = all_pairs(&tree);
        let brute = (0..n).all(|v| centers.iter().any(|&c| dist[c][v] <= r));
        let cert = CoverCertificate { centers, radius: r, claimed_k: r };
        prop_assert_eq!(verify_cover(&tree, &cert), brute);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn greedy_cover_is_optimal(tree in tree_up_to(11), r in 0usize..5) {
        let cover = min_ball_cover(&tree, r);
        prop_assert_eq!(cover.count, brute_force_min_cover(&tree, r));
        let cert = CoverCertificate { centers: cover.centers, radius: r, claimed_k: r };
        prop_assert!(verify_cover(&tree, &cert));
    }

    #[test]
    fn bhat_matches_brute_force(tree in tree_up_to(11)) {
        let (k, cert) = bhat_exact(&tree);
        prop_assert_eq!(k, brute_force_bhat(&tree));
        prop_assert!(verify_cover(&tree, &cert) && cert.centers.len() <= k);
    }

    #[test]
    fn exact_matches_schedule_enumeration(tree in tree_up_to(8)) {
        let (b, witness) = burning_number_exact(&tree, 64).unwrap();
        prop_assert_eq!(b, brute_force_burning_number(&tree));
        prop_assert!(burns_within(&tree, &witness, b).unwrap());
    }

    #[test]
    fn bounds_sandwich(tree in tree_up_to(40)) {
        let n = tree.n();
        let (bhat, _) = bhat_exact(&tree);
        let (b, witness) = burning_number_exact(&tree, 64).unwrap();
        let lb = pair_lower_bound(&tree, DEFAULT_PAIR_CAP).unwrap();
        let scheme = scheme_upper_bound(&tree);
        prop_assert!(lb.k < bhat);
        if let Some(cert) = lb.certificate {
            prop_assert!(cert.holds());
        }
        prop_assert!(bhat <= b && b <= 2 * bhat);
        prop_assert!(b <= scheme.bound);
        let ceil_sqrt = (1..).find(|k| k * k >= n).unwrap();
        prop_assert!(b <= ceil_sqrt);
        prop_assert!(burns_within(&tree, &witness, b).unwrap());
        prop_assert!(witness.len() == b || witness.len() + 1 == b);
    }

    #[test]
    fn sampling_is_deterministic(seed in any::<u64>(), stream in any::<u64>(), n in 1usize..200) {
        let d = OffspringDistribution::poisson();
        let a = sample_conditioned(&d, n, &mut RandomStream::new(seed, stream), 1_000_000).unwrap();
        let b = sample_conditioned(&d, n, &mut RandomStream::new(seed, stream), 1_000_000).unwrap();
        prop_assert_eq!(a.attempts, b.attempts);
        prop_assert_eq!(&a.tree, &b.tree);
        prop_assert_eq!(a.tree.n(), n);
    }
}
