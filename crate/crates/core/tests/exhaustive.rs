//! Exhaustive checks over all small ordered trees and sequences.

use gwburn::burning::{
    bhat_exact, burning_number_exact, burns_within, known_bounds, pair_lower_bound,
    scheme_upper_bound,
};
use gwburn::oracle::{all_sequences, burns_in, sequences_with_sum, valid_rotations};
use gwburn::sampler::{sample_conditioned, RandomStream};
use gwburn::stats::DEFAULT_PAIR_CAP;
use gwburn::tree::{enumerate_trees_capped, to_lattice_path, validate};
use gwburn::{OffspringDistribution, Tree};

fn trees(s: usize) -> impl Iterator<Item = Tree> {
    enumerate_trees_capped(s, usize::MAX)
        .unwrap()
        .map(|seq| Tree::from_degrees(seq).unwrap())
}

fn ceil_sqrt(n: usize) -> usize {
    (1..).find(|k| k * k >= n).unwrap()
}

#[test]
fn catalan_counts_and_round_trip() {
    let catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
    for s in 1..=10 {
        let mut count = 0;
        for tree in trees(s) {
            count += 1;
            assert_eq!(tree.preorder_degrees(), tree.degrees().as_slice());
            assert_eq!(tree.level_sizes().iter().sum::<usize>(), s);
            for k in 1..=4 {
                let tall = (0..s).filter(|&v| tree.subtree_height(v) >= k).count();
                assert_eq!(tree.c_k_sizes(k).iter().sum::<usize>(), tall);
            }
        }
        assert_eq!(count, catalan[s - 1], "s = {s}");
    }
}

#[test]
fn lattice_criterion_exhaustive() {
    for s in 1..=8 {
        for seq in all_sequences(s, 3) {
            let path = to_lattice_path(&seq);
            let heights = &path.heights;
            let expect = heights[s] == -1 && heights[1..s].iter().all(|&y| y > -1);
            assert_eq!(validate(&seq), expect, "{seq:?}");
        }
    }
}

#[test]
fn rotation_uniqueness_exhaustive() {
    for s in 1..=8 {
        for seq in sequences_with_sum(s, s as u32 - 1) {
            assert_eq!(valid_rotations(&seq).len(), 1, "{seq:?}");
        }
    }
}

/// The exact value is attained by its witness, and no schedule of one round
/// fewer burns the tree (all schedules enumerated).
#[test]
fn exact_burning_number_up_to_ten_vertices() {
    for s in 1..=10 {
        for tree in trees(s) {
            let (b, witness) = burning_number_exact(&tree, 64).unwrap();
            assert!(
                burns_within(&tree, &witness, b).unwrap(),
                "{}",
                tree.degrees()
            );
            if b > 1 {
                assert!(
                    !burns_in(&tree, b - 1),
                    "{} burns in {} rounds",
                    tree.degrees(),
                    b - 1
                );
            }
        }
    }
}

/// `b <= ceil(sqrt n)` is a conjecture, not a theorem; a failure here would
/// be a counterexample worth reporting rather than a library bug.
#[test]
fn conjecture_holds_up_to_twelve_vertices() {
    let mut counterexamples = Vec::new();
    let mut checked = 0u64;
    for s in 1..=12 {
        for tree in trees(s) {
            checked += 1;
            let (b, _) = burning_number_exact(&tree, 64).unwrap();
            if b > ceil_sqrt(s) {
                counterexamples.push(tree.degrees().to_string());
            }
        }
    }
    println!(
        "conjecture sweep: {checked} trees, {} counterexamples",
        counterexamples.len()
    );
    assert!(
        counterexamples.is_empty(),
        "counterexamples: {counterexamples:?}"
    );
}

#[test]
fn bound_ordering_on_sampled_trees() {
    let d = OffspringDistribution::poisson();
    for t in 0..200u64 {
        let n = 2 + (t as usize % 39);
        let tree = sample_conditioned(&d, n, &mut RandomStream::new(77, t), 1_000_000)
            .unwrap()
            .tree;
        let (bhat, _) = bhat_exact(&tree);
        let (b, _) = burning_number_exact(&tree, 64).unwrap();
        let lb = pair_lower_bound(&tree, DEFAULT_PAIR_CAP).unwrap().k;
        let upper = (scheme_upper_bound(&tree).bound as u64).min(known_bounds(n as u64).min());
        assert!(
            lb < bhat && bhat <= b && b <= 2 * bhat && b as u64 <= upper,
            "{}",
            tree.degrees()
        );
    }
}
