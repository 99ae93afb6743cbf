//! Exact samplers for conditioned and unconditioned Galton-Watson trees.
//!
//! The conditioned tree `T_n` is drawn by rejection: i.i.d. offspring counts
//! are accepted when they sum to `n - 1`, then rotated by the cycle lemma
//! into the preorder degree sequence of a tree.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::offspring::OffspringDistribution;
use crate::tree::{self, PreorderDegreeSequence, Tree, MAX_VERTICES};

/// A reproducible random stream identified by `(seed, stream_id)`.
///
/// Backed by ChaCha8 with the stream id selecting an independent keystream,
/// so draws are identical across platforms and runs.
#[derive(Debug, Clone)]
pub struct RandomStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        RandomStream {
            seed,
            stream_id,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }
}

impl RngCore for RandomStream {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    #[inline]
    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

pub fn default_max_attempts(n: usize) -> u64 {
    1000 * (n as f64).sqrt().ceil().max(1.0) as u64
}

/// Output of one conditioned draw.
#[derive(Debug, Clone)]
pub struct ConditionedSample {
    pub tree: Tree,
    /// Number of i.i.d. sequences drawn, including the accepted one.
    pub attempts: u64,
}

/// Reusable rejection sampler for `T_n`; keeps its draw buffer between calls.
#[derive(Debug)]
pub struct ConditionedSampler<'a> {
    dist: &'a OffspringDistribution,
    n: usize,
    buffer: Vec<u32>,
}

impl<'a> ConditionedSampler<'a> {
    pub fn new(dist: &'a OffspringDistribution, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "tree size must be at least 1".into(),
            ));
        }
        if n > MAX_VERTICES {
            return Err(Error::CapExceeded {
                what: "tree size",
                requested: n as u64,
                cap: MAX_VERTICES as u64,
            });
        }
        dist.require_size(n as u64)?;
        Ok(ConditionedSampler {
            dist,
            n,
            buffer: vec![0; n],
        })
    }

    /// One attempt: fills the buffer, returning whether the draws sum to
    /// `n - 1`. Gives up as soon as the running sum overshoots, since the
    /// remaining draws cannot bring it back down.
    #[inline]
    fn attempt<R: RngCore + ?Sized>(&mut self, rng: &mut R) -> bool {
        let target = self.n as u64 - 1;
        let mut sum = 0u64;
        for slot in self.buffer.iter_mut() {
            let x = self.dist.sample(rng);
            *slot = x;
            sum += x as u64;
            if sum > target {
                return false;
            }
        }
        sum == target
    }

    pub fn sample<R: RngCore + ?Sized>(
        &mut self,
        rng: &mut R,
        max_attempts: u64,
    ) -> Result<ConditionedSample> {
        if max_attempts == 0 {
            return Err(Error::InvalidParameter(
                "max_attempts must be at least 1".into(),
            ));
        }
        for attempt in 1..=max_attempts {
            if self.attempt(rng) {
                let mut degrees = self.buffer.clone();
                tree::rotate_to_valid(&mut degrees)?;
                let seq = PreorderDegreeSequence::new(degrees);
                debug_assert!(seq.is_valid());
                return Ok(ConditionedSample {
                    tree: Tree::build_unchecked(seq),
                    attempts: attempt,
                });
            }
        }
        Err(Error::RejectionLimitExceeded {
            attempts: max_attempts,
        })
    }

    /// Runs `attempts` sum checks without building trees; returns how many
    /// were accepted.
    pub fn count_acceptances<R: RngCore + ?Sized>(&mut self, rng: &mut R, attempts: u64) -> u64 {
        (0..attempts).filter(|_| self.attempt(rng)).count() as u64
    }
}

/// Exact draw of the Galton-Watson tree conditioned on `n` vertices.
pub fn sample_conditioned<R: RngCore + ?Sized>(
    dist: &OffspringDistribution,
    n: usize,
    rng: &mut R,
    max_attempts: u64,
) -> Result<ConditionedSample> {
    ConditionedSampler::new(dist, n)?.sample(rng, max_attempts)
}

#[derive(Debug, Clone)]
pub enum Unconditioned {
    Finite(Tree),
    /// More than `size_cap` vertices were generated.
    Overflow,
}

impl Unconditioned {
    pub fn tree(&self) -> Option<&Tree> {
        match self {
            Unconditioned::Finite(t) => Some(t),
            Unconditioned::Overflow => None,
        }
    }
}

/// Grows an unconditioned tree breadth first with an explicit queue.
pub fn sample_unconditioned<R: RngCore + ?Sized>(
    dist: &OffspringDistribution,
    rng: &mut R,
    size_cap: usize,
) -> Unconditioned {
    assert!(size_cap >= 1, "size_cap must be at least 1");
    let size_cap = size_cap.min(MAX_VERTICES);
    let mut bfs_degrees: Vec<u32> = Vec::new();
    // Vertices are numbered in BFS order, so the queue is the index range
    // [bfs_degrees.len(), generated).
    let mut generated = 1usize;
    while bfs_degrees.len() < generated {
        let d = dist.sample(rng);
        bfs_degrees.push(d);
        generated += d as usize;
        if generated > size_cap {
            return Unconditioned::Overflow;
        }
    }
    Unconditioned::Finite(tree::from_bfs_degrees(&bfs_degrees))
}

/// Size and height of an unconditioned tree, grown one generation at a time
/// without materializing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progeny {
    /// Vertices generated (total size when `extinct`).
    pub size: u64,
    /// Deepest generation that was non-empty.
    pub height: u64,
    /// The process died out before any cap was hit.
    pub extinct: bool,
    /// Generation count exceeded `size_cap`.
    pub overflow: bool,
}

/// Generation-wise Galton-Watson process. Stops at extinction, when more
/// than `size_cap` vertices exist, or once generation `height_cap` is
/// non-empty (then `height == height_cap` and the true height is at least that).
pub fn sample_progeny<R: RngCore + ?Sized>(
    dist: &OffspringDistribution,
    rng: &mut R,
    size_cap: u64,
    height_cap: u64,
) -> Progeny {
    let mut generation = 1u64;
    let mut size = 1u64;
    let mut height = 0u64;
    loop {
        if height >= height_cap {
            return Progeny {
                size,
                height,
                extinct: false,
                overflow: false,
            };
        }
        let mut next = 0u64;
        for _ in 0..generation {
            next += dist.sample(rng) as u64;
            if size + next > size_cap {
                return Progeny {
                    size: size + next,
                    height,
                    extinct: false,
                    overflow: true,
                };
            }
        }
        if next == 0 {
            return Progeny {
                size,
                height,
                extinct: true,
                overflow: false,
            };
        }
        size += next;
        height += 1;
        generation = next;
    }
}

/// Local-limit approximation of `Pr(S_n = n - 1)`, the acceptance
/// probability of one rejection attempt.
pub fn predicted_acceptance_rate(dist: &OffspringDistribution, n: usize) -> Result<f64> {
    dist.require_size(n as u64)?;
    let h = dist.span() as f64;
    let var = dist.variance();
    let n = n as f64;
    Ok(h / (2.0 * std::f64::consts::PI * var * n).sqrt() * (-1.0 / (2.0 * n * var)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let mut a = RandomStream::new(42, 3);
        let mut b = RandomStream::new(42, 3);
        let mut c = RandomStream::new(42, 4);
        let xa: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let xb: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        let xc: Vec<u64> = (0..8).map(|_| c.next_u64()).collect();
        assert_eq!(xa, xb);
        assert_ne!(xa, xc);
    }

    #[test]
    fn single_vertex_always() {
        let d = OffspringDistribution::poisson();
        let mut rng = RandomStream::new(1, 0);
        for _ in 0..10 {
            let s = sample_conditioned(&d, 1, &mut rng, 1000).unwrap();
            assert_eq!(s.tree.n(), 1);
        }
    }

    #[test]
    fn span_obstruction() {
        let d = OffspringDistribution::two_point(2).unwrap();
        let mut rng = RandomStream::new(1, 0);
        assert!(matches!(
            sample_conditioned(&d, 4, &mut rng, 10),
            Err(Error::IncompatibleSize { n: 4, span: 2 })
        ));
        assert!(matches!(
            predicted_acceptance_rate(&d, 4),
            Err(Error::IncompatibleSize { .. })
        ));
        let t = sample_conditioned(&d, 7, &mut rng, 10_000).unwrap().tree;
        assert_eq!(t.n(), 7);
        assert!(t.degrees().as_slice().iter().all(|&x| x == 0 || x == 2));
    }

    #[test]
    fn rejection_limit() {
        let d = OffspringDistribution::poisson();
        let mut rng = RandomStream::new(9, 0);
        // one attempt at n = 400 is accepted with probability ~2%
        let failures = (0..20)
            .filter(|_| {
                matches!(
                    sample_conditioned(&d, 400, &mut rng, 1),
                    Err(Error::RejectionLimitExceeded { attempts: 1 })
                )
            })
            .count();
        assert!(failures > 10);
        assert!(sample_conditioned(&d, 5, &mut rng, 0).is_err());
    }

    #[test]
    fn unconditioned_size_cap_one() {
        let d = OffspringDistribution::poisson();
        for seed in 0..200 {
            let mut rng = RandomStream::new(seed, 0);
            let first = d.sample(&mut rng.clone());
            let out = sample_unconditioned(&d, &mut rng, 1);
            assert_eq!(matches!(out, Unconditioned::Overflow), first > 0);
        }
    }

    #[test]
    fn unconditioned_two_point_odd() {
        let d = OffspringDistribution::two_point(2).unwrap();
        let mut rng = RandomStream::new(5, 0);
        for _ in 0..2000 {
            if let Unconditioned::Finite(t) = sample_unconditioned(&d, &mut rng, 10_000) {
                assert_eq!(t.n() % 2, 1);
                assert!(t.degrees().is_valid());
            }
        }
    }

    #[test]
    fn progeny_matches_tree_sampler() {
        // Same stream, same draw order (BFS by generation), same size/height.
        let d = OffspringDistribution::geometric();
        for seed in 0..300 {
            let tree = sample_unconditioned(&d, &mut RandomStream::new(seed, 1), 100_000);
            let prog = sample_progeny(&d, &mut RandomStream::new(seed, 1), 100_000, u64::MAX);
            let Some(t) = tree.tree() else { continue };
            assert!(prog.extinct);
            assert_eq!(prog.size, t.n() as u64);
            assert_eq!(prog.height, t.height() as u64);
        }
    }

    #[test]
    fn acceptance_rate_formula() {
        let p = OffspringDistribution::poisson();
        let g = OffspringDistribution::geometric();
        let t = OffspringDistribution::two_point(2).unwrap();
        let rp = predicted_acceptance_rate(&p, 10_000).unwrap();
        assert!((rp - 3.989e-3).abs() < 1e-6, "{rp}");
        let rg = predicted_acceptance_rate(&g, 10_000).unwrap();
        assert!((rg - 2.821e-3).abs() < 1e-6, "{rg}");
        let rt = predicted_acceptance_rate(&t, 10_001).unwrap();
        let base = 1.0 / (2.0 * std::f64::consts::PI * 10_001.0f64).sqrt()
            * (-1.0 / (2.0 * 10_001.0f64)).exp();
        assert!((rt - 2.0 * base).abs() < 1e-15);
    }
}
