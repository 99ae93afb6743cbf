//! Burning numbers of conditioned Galton-Watson trees.
//!
//! The crate samples size-conditioned critical Galton-Watson trees exactly,
//! computes burning numbers (exactly on small trees, by certified upper and
//! lower bounds on large ones) and runs seeded Monte Carlo experiments on the
//! `n^{1/3}` scaling of the burning number.

pub mod burning;
pub mod error;
pub mod experiment;
pub mod offspring;
pub mod oracle;
pub mod sampler;
pub mod stats;
pub mod tree;
pub mod trials;
pub mod verify;

pub use error::{Error, Result};
pub use offspring::OffspringDistribution;
pub use sampler::RandomStream;
pub use tree::{PreorderDegreeSequence, Tree};
