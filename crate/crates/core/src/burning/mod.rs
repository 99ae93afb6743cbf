//! Burning process, exact solvers, the constructive upper bound and the
//! pair-count lower bound.

mod cover;
mod exact;
mod known;
mod lower;
mod process;
mod scheme;

pub use cover::{bhat_exact, min_ball_cover, verify_cover, BallCover, CoverCertificate};
pub use exact::{burning_number_exact, DEFAULT_NODE_CAP, MAX_EXACT_VERTICES};
pub use known::{known_bounds, KnownBounds};
pub use lower::{pair_lower_bound, LowerBoundCertificate, PairLowerBound};
pub use process::{burns_within, simulate_burning, BurnOutcome, BurningSchedule};
pub use scheme::{scheme_cover, scheme_upper_bound, SchemeBound};
