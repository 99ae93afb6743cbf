//! Closed-form worst-case upper bounds on the burning number of any tree.
//!
//! All four are evaluated in exact integer arithmetic.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KnownBounds {
    /// `ceil(sqrt(2(n-1)))`, from burning the DFS cycle of the tree.
    pub dfs_cycle: u64,
    /// `floor(sqrt(12n/7) + 3)`.
    pub bessy: u64,
    /// `ceil((sqrt(24n+33) - 3)/4)`.
    pub land_lu: u64,
    /// `ceil(sqrt(4n/3)) + 1`.
    pub bastide: u64,
}

impl KnownBounds {
    pub fn min(&self) -> u64 {
        self.dfs_cycle
            .min(self.bessy)
            .min(self.land_lu)
            .min(self.bastide)
    }
}

/// Smallest m with m*m >= num/den.
fn ceil_sqrt_ratio(num: u64, den: u64) -> u64 {
    let mut m = ((num as f64 / den as f64).sqrt()) as u64;
    while (m as u128) * (m as u128) * (den as u128) < num as u128 {
        m += 1;
    }
    while m > 0 && ((m - 1) as u128) * ((m - 1) as u128) * (den as u128) >= num as u128 {
        m -= 1;
    }
    m
}

/// Largest m with m*m <= num/den.
fn floor_sqrt_ratio(num: u64, den: u64) -> u64 {
    let mut m = ((num as f64 / den as f64).sqrt()) as u64;
    while (m as u128) * (m as u128) * (den as u128) > num as u128 {
        m -= 1;
    }
    while ((m + 1) as u128) * ((m + 1) as u128) * (den as u128) <= num as u128 {
        m += 1;
    }
    m
}

/// The four bounds for a tree on `n >= 2` vertices.
pub fn known_bounds(n: u64) -> KnownBounds {
    assert!(n >= 2, "known bounds are stated for n >= 2");
    // smallest m >= 0 with 4m + 3 >= sqrt(24n + 33)
    let target = 24 * n as u128 + 33;
    let mut land_lu = 0u64;
    while ((4 * land_lu + 3) as u128).pow(2) < target {
        land_lu += 1;
    }
    KnownBounds {
        dfs_cycle: ceil_sqrt_ratio(2 * (n - 1), 1),
        bessy: floor_sqrt_ratio(12 * n, 7) + 3,
        land_lu,
        bastide: ceil_sqrt_ratio(4 * n, 3) + 1,
    }
}
