//! Coin flips for the discrete-time updates.

use super::seed::{splitmix64, unit_f64};

pub trait CoinSource {
    /// Whether particle `label` attempting a jump at `step` succeeds with
    /// probability `p`.
    fn flip(&mut self, label: i64, step: u64, p: f64) -> bool;
}

/// Counter-based coins: the outcome is a hash of `(seed, label, step)`, so
/// it does not depend on which other particles were asked before.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HashedCoins {
    pub seed: u64,
}

impl HashedCoins {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    #[inline]
    pub fn uniform(&self, label: i64, step: u64) -> f64 {
        let h = splitmix64(self.seed ^ splitmix64((label as u64) ^ splitmix64(step).rotate_left(17)));
        unit_f64(h)
    }
}

impl CoinSource for HashedCoins {
    #[inline]
    fn flip(&mut self, label: i64, step: u64, p: f64) -> bool {
        self.uniform(label, step) < p
    }
}

/// Every attempt succeeds.
#[derive(Debug, Clone, Copy, Default)]
pub struct AlwaysSucceed;

impl CoinSource for AlwaysSucceed {
    fn flip(&mut self, _: i64, _: u64, _: f64) -> bool {
        true
    }
}
