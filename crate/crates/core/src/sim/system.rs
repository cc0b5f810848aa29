use super::ic::InitialCondition;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Labelled particles on `Z`.
///
/// Labels are consecutive integers `first_label, first_label + 1, ...`
/// numbered right to left, so `positions` is strictly decreasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParticleSystem {
    first_label: i64,
    positions: Vec<i64>,
    time: f64,
    ic: Option<InitialCondition>,
}

impl ParticleSystem {
    pub fn new(first_label: i64, positions: Vec<i64>) -> Result<Self> {
        if positions.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidArgument(
                "positions must be strictly decreasing in the label".into(),
            ));
        }
        Ok(Self {
            first_label,
            positions,
            time: 0.0,
            ic: None,
        })
    }

    pub(crate) fn with_ic(first_label: i64, positions: Vec<i64>, ic: InitialCondition) -> Result<Self> {
        let mut ps = Self::new(first_label, positions)?;
        ps.ic = Some(ic);
        Ok(ps)
    }

    pub fn ic(&self) -> Option<&InitialCondition> {
        self.ic.as_ref()
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub(crate) fn set_time(&mut self, t: f64) {
        self.time = t;
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn first_label(&self) -> i64 {
        self.first_label
    }

    /// Largest label present (`first_label - 1` when empty).
    pub fn last_label(&self) -> i64 {
        self.first_label + self.positions.len() as i64 - 1
    }

    pub fn labels(&self) -> std::ops::RangeInclusive<i64> {
        self.first_label..=self.last_label()
    }

    /// Positions in label order (decreasing sites).
    pub fn positions(&self) -> &[i64] {
        &self.positions
    }

    pub(crate) fn positions_mut(&mut self) -> &mut [i64] {
        &mut self.positions
    }

    pub(crate) fn index_of(&self, label: i64) -> Result<usize> {
        let i = label - self.first_label;
        if i < 0 || i >= self.positions.len() as i64 {
            return Err(Error::UnknownLabel(label));
        }
        Ok(i as usize)
    }

    pub fn position(&self, label: i64) -> Result<i64> {
        Ok(self.positions[self.index_of(label)?])
    }

    pub fn is_occupied(&self, site: i64) -> bool {
        let i = self.positions.partition_point(|&x| x > site);
        i < self.positions.len() && self.positions[i] == site
    }

    /// Label of the particle at `site`, if any.
    pub fn label_at(&self, site: i64) -> Option<i64> {
        let i = self.positions.partition_point(|&x| x > site);
        (i < self.positions.len() && self.positions[i] == site)
            .then(|| self.first_label + i as i64)
    }

    /// Label of the rightmost particle at or left of `site`.
    pub fn first_label_at_or_left_of(&self, site: i64) -> Option<i64> {
        let i = self.positions.partition_point(|&x| x > site);
        (i < self.positions.len()).then(|| self.first_label + i as i64)
    }

    /// `η_j` for `j` in `lo..=hi`.
    pub fn occupation(&self, lo: i64, hi: i64) -> Vec<bool> {
        if lo > hi {
            return Vec::new();
        }
        let mut eta = vec![false; (hi - lo + 1) as usize];
        for &x in &self.positions {
            if lo <= x && x <= hi {
                eta[(x - lo) as usize] = true;
            }
        }
        eta
    }

    /// Whether the particle at index `i` has an empty right neighbour.
    #[inline]
    pub(crate) fn mobile(&self, i: usize) -> bool {
        i == 0 || self.positions[i - 1] > self.positions[i] + 1
    }

    /// Moves `label` one site to the right.
    pub fn jump(&mut self, label: i64) -> Result<()> {
        let i = self.index_of(label)?;
        if !self.mobile(i) {
            return Err(Error::IllegalJump(self.positions[i]));
        }
        self.positions[i] += 1;
        Ok(())
    }

    /// Exclusion and ordering.
    pub fn check_invariants(&self) -> Result<()> {
        if self.positions.windows(2).all(|w| w[1] < w[0]) {
            Ok(())
        } else {
            Err(Error::InvalidArgument("exclusion violated".into()))
        }
    }
}
