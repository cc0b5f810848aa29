use crate::error::{Error, Result};
use crate::kernels::KernelKind;
use serde::{Deserialize, Serialize};

/// Event `⋂_k {A(u_k) <= s_k}` for the Airy₁ or Airy₂ process.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionQuery {
    points: Vec<(f64, f64)>,
    kernel: KernelKind,
}

impl DistributionQuery {
    /// `points` are `(u_k, s_k)` pairs with strictly increasing `u_k`.
    pub fn new(kernel: KernelKind, points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument(
                "a distribution query needs at least one time point".into(),
            ));
        }
        if points.iter().any(|&(u, s)| !u.is_finite() || !s.is_finite()) {
            return Err(Error::InvalidArgument("non-finite time or threshold".into()));
        }
        if points.windows(2).any(|w| !(w[0].0 < w[1].0)) {
            return Err(Error::InvalidArgument(
                "time points must be strictly increasing".into(),
            ));
        }
        Ok(Self { points, kernel })
    }

    /// One-point query at `u = 0`.
    pub fn one_point(kernel: KernelKind, s: f64) -> Result<Self> {
        Self::new(kernel, vec![(0.0, s)])
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn kernel(&self) -> KernelKind {
        self.kernel
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Same thresholds, all times shifted by `c`.
    pub fn shifted(&self, c: f64) -> Result<Self> {
        Self::new(
            self.kernel,
            self.points.iter().map(|&(u, s)| (u + c, s)).collect(),
        )
    }
}
