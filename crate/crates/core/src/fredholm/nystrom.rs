//! Nyström discretization of `det(1 - χ_s K χ_s)` on
//! `L²({u_1..u_m} x R)`.
//!
//! Slice `k` is truncated to `[s_k, s_k + L]` and carries an `n`-point
//! Gauss–Legendre rule; the matrix entry for nodes `(k, i)` and `(l, j)`
//! is `sqrt(w_i) e^{θ(x_i - x_j)} K(u_k, x_i; u_l, x_j) sqrt(w_j)`. The
//! exponential factor is a diagonal similarity, so every principal minor,
//! and with it the determinant, is unchanged by `θ` in exact arithmetic.

use super::lu;
use super::query::DistributionQuery;
use crate::error::{Error, Result};
use crate::kernels::KernelKind;
use crate::special::quadrature::{gauss_legendre, QuadratureRule};
use serde::{Deserialize, Serialize};

/// Allowed overshoot of the determinant outside `[0, 1]`.
pub const PROBABILITY_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NystromParams {
    /// Truncation length `L` of each slice.
    pub length: f64,
    /// Quadrature nodes per slice.
    pub nodes: usize,
    /// Conjugation exponent `θ`.
    pub theta: f64,
}

impl NystromParams {
    pub const MIN_NODES: usize = 8;

    /// `L = 20`, 64 nodes; `θ = 0.5` for Airy₁ and 0 for Airy₂.
    pub fn default_for(kernel: KernelKind) -> Self {
        Self {
            length: 20.0,
            nodes: 64,
            theta: match kernel {
                KernelKind::Airy1 => 0.5,
                KernelKind::Airy2 => 0.0,
            },
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.length > 0.0 && self.length.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "truncation length must be positive, got {}",
                self.length
            )));
        }
        if self.nodes < Self::MIN_NODES {
            return Err(Error::InvalidArgument(format!(
                "need at least {} nodes per slice, got {}",
                Self::MIN_NODES,
                self.nodes
            )));
        }
        if !self.theta.is_finite() {
            return Err(Error::InvalidArgument("non-finite θ".into()));
        }
        Ok(())
    }
}

/// Assembled Nyström matrix `M`; the Fredholm determinant is `det(I - M)`.
#[derive(Debug, Clone)]
pub struct NystromSystem {
    pub rules: Vec<QuadratureRule>,
    /// Row-major, `dim x dim`.
    pub matrix: Vec<f64>,
    pub dim: usize,
    pub params: NystromParams,
}

impl NystromSystem {
    pub fn assemble(q: &DistributionQuery, params: NystromParams) -> Result<Self> {
        params.validate()?;
        let rules = q
            .points()
            .iter()
            .map(|&(_, s)| gauss_legendre(params.nodes, s, s + params.length))
            .collect::<Result<Vec<_>>>()?;
        let n = params.nodes;
        let dim = n * rules.len();
        let mut matrix = vec![0.0; dim * dim];
        let kernel = q.kernel();
        for (k, (&(uk, _), rk)) in q.points().iter().zip(&rules).enumerate() {
            for (l, (&(ul, _), rl)) in q.points().iter().zip(&rules).enumerate() {
                let block = kernel.block(uk, &rk.nodes, ul, &rl.nodes)?;
                for i in 0..n {
                    let wi = rk.weights[i].sqrt();
                    let xi = rk.nodes[i];
                    for j in 0..n {
                        let wj = rl.weights[j].sqrt();
                        let xj = rl.nodes[j];
                        let conj = if params.theta == 0.0 {
                            1.0
                        } else {
                            (params.theta * (xi - xj)).exp()
                        };
                        let v = wi * conj * block[i * n + j] * wj;
                        if !v.is_finite() {
                            return Err(Error::Numerical(format!(
                                "non-finite Nyström entry at slice ({k},{l}), nodes ({xi},{xj})"
                            )));
                        }
                        matrix[(k * n + i) * dim + l * n + j] = v;
                    }
                }
            }
        }
        Ok(Self {
            rules,
            matrix,
            dim,
            params,
        })
    }

    /// `det(I - M)` by LU, without the probability range check.
    pub fn det_identity_minus(&self) -> f64 {
        let d = self.dim;
        let mut a: Vec<f64> = self.matrix.iter().map(|v| -v).collect();
        for i in 0..d {
            a[i * d + i] += 1.0;
        }
        lu::det_in_place(&mut a, d)
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.matrix[i * self.dim + i]).sum()
    }
}

/// Nyström approximation of the Fredholm determinant for `q`.
pub fn fredholm_det_nystrom(
    q: &DistributionQuery,
    length: f64,
    nodes: usize,
    theta: f64,
) -> Result<f64> {
    fredholm_det_with(
        q,
        NystromParams {
            length,
            nodes,
            theta,
        },
    )
}

pub fn fredholm_det_with(q: &DistributionQuery, params: NystromParams) -> Result<f64> {
    let system = NystromSystem::assemble(q, params)?;
    let det = system.det_identity_minus();
    if !det.is_finite() || det < -PROBABILITY_SLACK || det > 1.0 + PROBABILITY_SLACK {
        return Err(Error::Numerical(format!(
            "Fredholm determinant {det} is not a probability"
        )));
    }
    Ok(det)
}
