use super::nystrom::{fredholm_det_with, NystromParams};
use super::query::DistributionQuery;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Agreement required between successive refinement levels.
pub const JOINT_TOL: f64 = 1e-5;

/// Outcome of [`joint_law`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JointLaw {
    pub value: f64,
    /// Difference between the last two refinement levels.
    pub achieved_error: f64,
    /// Parameters of the accepted (finest) evaluation.
    pub params: NystromParams,
}

/// Joint distribution with automatic refinement: `(L, n)` against
/// `(2L, 2n)`, then once more to `(4L, 4n)` if they disagree.
pub fn joint_law(q: &DistributionQuery) -> Result<JointLaw> {
    joint_law_from(q, NystromParams::default_for(q.kernel()))
}

pub fn joint_law_from(q: &DistributionQuery, base: NystromParams) -> Result<JointLaw> {
    let level = |k: u32| NystromParams {
        length: base.length * f64::from(1u32 << k),
        nodes: base.nodes << k,
        theta: base.theta,
    };
    let mut prev = fredholm_det_with(q, level(0))?;
    for k in 1..=2 {
        let params = level(k);
        let cur = fredholm_det_with(q, params)?;
        let err = (cur - prev).abs();
        if err <= JOINT_TOL {
            return Ok(JointLaw {
                value: cur.clamp(0.0, 1.0),
                achieved_error: err,
                params,
            });
        }
        if k == 2 {
            return Err(Error::NonConvergence {
                what: format!("joint law of {} points", q.len()),
                achieved: err,
            });
        }
        prev = cur;
    }
    unreachable!()
}
