//! Rescaled particle positions. Particle indices use `floor`.

use crate::error::{Error, Result};
use crate::sim::Trajectory;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IcTag {
    Step,
    Alternating,
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RescaledSample {
    pub u: f64,
    pub value: f64,
    pub t: f64,
    pub ic: IcTag,
    /// Label whose position was rescaled.
    pub label: i64,
}

fn position_at(traj: &Trajectory, t: f64, label: i64) -> Result<i64> {
    let i = traj.sample_index(t).ok_or_else(|| {
        Error::InvalidArgument(format!("trajectory has no sample at time {t}"))
    })?;
    traj.position(i, label)
}

fn floor_label(v: f64) -> Result<i64> {
    if !v.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite particle index {v}")));
    }
    Ok(v.floor() as i64)
}

/// Label `[t/4 + u (t/2)^{2/3}]`.
pub fn step_label(t: f64, u: f64) -> Result<i64> {
    floor_label(t / 4.0 + u * (t / 2.0).powf(2.0 / 3.0))
}

/// `(x_k(t) + 2u (t/2)^{2/3} - u² (t/2)^{1/3}) / (-(t/2)^{1/3})` with
/// `k = [t/4 + u (t/2)^{2/3}]`.
pub fn rescale_step(traj: &Trajectory, t: f64, u: f64) -> Result<RescaledSample> {
    let label = step_label(t, u)?;
    let x = position_at(traj, t, label)? as f64;
    let c = (t / 2.0).cbrt();
    let value = (x + 2.0 * u * c * c - u * u * c) / -c;
    Ok(RescaledSample {
        u,
        value,
        t,
        ic: IcTag::Step,
        label,
    })
}

/// Label `[t/4 + u t^{2/3}]`.
pub fn alternating_label(t: f64, u: f64) -> Result<i64> {
    floor_label(t / 4.0 + u * t.powf(2.0 / 3.0))
}

/// `(x_k(t) + 2u t^{2/3}) / (-t^{1/3})` with `k = [t/4 + u t^{2/3}]`.
pub fn rescale_alternating(traj: &Trajectory, t: f64, u: f64) -> Result<RescaledSample> {
    let label = alternating_label(t, u)?;
    let x = position_at(traj, t, label)? as f64;
    let c = t.cbrt();
    Ok(RescaledSample {
        u,
        value: (x + 2.0 * u * c * c) / -c,
        t,
        ic: IcTag::Alternating,
        label,
    })
}

fn check_periodic(d: i64, p: f64) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("period d must be at least 2, got {d}")));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidArgument(format!("jump probability {p} outside (0, 1)")));
    }
    Ok(())
}

/// `(κ, μ)` for the `d`-periodic sequential update with jump probability
/// `p`: `κ = (2(1-p)p)^{1/3} (d(d-1))^{2/3} / (d-p)`, `μ = -2κ²/(d-1)`.
pub fn periodic_constants(d: i64, p: f64) -> Result<(f64, f64)> {
    check_periodic(d, p)?;
    let df = d as f64;
    let kappa = (2.0 * (1.0 - p) * p).cbrt() * (df * (df - 1.0)).powf(2.0 / 3.0) / (df - p);
    let mu = -kappa * kappa * 2.0 / (df - 1.0);
    Ok((kappa, mu))
}

/// `n(u, t) = [p(d-1)/(d(d-p)) t - (μu/d) t^{2/3}]`, `t` in steps.
pub fn n_index(d: i64, p: f64, u: f64, t: f64) -> Result<i64> {
    let (_, mu) = periodic_constants(d, p)?;
    let df = d as f64;
    floor_label(p * (df - 1.0) / (df * (df - p)) * t - mu * u / df * t.powf(2.0 / 3.0))
}

/// `(x_{n(u,t)}(t) - μu t^{2/3}) / (-κ t^{1/3})`.
pub fn rescale_periodic(traj: &Trajectory, d: i64, p: f64, t: f64, u: f64) -> Result<RescaledSample> {
    let (kappa, mu) = periodic_constants(d, p)?;
    let label = n_index(d, p, u, t)?;
    let x = position_at(traj, t, label)? as f64;
    let c = t.cbrt();
    Ok(RescaledSample {
        u,
        value: (x - mu * u * c * c) / (-kappa * c),
        t,
        ic: IcTag::Periodic,
        label,
    })
}
