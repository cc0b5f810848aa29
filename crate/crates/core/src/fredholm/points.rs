//! One-point laws `F₂(s) = P(A₂(0) <= s)` and `F₁(2s) = P(A₁(0) <= s)`.

use super::moments::{grid_len, TabulatedCdf};
use super::nystrom::{fredholm_det_with, NystromParams};
use super::query::DistributionQuery;
use crate::error::{Error, Result};
use crate::kernels::KernelKind;

/// Thresholds outside this range are rejected by the one-point laws.
///
/// Wider than the bulk so tabulated CDFs reach both tails below `1e-8`:
/// `F₂(-8) ~ 1e-19`, `1 - F₂(8) ~ 1e-17`.
pub const ONE_POINT_RANGE: (f64, f64) = (-8.0, 8.0);

fn check_range(s: f64) -> Result<()> {
    if s.is_finite() && s >= ONE_POINT_RANGE.0 && s <= ONE_POINT_RANGE.1 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what: "one-point distribution",
            x: s,
            lo: ONE_POINT_RANGE.0,
            hi: ONE_POINT_RANGE.1,
        })
    }
}

/// One-point law of the process with kernel `kind` at threshold `s`,
/// clamped to `[0, 1]`.
pub fn one_point(kind: KernelKind, s: f64) -> Result<f64> {
    one_point_with(kind, s, NystromParams::default_for(kind))
}

pub fn one_point_with(kind: KernelKind, s: f64, params: NystromParams) -> Result<f64> {
    check_range(s)?;
    let q = DistributionQuery::one_point(kind, s)?;
    Ok(fredholm_det_with(&q, params)?.clamp(0.0, 1.0))
}

/// GUE Tracy–Widom distribution `F₂(s)`.
pub fn f2_point(s: f64) -> Result<f64> {
    one_point(KernelKind::Airy2, s)
}

/// `F₁(2s)`, the one-point law of the Airy₁ process at `s`.
pub fn f1_scaled_point(s: f64) -> Result<f64> {
    one_point(KernelKind::Airy1, s)
}

/// Tabulates the one-point law on `[lo, hi]` with spacing `step`.
pub fn one_point_table(kind: KernelKind, lo: f64, hi: f64, step: f64) -> Result<TabulatedCdf> {
    grid_len(lo, hi, step)?;
    TabulatedCdf::from_fn(lo, hi, step, |s| one_point(kind, s))
}
