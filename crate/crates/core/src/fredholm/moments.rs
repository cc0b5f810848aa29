//! Moments of a distribution known only through a tabulated CDF.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Largest grid spacing accepted by [`cdf_moments`].
pub const MAX_SPACING: f64 = 1e-2;
/// Both tails of the table must be resolved to this level.
pub const TAIL_TOL: f64 = 1e-8;

/// CDF values on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TabulatedCdf {
    pub s: Vec<f64>,
    pub f: Vec<f64>,
}

impl TabulatedCdf {
    pub fn new(s: Vec<f64>, f: Vec<f64>) -> Result<Self> {
        if s.len() != f.len() || s.len() < 3 {
            return Err(Error::InvalidArgument(
                "tabulated CDF needs matching grids of at least 3 points".into(),
            ));
        }
        if s.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidArgument("CDF grid must be increasing".into()));
        }
        Ok(Self { s, f })
    }

    /// Tabulates `cdf` on `lo, lo + step, ...` up to `hi` (inclusive, with
    /// the count rounded to the nearest integer).
    pub fn from_fn<F: FnMut(f64) -> Result<f64>>(
        lo: f64,
        hi: f64,
        step: f64,
        mut cdf: F,
    ) -> Result<Self> {
        let n = grid_len(lo, hi, step)?;
        let s: Vec<f64> = (0..n).map(|i| lo + i as f64 * step).collect();
        let f = s.iter().map(|&x| cdf(x)).collect::<Result<Vec<_>>>()?;
        Self::new(s, f)
    }

    /// Linear interpolation, clamped to the end values outside the grid.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.s.len();
        if x <= self.s[0] {
            return self.f[0];
        }
        if x >= self.s[n - 1] {
            return self.f[n - 1];
        }
        let idx = self.s.partition_point(|&v| v <= x) - 1;
        let t = (x - self.s[idx]) / (self.s[idx + 1] - self.s[idx]);
        self.f[idx] + t * (self.f[idx + 1] - self.f[idx])
    }

    fn spacing(&self) -> Result<f64> {
        let h = self.s[1] - self.s[0];
        let uniform = self
            .s
            .windows(2)
            .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.max(1.0));
        if !uniform {
            return Err(Error::InvalidArgument("CDF grid must be uniform".into()));
        }
        Ok(h)
    }
}

pub(crate) fn grid_len(lo: f64, hi: f64, step: f64) -> Result<usize> {
    if !(step > 0.0) || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "invalid grid [{lo}, {hi}] step {step}"
        )));
    }
    Ok(((hi - lo) / step).round() as usize + 1)
}

/// A moment together with its grid-halving error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentEstimate {
    pub value: f64,
    pub error: f64,
}

/// `k = 1` gives the mean; `k = 2..=4` the `k`-th central moment.
///
/// The density is the central difference of the table and moments are
/// trapezoidal sums against it, normalized by the total mass. The error
/// estimate is the change when the same computation runs on every other
/// grid point.
pub fn cdf_moments(cdf: &TabulatedCdf, k: u32) -> Result<MomentEstimate> {
    if !(1..=4).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "moment order {k} outside 1..=4"
        )));
    }
    let h = cdf.spacing()?;
    if h > MAX_SPACING * (1.0 + 1e-9) {
        return Err(Error::InvalidArgument(format!(
            "CDF spacing {h} exceeds {MAX_SPACING}"
        )));
    }
    let n = cdf.f.len();
    let left = cdf.f[0];
    let right = 1.0 - cdf.f[n - 1];
    if left > TAIL_TOL || right > TAIL_TOL {
        return Err(Error::NonConvergence {
            what: "CDF table tails".into(),
            achieved: left.max(right),
        });
    }
    let fine = moment_on(&cdf.s, &cdf.f, k);
    let coarse_s: Vec<f64> = cdf.s.iter().step_by(2).copied().collect();
    let coarse_f: Vec<f64> = cdf.f.iter().step_by(2).copied().collect();
    let coarse = moment_on(&coarse_s, &coarse_f, k);
    Ok(MomentEstimate {
        value: fine,
        error: (fine - coarse).abs(),
    })
}

fn moment_on(s: &[f64], f: &[f64], k: u32) -> f64 {
    let n = s.len();
    if n < 3 {
        return f64::NAN;
    }
    let h = s[1] - s[0];
    let density: Vec<f64> = (1..n - 1)
        .map(|i| (f[i + 1] - f[i - 1]) / (2.0 * h))
        .collect();
    let pts = &s[1..n - 1];
    let mass: f64 = density.iter().sum::<f64>() * h;
    let mean = pts.iter().zip(&density).map(|(x, p)| x * p).sum::<f64>() * h / mass;
    if k == 1 {
        return mean;
    }
    pts.iter()
        .zip(&density)
        .map(|(x, p)| (x - mean).powi(k as i32) * p)
        .sum::<f64>()
        * h
        / mass
}

#[cfg(test)]
mod tests {
    use super::*;

    fn normal_cdf(x: f64) -> f64 {
        // Abramowitz-Stegun style erfc is not accurate enough here, so use
        // the series of the error function, fine on |x| <= 7.
        0.5 * (1.0 + erf(x / std::f64::consts::SQRT_2))
    }

    fn erf(x: f64) -> f64 {
        if x.abs() > 3.0 {
            // continued fraction for erfc
            let ax = x.abs();
            let mut cf = 0.0;
            for k in (1..60).rev() {
                cf = (k as f64 / 2.0) / (ax + cf);
            }
            let erfc = (-ax * ax).exp() / std::f64::consts::PI.sqrt() / (ax + cf);
            return x.signum() * (1.0 - erfc);
        }
        let mut term = x;
        let mut sum = x;
        for n in 1..200 {
            term *= -x * x / n as f64;
            sum += term / (2 * n + 1) as f64;
        }
        2.0 / std::f64::consts::PI.sqrt() * sum
    }

    #[test]
    fn standard_normal_variance() {
        let t = TabulatedCdf::from_fn(-7.0, 7.0, 0.01, |x| Ok(normal_cdf(x))).unwrap();
        let mean = cdf_moments(&t, 1).unwrap();
        let var = cdf_moments(&t, 2).unwrap();
        let m4 = cdf_moments(&t, 4).unwrap();
        assert!(mean.value.abs() < 1e-6);
        assert!((var.value - 1.0).abs() < 1e-4, "{var:?}");
        assert!((m4.value - 3.0).abs() < 1e-3, "{m4:?}");
        assert!(var.error < 1e-3);
    }

    #[test]
    fn point_mass_variance_is_grid_limited() {
        // the central difference smears a jump over two grid points
        let h = 0.01;
        let t = TabulatedCdf::from_fn(-1.0, 1.0, h, |x| Ok(if x >= 0.0 { 1.0 } else { 0.0 }))
            .unwrap();
        let mean = cdf_moments(&t, 1).unwrap();
        let var = cdf_moments(&t, 2).unwrap();
        assert!((mean.value + 0.5 * h).abs() < 1e-12, "{mean:?}");
        assert!((var.value - 0.25 * h * h).abs() < 1e-12, "{var:?}");
    }

    #[test]
    fn unresolved_tails_are_rejected() {
        let t = TabulatedCdf::from_fn(-2.0, 2.0, 0.01, |x| Ok(normal_cdf(x))).unwrap();
        assert!(matches!(cdf_moments(&t, 2), Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn coarse_grid_is_rejected() {
        let t = TabulatedCdf::from_fn(-8.0, 8.0, 0.05, |x| Ok(normal_cdf(x))).unwrap();
        assert!(cdf_moments(&t, 2).is_err());
    }

    #[test]
    fn interpolation_is_clamped_and_linear() {
        let t = TabulatedCdf::new(vec![0.0, 1.0, 2.0], vec![0.0, 0.5, 1.0]).unwrap();
        assert_eq!(t.eval(-1.0), 0.0);
        assert_eq!(t.eval(3.0), 1.0);
        assert!((t.eval(0.5) - 0.25).abs() < 1e-15);
    }
}
