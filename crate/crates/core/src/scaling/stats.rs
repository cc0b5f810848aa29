//! Empirical distribution functions and the variance function.

use crate::error::{Error, Result};
use crate::fredholm::TabulatedCdf;
use serde::{Deserialize, Serialize};

pub const MIN_SAMPLES: usize = 100;

/// Empirical CDF stored as sorted distinct values with cumulative
/// fractions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ecdf {
    pub values: Vec<f64>,
    /// `cumulative[i] = #{samples <= values[i]} / n`.
    pub cumulative: Vec<f64>,
    pub n: usize,
}

impl Ecdf {
    pub fn eval(&self, x: f64) -> f64 {
        let i = self.values.partition_point(|&v| v <= x);
        if i == 0 {
            0.0
        } else {
            self.cumulative[i - 1]
        }
    }
}

pub fn ecdf(samples: &[f64]) -> Result<Ecdf> {
    if samples.is_empty() || samples.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("ECDF needs finite samples".into()));
    }
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    let mut values = Vec::new();
    let mut cumulative = Vec::new();
    for (i, &x) in s.iter().enumerate() {
        if i + 1 < n && s[i + 1] == x {
            continue;
        }
        values.push(x);
        cumulative.push((i + 1) as f64 / n as f64);
    }
    Ok(Ecdf {
        values,
        cumulative,
        n,
    })
}

/// `sup_x |F_n(x) - F(x)|` for a continuous reference `F`, attained at a
/// jump of `F_n` from one side or the other.
pub fn ks_statistic<F: Fn(f64) -> f64>(e: &Ecdf, reference: F) -> f64 {
    let mut below = 0.0;
    let mut d: f64 = 0.0;
    for (&x, &c) in e.values.iter().zip(&e.cumulative) {
        let f = reference(x);
        d = d.max((c - f).abs()).max((f - below).abs());
        below = c;
    }
    d
}

/// Sup distance of two piecewise-linear CDFs, attained at a knot of one of
/// them.
pub fn ks_tabulated(a: &TabulatedCdf, b: &TabulatedCdf) -> f64 {
    a.s.iter()
        .chain(&b.s)
        .map(|&x| (a.eval(x) - b.eval(x)).abs())
        .fold(0.0, f64::max)
}

/// Unbiased variance of paired differences with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VarianceEstimate {
    pub value: f64,
    pub stderr: f64,
    pub samples: usize,
}

/// `g_emp(u)`: variance of `a_i - b_i` where both come from run `i`.
pub fn variance_g(at_u: &[f64], at_zero: &[f64]) -> Result<VarianceEstimate> {
    if at_u.len() != at_zero.len() {
        return Err(Error::InvalidArgument("paired samples differ in length".into()));
    }
    let d: Vec<f64> = at_u.iter().zip(at_zero).map(|(a, b)| a - b).collect();
    sample_variance(&d)
}

/// Unbiased sample variance; the error is the standard error of the mean
/// of squared deviations.
pub fn sample_variance(x: &[f64]) -> Result<VarianceEstimate> {
    let n = x.len();
    if n < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_SAMPLES} samples, got {n}"
        )));
    }
    let mean = x.iter().sum::<f64>() / n as f64;
    let sq: Vec<f64> = x.iter().map(|v| (v - mean) * (v - mean)).collect();
    let m2 = sq.iter().sum::<f64>() / n as f64;
    let var_sq = sq.iter().map(|s| (s - m2) * (s - m2)).sum::<f64>() / (n - 1) as f64;
    Ok(VarianceEstimate {
        value: m2 * n as f64 / (n - 1) as f64,
        stderr: (var_sq / n as f64).sqrt(),
        samples: n,
    })
}

pub fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Pearson correlation.
pub fn correlation(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() || a.len() < 2 {
        return Err(Error::InvalidArgument("correlation needs paired samples".into()));
    }
    let (ma, mb) = (mean(a), mean(b));
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma) * (x - ma);
        sbb += (y - mb) * (y - mb);
    }
    Ok(sab / (saa * sbb).sqrt())
}
