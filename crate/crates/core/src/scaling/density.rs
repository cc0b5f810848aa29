//! Macroscopic density under the step initial condition.

use crate::error::{Error, Result};
use crate::sim::Trajectory;
use serde::{Deserialize, Serialize};

/// `1` for `ξ <= -1`, `(1 - ξ)/2` on `[-1, 1]`, `0` for `ξ >= 1`.
pub fn rost_density(xi: f64) -> f64 {
    if xi <= -1.0 {
        1.0
    } else if xi >= 1.0 {
        0.0
    } else {
        1.0 - (xi + 1.0) / 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityBin {
    /// Centre of the bin in `ξ = x / t`.
    pub xi: f64,
    /// First and last site of the bin.
    pub sites: (i64, i64),
    /// Occupation fraction averaged over sites and runs.
    pub density: f64,
    /// Mean of `rost_density(x / t)` over the bin's sites.
    pub reference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityProfile {
    pub t: f64,
    pub bins: Vec<DensityBin>,
}

impl DensityProfile {
    /// `∫ |ρ - u|` over the profile, each bin weighted by its width in `ξ`.
    pub fn l1_distance(&self) -> f64 {
        self.bins
            .iter()
            .map(|b| (b.density - b.reference).abs() * (b.sites.1 - b.sites.0 + 1) as f64 / self.t)
            .sum()
    }
}

/// Occupation profile at time `t` on sites `[ξ_lo t, ξ_hi t]`, in bins of
/// `bin_width` sites.
///
/// Each run must track a contiguous block of labels starting with its
/// rightmost particle, and the last tracked particle must sit left of the
/// profile, so every particle in range is seen.
pub fn empirical_density(
    runs: &[Trajectory],
    t: f64,
    bin_width: usize,
    xi_range: (f64, f64),
) -> Result<DensityProfile> {
    if runs.is_empty() || bin_width == 0 || !(t > 0.0) || !(xi_range.0 < xi_range.1) {
        return Err(Error::InvalidArgument(
            "density profile needs runs, a positive bin width and time, and a nonempty range".into(),
        ));
    }
    let lo = (xi_range.0 * t).ceil() as i64;
    let hi = (xi_range.1 * t).floor() as i64;
    let width = (hi - lo + 1) as usize;
    let mut counts = vec![0u64; width];
    for tr in runs {
        let i = tr
            .sample_index(t)
            .ok_or_else(|| Error::InvalidArgument(format!("no sample at time {t}")))?;
        if tr.tracked_labels.windows(2).any(|w| w[1] != w[0] + 1) {
            return Err(Error::InvalidArgument(
                "density needs a contiguous block of tracked labels".into(),
            ));
        }
        let row = &tr.samples[i];
        match row.last() {
            Some(&x) if x < lo => {}
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "tracked particles do not cover sites down to {lo}"
                )))
            }
        }
        for &x in row {
            if lo <= x && x <= hi {
                counts[(x - lo) as usize] += 1;
            }
        }
    }
    let n = runs.len() as f64;
    let bins = counts
        .chunks(bin_width)
        .enumerate()
        .map(|(b, c)| {
            let first = lo + (b * bin_width) as i64;
            let last = first + c.len() as i64 - 1;
            let density = c.iter().sum::<u64>() as f64 / (n * c.len() as f64);
            let reference =
                (first..=last).map(|x| rost_density(x as f64 / t)).sum::<f64>() / c.len() as f64;
            DensityBin {
                xi: 0.5 * (first + last) as f64 / t,
                sites: (first, last),
                density,
                reference,
            }
        })
        .collect();
    Ok(DensityProfile { t, bins })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_values() {
        assert_eq!(rost_density(-1.0), 1.0);
        assert_eq!(rost_density(1.0), 0.0);
        assert_eq!(rost_density(0.0), 0.5);
        assert_eq!(rost_density(-3.0), 1.0);
        assert_eq!(rost_density(0.5), 0.25);
    }

    #[test]
    fn profile_is_continuous_and_nonincreasing() {
        let mut prev = rost_density(-2.0);
        for i in 1..=4000 {
            let v = rost_density(-2.0 + i as f64 * 1e-3);
            assert!(v <= prev && (prev - v) <= 1e-3 / 2.0 + 1e-15);
            assert!((0.0..=1.0).contains(&v));
            prev = v;
        }
    }
}
