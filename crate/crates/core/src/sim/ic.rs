//! Initial conditions restricted to a finite window of sites.

use super::seed::splitmix64;
use super::system::ParticleSystem;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Closed interval of sites `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!("empty window [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn width(&self) -> u64 {
        (self.hi - self.lo) as u64 + 1
    }
}

/// Sites of padding needed so that the missing particles beyond a window
/// edge cannot influence the interior by time `t`.
pub fn light_cone_padding(t: f64) -> i64 {
    (3.0 * t + 10.0 * t.sqrt()).ceil() as i64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialCondition {
    /// `x_k(0) = -k` for `k >= 1`.
    Step,
    /// `x_k(0) = -2k` for all integer `k`.
    Alternating,
    /// `x_k(0) = -d k` for all integer `k`.
    PeriodicD { d: i64 },
    /// Independent occupations with density `rho`. Label 1 goes to the
    /// rightmost particle at or left of `reference`.
    Bernoulli {
        rho: f64,
        seed: u64,
        #[serde(default = "default_reference")]
        reference: i64,
    },
}

fn default_reference() -> i64 {
    -1
}

impl InitialCondition {
    pub fn validate(&self) -> Result<()> {
        match *self {
            InitialCondition::PeriodicD { d } if d < 2 => Err(Error::InvalidArgument(format!(
                "period d must be at least 2, got {d}"
            ))),
            InitialCondition::Bernoulli { rho, .. } if !(0.0..=1.0).contains(&rho) => Err(
                Error::InvalidArgument(format!("density {rho} outside [0, 1]")),
            ),
            _ => Ok(()),
        }
    }

    /// Initial site of `label` for the deterministic conditions.
    pub fn initial_position(&self, label: i64) -> Option<i64> {
        match *self {
            InitialCondition::Step if label >= 1 => Some(-label),
            InitialCondition::Step => None,
            InitialCondition::Alternating => Some(-2 * label),
            InitialCondition::PeriodicD { d } => Some(-d * label),
            InitialCondition::Bernoulli { .. } => None,
        }
    }

    /// Smallest window holding labels `lo_label..=hi_label` at time 0 plus
    /// the light-cone padding for time `t` to their right.
    ///
    /// Particles never feel anything to their left, so no left padding is
    /// needed.
    pub fn window_for_labels(&self, lo_label: i64, hi_label: i64, t: f64) -> Result<Window> {
        self.validate()?;
        let (Some(left), Some(right)) = (
            self.initial_position(hi_label),
            self.initial_position(lo_label),
        ) else {
            return Err(Error::InvalidArgument(format!(
                "labels {lo_label}..={hi_label} have no deterministic position"
            )));
        };
        Window::new(left, right + light_cone_padding(t))
    }
}

/// Particles of `ic` inside `window`, labelled right to left.
pub fn init_configuration(ic: &InitialCondition, window: Window) -> Result<ParticleSystem> {
    ic.validate()?;
    Window::new(window.lo, window.hi)?;
    let (first_label, positions) = match *ic {
        InitialCondition::Step => {
            let hi = window.hi.min(-1);
            if hi < window.lo {
                (1, Vec::new())
            } else {
                (-hi, (window.lo..=hi).rev().collect())
            }
        }
        InitialCondition::Alternating => periodic(2, window),
        InitialCondition::PeriodicD { d } => periodic(d, window),
        InitialCondition::Bernoulli {
            rho,
            seed,
            reference,
        } => {
            let occupied: Vec<i64> = (window.lo..=window.hi)
                .rev()
                .filter(|&x| bernoulli_site(seed, x, rho))
                .collect();
            // number of particles strictly right of the reference site
            let right = occupied.iter().take_while(|&&x| x > reference).count() as i64;
            (1 - right, occupied)
        }
    };
    ParticleSystem::with_ic(first_label, positions, ic.clone())
}

fn periodic(d: i64, window: Window) -> (i64, Vec<i64>) {
    let hi = window.hi.div_euclid(d) * d;
    let positions: Vec<i64> = (window.lo..=hi).rev().step_by(d as usize).collect();
    let first = if positions.is_empty() { 0 } else { -hi / d };
    (first, positions)
}

/// Occupation of site `x`, a function of `(seed, x)` only, so nested
/// windows agree on their overlap.
fn bernoulli_site(seed: u64, x: i64, rho: f64) -> bool {
    let h = splitmix64(seed ^ splitmix64(x as u64));
    ((h >> 11) as f64) * (1.0 / (1u64 << 53) as f64) < rho
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sites(ps: &ParticleSystem) -> Vec<i64> {
        let mut v = ps.positions().to_vec();
        v.sort();
        v
    }

    #[test]
    fn step_window() {
        let ps = init_configuration(&InitialCondition::Step, Window::new(-5, 5).unwrap()).unwrap();
        assert_eq!(sites(&ps), vec![-5, -4, -3, -2, -1]);
        assert_eq!(ps.position(1).unwrap(), -1);
        assert_eq!(ps.position(5).unwrap(), -5);
    }

    #[test]
    fn alternating_window() {
        let ps =
            init_configuration(&InitialCondition::Alternating, Window::new(-6, 6).unwrap()).unwrap();
        assert_eq!(sites(&ps), vec![-6, -4, -2, 0, 2, 4, 6]);
        for k in -3..=3 {
            assert_eq!(ps.position(k).unwrap(), -2 * k);
        }
    }

    #[test]
    fn periodic_window_with_odd_edges() {
        let ic = InitialCondition::PeriodicD { d: 3 };
        let ps = init_configuration(&ic, Window::new(-7, 8).unwrap()).unwrap();
        assert_eq!(sites(&ps), vec![-6, -3, 0, 3, 6]);
        assert_eq!(ps.position(2).unwrap(), -6);
        assert_eq!(ps.position(-2).unwrap(), 6);
    }

    #[test]
    fn empty_bernoulli() {
        let ic = InitialCondition::Bernoulli {
            rho: 0.0,
            seed: 3,
            reference: -1,
        };
        let ps = init_configuration(&ic, Window::new(-50, 50).unwrap()).unwrap();
        assert!(ps.is_empty());
    }

    #[test]
    fn bernoulli_labels_follow_reference() {
        let ic = InitialCondition::Bernoulli {
            rho: 0.5,
            seed: 11,
            reference: 4,
        };
        let ps = init_configuration(&ic, Window::new(-40, 40).unwrap()).unwrap();
        let x1 = ps.position(1).unwrap();
        assert!(x1 <= 4);
        assert!(ps.position(0).map_or(true, |x0| x0 > 4));
        let full = init_configuration(&ic, Window::new(-80, 80).unwrap()).unwrap();
        assert_eq!(full.position(1).unwrap(), x1);
    }

    #[test]
    fn bernoulli_density() {
        let ic = InitialCondition::Bernoulli {
            rho: 0.3,
            seed: 5,
            reference: 0,
        };
        let ps = init_configuration(&ic, Window::new(0, 99_999).unwrap()).unwrap();
        let frac = ps.len() as f64 / 100_000.0;
        assert!((frac - 0.3).abs() < 0.006, "{frac}");
    }

    #[test]
    fn invalid_inputs() {
        assert!(Window::new(1, 0).is_err());
        let bad = InitialCondition::PeriodicD { d: 1 };
        assert!(init_configuration(&bad, Window::new(0, 3).unwrap()).is_err());
        let bad = InitialCondition::Bernoulli {
            rho: 1.5,
            seed: 0,
            reference: 0,
        };
        assert!(init_configuration(&bad, Window::new(0, 3).unwrap()).is_err());
    }

    #[test]
    fn padded_window_covers_labels() {
        let w = InitialCondition::Alternating
            .window_for_labels(-3, 10, 4.0)
            .unwrap();
        assert_eq!(w.lo, -20);
        assert_eq!(w.hi, 6 + 32);
    }
}
