//! Height function of a configuration: `h(x+1) - h(x) = 1 - 2η_x`.

use crate::error::{Error, Result};
use crate::sim::{ParticleSystem, Window};
use serde::{Deserialize, Serialize};

/// Heights on sites `lo..=hi + 1` of a window `[lo, hi]`, fixed by the
/// value at the origin.
///
/// A jump across the bond `(-1, 0)` raises `h(0)` by 2, so `anchor` equals
/// twice the current through that bond when heights are carried along a
/// run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightFunction {
    lo: i64,
    anchor: i64,
    /// `increments[x - lo] = h(x + 1) - h(x)`.
    increments: Vec<i8>,
}

impl HeightFunction {
    pub fn from_increments(lo: i64, increments: Vec<i8>, anchor: i64) -> Result<Self> {
        if increments.iter().any(|&d| d != 1 && d != -1) {
            return Err(Error::InvalidArgument("height increments must be ±1".into()));
        }
        let hi = lo + increments.len() as i64 - 1;
        if lo > 0 || hi + 1 < 0 {
            return Err(Error::InvalidArgument(format!(
                "window [{lo}, {hi}] does not reach the origin"
            )));
        }
        Ok(Self {
            lo,
            anchor,
            increments,
        })
    }

    pub fn with_anchor(mut self, anchor: i64) -> Self {
        self.anchor = anchor;
        self
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Last site with an increment.
    pub fn hi(&self) -> i64 {
        self.lo + self.increments.len() as i64 - 1
    }

    pub fn increments(&self) -> &[i8] {
        &self.increments
    }

    pub fn increment(&self, x: i64) -> Result<i8> {
        if x < self.lo || x > self.hi() {
            return Err(Error::OutOfRange {
                what: "height increment site",
                x: x as f64,
                lo: self.lo as f64,
                hi: self.hi() as f64,
            });
        }
        Ok(self.increments[(x - self.lo) as usize])
    }

    /// `h(x)` for `x` in `lo..=hi + 1`.
    pub fn height(&self, x: i64) -> Result<i64> {
        if x < self.lo || x > self.hi() + 1 {
            return Err(Error::OutOfRange {
                what: "height site",
                x: x as f64,
                lo: self.lo as f64,
                hi: (self.hi() + 1) as f64,
            });
        }
        let sum = |a: i64, b: i64| -> i64 {
            self.increments[(a - self.lo) as usize..(b - self.lo) as usize]
                .iter()
                .map(|&d| i64::from(d))
                .sum()
        };
        Ok(if x >= 0 {
            self.anchor + sum(0, x)
        } else {
            self.anchor - sum(x, 0)
        })
    }

    /// `(x, h(x))` for every site.
    pub fn heights(&self) -> Vec<(i64, i64)> {
        (self.lo..=self.hi() + 1)
            .map(|x| (x, self.height(x).unwrap()))
            .collect()
    }
}

/// Height function of `ps` on `window`, with `h(0) = 0`.
pub fn height_from_config(ps: &ParticleSystem, window: Window) -> Result<HeightFunction> {
    let eta = ps.occupation(window.lo, window.hi);
    let inc = eta.iter().map(|&o| if o { -1 } else { 1 }).collect();
    HeightFunction::from_increments(window.lo, inc, 0)
}

/// Turns the valley at `x + 1` into a peak: the jump `x -> x + 1`.
pub fn height_apply_jump(h: &HeightFunction, x: i64) -> Result<HeightFunction> {
    let (Ok(a), Ok(b)) = (h.increment(x), h.increment(x + 1)) else {
        return Err(Error::IllegalJump(x));
    };
    if a != -1 || b != 1 {
        return Err(Error::IllegalJump(x));
    }
    let mut out = h.clone();
    let i = (x - h.lo) as usize;
    out.increments[i] = 1;
    out.increments[i + 1] = -1;
    if x + 1 == 0 {
        out.anchor += 2;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{init_configuration, InitialCondition};

    fn window(lo: i64, hi: i64) -> Window {
        Window::new(lo, hi).unwrap()
    }

    #[test]
    fn step_is_absolute_value() {
        let w = window(-5, 5);
        let ps = init_configuration(&InitialCondition::Step, w).unwrap();
        let h = height_from_config(&ps, w).unwrap();
        for (x, hx) in h.heights() {
            assert_eq!(hx, x.abs());
        }
    }

    #[test]
    fn alternating_is_a_sawtooth() {
        let w = window(-6, 6);
        let ps = init_configuration(&InitialCondition::Alternating, w).unwrap();
        let h = height_from_config(&ps, w).unwrap();
        for (x, hx) in h.heights() {
            assert_eq!(hx, -(x.rem_euclid(2)), "x={x}");
        }
    }

    #[test]
    fn empty_lattice_is_the_diagonal() {
        let w = window(-4, 4);
        let ps = ParticleSystem::new(1, vec![]).unwrap();
        let h = height_from_config(&ps, w).unwrap();
        for (x, hx) in h.heights() {
            assert_eq!(hx, x);
        }
    }

    #[test]
    fn step_jump_at_origin() {
        let w = window(-5, 5);
        let ps = init_configuration(&InitialCondition::Step, w).unwrap();
        let h = height_apply_jump(&height_from_config(&ps, w).unwrap(), -1).unwrap();
        for (x, hx) in h.heights() {
            assert_eq!(hx, if x == 0 { 2 } else { x.abs() });
        }
    }

    #[test]
    fn jump_at_a_peak_is_rejected() {
        let w = window(-5, 5);
        let ps = init_configuration(&InitialCondition::Step, w).unwrap();
        let h = height_from_config(&ps, w).unwrap();
        assert!(matches!(height_apply_jump(&h, 0), Err(Error::IllegalJump(0))));
        assert!(matches!(height_apply_jump(&h, 5), Err(Error::IllegalJump(5))));
    }

    #[test]
    fn exhaustive_jump_consistency() {
        for width in 2..=12i64 {
            let lo = -(width / 2);
            let w = window(lo, lo + width - 1);
            for mask in 0u32..(1 << width) {
                let sites: Vec<i64> = (0..width)
                    .rev()
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| lo + i)
                    .collect();
                let ps = ParticleSystem::new(1, sites.clone()).unwrap();
                let h = height_from_config(&ps, w).unwrap();
                for (idx, &x) in sites.iter().enumerate() {
                    if x + 1 > w.hi || ps.is_occupied(x + 1) {
                        assert!(height_apply_jump(&h, x).is_err());
                        continue;
                    }
                    let mut post = ps.clone();
                    post.jump(idx as i64 + 1).unwrap();
                    let expect = height_from_config(&post, w)
                        .unwrap()
                        .with_anchor(if x == -1 { 2 } else { 0 });
                    assert_eq!(height_apply_jump(&h, x).unwrap(), expect);
                }
            }
        }
    }
}
