//! Directed last passage percolation with Exponential(1) weights.
//!
//! Cells are `(m, n)` with `1 <= m <= M`, `1 <= n <= N`; row `n` is
//! particle `n` and column `m` its `m`-th jump.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

/// Where paths start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LppGeometry {
    /// Up-right paths from `(1, 1)`; `G(m, n) = ω(m, n) + max(G(m-1, n),
    /// G(m, n-1))` with `G = 0` off the quadrant. Step initial condition.
    PointToPoint,
    /// Paths from the line `{(u, -u)}`, stored in the re-indexed cell
    /// `(i, n) = (m + n, n)`. Then `i` is the jump count of particle `n`
    /// under `x_n(0) = -2n`, and
    /// `G(i, n) = ω(i, n) + max(G(i-1, n), G(i-1, n-1))` with `G(0, n) = 0`
    /// and row `n = 0` absent (particle 1 is never blocked).
    PointToLine,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LppGrid {
    pub m: usize,
    pub n: usize,
    pub seed: u64,
    /// Row-major in `n`: cell `(m, n)` at `(n - 1) * M + (m - 1)`.
    pub weights: Vec<f64>,
    /// Same layout as `weights`, once filled.
    pub passage: Option<Vec<f64>>,
    pub geometry: Option<LppGeometry>,
}

impl LppGrid {
    #[inline]
    pub fn index(&self, m: usize, n: usize) -> usize {
        (n - 1) * self.m + (m - 1)
    }

    fn check(&self, m: usize, n: usize) -> Result<()> {
        if m == 0 || n == 0 || m > self.m || n > self.n {
            return Err(Error::InvalidArgument(format!(
                "cell ({m}, {n}) outside [1, {}] x [1, {}]",
                self.m, self.n
            )));
        }
        Ok(())
    }

    pub fn omega(&self, m: usize, n: usize) -> Result<f64> {
        self.check(m, n)?;
        Ok(self.weights[self.index(m, n)])
    }

    pub fn g(&self, m: usize, n: usize) -> Result<f64> {
        self.check(m, n)?;
        let g = self
            .passage
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("passage times not computed".into()))?;
        Ok(g[self.index(m, n)])
    }

    pub fn from_weights(m: usize, n: usize, seed: u64, weights: Vec<f64>) -> Result<Self> {
        if m == 0 || n == 0 || weights.len() != m * n {
            return Err(Error::InvalidArgument(format!(
                "{} weights do not fill a {m} x {n} grid",
                weights.len()
            )));
        }
        if weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
            return Err(Error::InvalidArgument("weights must be positive and finite".into()));
        }
        Ok(Self {
            m,
            n,
            seed,
            weights,
            passage: None,
            geometry: None,
        })
    }
}

/// `M x N` i.i.d. Exponential(1) weights from a ChaCha8 stream seeded with
/// `seed`, drawn in storage order.
pub fn lpp_sample_weights(m: usize, n: usize, seed: u64) -> Result<LppGrid> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!("empty grid {m} x {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = (0..m * n)
        .map(|_| loop {
            let w: f64 = rng.sample(Exp1);
            if w > 0.0 {
                break w;
            }
        })
        .collect();
    LppGrid::from_weights(m, n, seed, weights)
}

/// Fills the passage times, sweeping anti-diagonals `m + n = const`.
pub fn lpp_passage_times(mut grid: LppGrid, geometry: LppGeometry) -> LppGrid {
    let (mm, nn) = (grid.m, grid.n);
    let mut g = vec![0.0; mm * nn];
    for d in 2..=mm + nn {
        let n_lo = d.saturating_sub(mm).max(1);
        let n_hi = (d - 1).min(nn);
        for n in n_lo..=n_hi {
            let m = d - n;
            g[(n - 1) * mm + (m - 1)] = cell(&grid.weights, &g, mm, m, n, geometry);
        }
    }
    grid.passage = Some(g);
    grid.geometry = Some(geometry);
    grid
}

/// The same recursion in row-major order.
pub fn lpp_passage_times_row_major(mut grid: LppGrid, geometry: LppGeometry) -> LppGrid {
    let (mm, nn) = (grid.m, grid.n);
    let mut g = vec![0.0; mm * nn];
    for n in 1..=nn {
        for m in 1..=mm {
            g[(n - 1) * mm + (m - 1)] = cell(&grid.weights, &g, mm, m, n, geometry);
        }
    }
    grid.passage = Some(g);
    grid.geometry = Some(geometry);
    grid
}

#[inline]
fn cell(w: &[f64], g: &[f64], mm: usize, m: usize, n: usize, geometry: LppGeometry) -> f64 {
    let at = |m: usize, n: usize| g[(n - 1) * mm + (m - 1)];
    let omega = w[(n - 1) * mm + (m - 1)];
    let prev = match geometry {
        LppGeometry::PointToPoint => {
            let left = if m > 1 { at(m - 1, n) } else { 0.0 };
            let down = if n > 1 { at(m, n - 1) } else { 0.0 };
            left.max(down)
        }
        LppGeometry::PointToLine => {
            let left = if m > 1 { at(m - 1, n) } else { 0.0 };
            if n > 1 {
                let diag = if m > 1 { at(m - 1, n - 1) } else { 0.0 };
                left.max(diag)
            } else {
                left
            }
        }
    };
    omega + prev
}

/// Maximum path weight by enumerating every admissible path to `(m, n)`.
/// Sums are accumulated from the first cell, as in the recursion.
pub fn lpp_brute_force(grid: &LppGrid, m: usize, n: usize, geometry: LppGeometry) -> Result<f64> {
    grid.check(m, n)?;
    let mut best = f64::NEG_INFINITY;
    let mut path = Vec::with_capacity(m + n);
    enumerate(grid, m, n, geometry, &mut path, &mut best);
    Ok(best)
}

/// Walks back from `(m, n)`; `path` holds the cells visited so far, last
/// cell first.
fn enumerate(
    grid: &LppGrid,
    m: usize,
    n: usize,
    geometry: LppGeometry,
    path: &mut Vec<(usize, usize)>,
    best: &mut f64,
) {
    path.push((m, n));
    let preds: [(usize, usize); 2] = match geometry {
        LppGeometry::PointToPoint => [(m.wrapping_sub(1), n), (m, n.wrapping_sub(1))],
        LppGeometry::PointToLine => [(m.wrapping_sub(1), n), (m.wrapping_sub(1), n.wrapping_sub(1))],
    };
    let mut any = false;
    for (pm, pn) in preds {
        if pm >= 1 && pn >= 1 && pm <= grid.m && pn <= grid.n {
            any = true;
            enumerate(grid, pm, pn, geometry, path, best);
        }
    }
    if !any {
        let mut acc = 0.0;
        for &(a, b) in path.iter().rev() {
            acc = grid.weights[grid.index(a, b)] + acc;
        }
        if acc > *best {
            *best = acc;
        }
    }
    path.pop();
}
