//! The region `B_t = {G <= t}` and its boundary.

use super::lpp::{LppGeometry, LppGrid};
use crate::error::{Error, Result};
use std::io::Write;

/// Boundary of `B_t` as one point per row: `(k_n(t) + offset_n, n)` where
/// `k_n(t)` counts the cells of row `n` inside `B_t`, i.e. the jumps of
/// particle `n` by time `t`.
///
/// Point-to-point rows have `offset_n = 0`, so the point is
/// `(x_n(t) + n, n)` for the step initial condition. Point-to-line rows
/// are mapped back from `(i, n)` to `(m, n) = (i - n, n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BorderSet {
    pub t: f64,
    pub points: Vec<(i64, i64)>,
    /// `k_n(t)` per row.
    pub counts: Vec<usize>,
}

impl BorderSet {
    /// Number of cells in `B_t`.
    pub fn area(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "m,n")?;
        for (m, n) in &self.points {
            writeln!(out, "{m},{n}")?;
        }
        Ok(())
    }
}

pub fn border_set(grid: &LppGrid, t: f64) -> Result<BorderSet> {
    let g = grid
        .passage
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("passage times not computed".into()))?;
    let geometry = grid.geometry.unwrap_or(LppGeometry::PointToPoint);
    let mut counts = Vec::with_capacity(grid.n);
    let mut points = Vec::with_capacity(grid.n);
    for n in 1..=grid.n {
        let row = &g[(n - 1) * grid.m..n * grid.m];
        // rows are increasing in m
        let k = row.partition_point(|&v| v <= t);
        counts.push(k);
        let m = match geometry {
            LppGeometry::PointToPoint => k as i64,
            LppGeometry::PointToLine => k as i64 - n as i64,
        };
        points.push((m, n as i64));
    }
    Ok(BorderSet { t, points, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::lpp::{lpp_passage_times, lpp_sample_weights};

    fn grid() -> LppGrid {
        lpp_passage_times(lpp_sample_weights(15, 12, 8).unwrap(), LppGeometry::PointToPoint)
    }

    #[test]
    fn empty_at_time_zero() {
        let b = border_set(&grid(), 0.0).unwrap();
        assert_eq!(b.area(), 0);
        for (k, &(m, n)) in b.points.iter().enumerate() {
            assert_eq!((m, n), (0, k as i64 + 1));
        }
    }

    #[test]
    fn everything_at_infinity() {
        let b = border_set(&grid(), f64::INFINITY).unwrap();
        assert_eq!(b.area(), 15 * 12);
    }

    #[test]
    fn monotone_in_time_and_down_left_closed() {
        let g = grid();
        let mut prev = border_set(&g, 0.0).unwrap();
        for step in 1..200 {
            let b = border_set(&g, step as f64 * 0.2).unwrap();
            assert!(b.counts.iter().zip(&prev.counts).all(|(a, p)| a >= p));
            // row n+1 never extends beyond row n
            assert!(b.counts.windows(2).all(|w| w[1] <= w[0]));
            prev = b;
        }
    }
}
