//! TASEP driven by the LPP weights: `ω(m, n)` is the time particle `n`
//! waits for its `m`-th jump, counted from the moment it is both done
//! with its previous jump and has an empty right neighbour.

use super::lpp::{lpp_passage_times, lpp_sample_weights, LppGeometry, LppGrid};
use crate::error::Result;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Ring {
    time: f64,
    particle: usize,
}

impl Eq for Ring {}

impl Ord for Ring {
    // earliest first; ties broken by label so runs are reproducible
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .time
            .total_cmp(&self.time)
            .then_with(|| other.particle.cmp(&self.particle))
    }
}

impl PartialOrd for Ring {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Initial positions of particles `1..=N` for a geometry.
pub fn initial_positions(geometry: LppGeometry, n: usize) -> Vec<i64> {
    (1..=n as i64)
        .map(|k| match geometry {
            LppGeometry::PointToPoint => -k,
            LppGeometry::PointToLine => -2 * k,
        })
        .collect()
}

/// Runs the coupled TASEP until every particle made `grid.m` jumps (or is
/// stuck behind one that did). Returns jump times in the grid layout;
/// `times[(n - 1) * M + (m - 1)]` is when particle `n` made jump `m`.
pub fn coupled_jump_times(grid: &LppGrid, initial: &[i64]) -> Vec<f64> {
    let (mm, nn) = (grid.m, grid.n);
    assert_eq!(initial.len(), nn);
    let mut pos = initial.to_vec();
    let mut jumps = vec![0usize; nn];
    // time the particle finished its last jump, or was last released
    let mut waiting = vec![false; nn];
    let mut times = vec![f64::NAN; mm * nn];
    let mut heap = BinaryHeap::new();
    let free = |pos: &[i64], i: usize| i == 0 || pos[i - 1] > pos[i] + 1;

    for i in 0..nn {
        if free(&pos, i) {
            heap.push(Ring {
                time: grid.weights[i * mm] + 0.0,
                particle: i,
            });
        } else {
            waiting[i] = true;
        }
    }
    while let Some(Ring { time, particle: i }) = heap.pop() {
        pos[i] += 1;
        jumps[i] += 1;
        times[i * mm + jumps[i] - 1] = time;
        if jumps[i] < mm {
            if free(&pos, i) {
                heap.push(Ring {
                    time: grid.weights[i * mm + jumps[i]] + time,
                    particle: i,
                });
            } else {
                waiting[i] = true;
            }
        }
        let j = i + 1;
        if j < nn && waiting[j] && free(&pos, j) {
            waiting[j] = false;
            heap.push(Ring {
                time: grid.weights[j * mm + jumps[j]] + time,
                particle: j,
            });
        }
    }
    times
}

/// Outcome of comparing the coupled TASEP with the LPP recursion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub seed: u64,
    pub m: usize,
    pub n: usize,
    pub geometry: LppGeometry,
    pub cells_checked: usize,
    /// First `(m, n)` in row-major order where the two disagree.
    pub first_mismatch: Option<(usize, usize)>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Step initial condition against point-to-point LPP.
pub fn tasep_lpp_equivalence(seed: u64, m: usize, n: usize) -> Result<EquivalenceReport> {
    tasep_lpp_equivalence_with(seed, m, n, LppGeometry::PointToPoint)
}

pub fn tasep_lpp_equivalence_with(
    seed: u64,
    m: usize,
    n: usize,
    geometry: LppGeometry,
) -> Result<EquivalenceReport> {
    let grid = lpp_passage_times(lpp_sample_weights(m, n, seed)?, geometry);
    let times = coupled_jump_times(&grid, &initial_positions(geometry, n));
    let g = grid.passage.as_ref().expect("filled above");
    let first_mismatch = (0..m * n)
        .find(|&k| g[k].to_bits() != times[k].to_bits())
        .map(|k| (k % m + 1, k / m + 1));
    Ok(EquivalenceReport {
        seed,
        m,
        n,
        geometry,
        cells_checked: m * n,
        first_mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_particle_first_jump() {
        let grid = lpp_sample_weights(5, 5, 2).unwrap();
        let t = coupled_jump_times(&grid, &initial_positions(LppGeometry::PointToPoint, 5));
        assert_eq!(t[0], grid.omega(1, 1).unwrap());
    }

    #[test]
    fn coupled_run_matches_recursion() {
        for geometry in [LppGeometry::PointToPoint, LppGeometry::PointToLine] {
            for seed in 0..10 {
                let r = tasep_lpp_equivalence_with(seed, 12, 9, geometry).unwrap();
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn perturbed_weights_are_caught() {
        let mut grid = lpp_sample_weights(6, 6, 4).unwrap();
        let times = coupled_jump_times(&grid, &initial_positions(LppGeometry::PointToPoint, 6));
        let k = grid.index(3, 2);
        grid.weights[k] *= 1.0 + 1e-12;
        let grid = lpp_passage_times(grid, LppGeometry::PointToPoint);
        assert_ne!(grid.passage.unwrap()[k], times[k]);
    }
}
