//! Independent replicas and their serialization.

use super::ic::InitialCondition;
use super::seed::replica_seed;
use super::trajectory::Trajectory;
use crate::error::Result;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::Write;

/// Runs `f(run, seed)` for `run in 0..runs` with seeds derived from
/// `master`. Output is in run order whatever the scheduling.
pub fn run_replicas<T, F>(runs: u64, master: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, u64) -> Result<T> + Sync,
{
    (0..runs)
        .into_par_iter()
        .map(|r| f(r, replica_seed(master, r)))
        .collect()
}

/// Trajectories of one experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryBatch {
    pub master_seed: u64,
    pub ic: Option<InitialCondition>,
    pub version: String,
    pub runs: Vec<Trajectory>,
}

/// Metadata written next to a batch CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchMetadata {
    pub master_seed: u64,
    pub ic: Option<InitialCondition>,
    pub version: String,
    pub runs: usize,
    pub run_seeds: Vec<u64>,
}

impl TrajectoryBatch {
    pub fn new(master_seed: u64, ic: Option<InitialCondition>, runs: Vec<Trajectory>) -> Self {
        Self {
            master_seed,
            ic,
            version: crate::VERSION.to_string(),
            runs,
        }
    }

    /// `run,t,k,x_k` with a header row.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "run,t,k,x_k")?;
        for (r, tr) in self.runs.iter().enumerate() {
            tr.write_csv_rows(r as u64, out)?;
        }
        Ok(())
    }

    pub fn metadata(&self) -> BatchMetadata {
        BatchMetadata {
            master_seed: self.master_seed,
            ic: self.ic.clone(),
            version: self.version.clone(),
            runs: self.runs.len(),
            run_seeds: self.runs.iter().map(|t| t.seed).collect(),
        }
    }
}
