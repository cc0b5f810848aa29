use super::ic::InitialCondition;
use super::system::ParticleSystem;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::io::Write;

/// What a run records.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunSpec {
    /// Sorted, within `[0, t_end]`. Step counts for discrete dynamics.
    pub sample_times: Vec<f64>,
    pub tracked_labels: Vec<i64>,
    /// Sites `lo..=hi` whose integrated currents are recorded.
    pub monitored_sites: Option<(i64, i64)>,
    /// Keep every jump.
    pub event_log: bool,
}

impl RunSpec {
    pub fn new(sample_times: Vec<f64>, tracked_labels: Vec<i64>) -> Self {
        Self {
            sample_times,
            tracked_labels,
            ..Self::default()
        }
    }

    pub fn monitor(mut self, lo: i64, hi: i64) -> Self {
        self.monitored_sites = Some((lo, hi));
        self
    }

    pub fn with_event_log(mut self) -> Self {
        self.event_log = true;
        self
    }

    pub(crate) fn validate(&self, ps: &ParticleSystem, t_end: f64) -> Result<Vec<usize>> {
        if !(t_end >= 0.0) || !t_end.is_finite() {
            return Err(Error::InvalidArgument(format!("invalid end time {t_end}")));
        }
        if self.sample_times.windows(2).any(|w| !(w[0] <= w[1])) {
            return Err(Error::InvalidArgument("sample times must be sorted".into()));
        }
        if self
            .sample_times
            .iter()
            .any(|&s| !(0.0..=t_end).contains(&s))
        {
            return Err(Error::InvalidArgument(format!(
                "sample times must lie in [0, {t_end}]"
            )));
        }
        if let Some((lo, hi)) = self.monitored_sites {
            if lo > hi {
                return Err(Error::InvalidArgument(format!(
                    "empty monitored range [{lo}, {hi}]"
                )));
            }
        }
        self.tracked_labels
            .iter()
            .map(|&k| ps.index_of(k))
            .collect()
    }
}

/// A single jump `from -> from + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JumpEvent {
    pub time: f64,
    pub label: i64,
    pub from: i64,
}

/// Record of one seeded run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub seed: u64,
    pub ic: Option<InitialCondition>,
    pub sample_times: Vec<f64>,
    pub tracked_labels: Vec<i64>,
    /// `samples[i][j]`: position of `tracked_labels[j]` at `sample_times[i]`.
    pub samples: Vec<Vec<i64>>,
    pub monitored_sites: Option<(i64, i64)>,
    /// `currents[i][x - lo]`: `J(x, sample_times[i])`.
    pub currents: Vec<Vec<u64>>,
    pub events: Option<Vec<JumpEvent>>,
    pub t_end: f64,
}

impl Trajectory {
    pub(crate) fn start(seed: u64, ps: &ParticleSystem, spec: &RunSpec, t_end: f64) -> Self {
        Self {
            seed,
            ic: ps.ic().cloned(),
            sample_times: spec.sample_times.clone(),
            tracked_labels: spec.tracked_labels.clone(),
            samples: Vec::with_capacity(spec.sample_times.len()),
            monitored_sites: spec.monitored_sites,
            currents: Vec::with_capacity(spec.sample_times.len()),
            events: spec.event_log.then(Vec::new),
            t_end,
        }
    }

    pub(crate) fn record(&mut self, ps: &ParticleSystem, idx: &[usize], counters: &[u64]) {
        let pos = ps.positions();
        self.samples.push(idx.iter().map(|&i| pos[i]).collect());
        if self.monitored_sites.is_some() {
            self.currents.push(counters.to_vec());
        }
    }

    /// Position of `label` at the `i`-th sample time.
    pub fn position(&self, i: usize, label: i64) -> Result<i64> {
        let j = self
            .tracked_labels
            .iter()
            .position(|&k| k == label)
            .ok_or(Error::UntrackedLabel(label))?;
        self.samples
            .get(i)
            .map(|row| row[j])
            .ok_or_else(|| Error::InvalidArgument(format!("no sample with index {i}")))
    }

    /// Index of the sample taken exactly at time `t`.
    pub fn sample_index(&self, t: f64) -> Option<usize> {
        self.sample_times.iter().position(|&s| s == t)
    }

    /// Writes `run,t,k,x_k` rows (no header).
    pub fn write_csv_rows<W: Write>(&self, run: u64, out: &mut W) -> std::io::Result<()> {
        for (t, row) in self.sample_times.iter().zip(&self.samples) {
            for (k, x) in self.tracked_labels.iter().zip(row) {
                writeln!(out, "{run},{t},{k},{x}")?;
            }
        }
        Ok(())
    }
}

/// `J(x, t)`, the number of jumps from `x` to `x + 1` during `[0, t]`.
///
/// `t` must be a sample time unless the run kept its event log.
pub fn integrated_current(traj: &Trajectory, x: i64, t: f64) -> Result<u64> {
    if !(0.0..=traj.t_end).contains(&t) {
        return Err(Error::InvalidArgument(format!(
            "time {t} outside [0, {}]",
            traj.t_end
        )));
    }
    if let Some(events) = &traj.events {
        return Ok(events
            .iter()
            .filter(|e| e.from == x && e.time <= t)
            .count() as u64);
    }
    let (lo, _) = traj
        .monitored_sites
        .filter(|&(lo, hi)| lo <= x && x <= hi)
        .ok_or(Error::UnmonitoredSite(x))?;
    if t == 0.0 {
        return Ok(0);
    }
    let i = traj.sample_index(t).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "time {t} is not a sample time and no event log was kept"
        ))
    })?;
    Ok(traj.currents[i][(x - lo) as usize])
}

/// Checks `J(x,t) >= s  <=>  x_s(t) >= x + 1` for every sample time, every
/// monitored site and every `s` with a tracked particle, where label `1`
/// is the rightmost particle of `initial` at or left of `x`.
///
/// Returns the number of `(t, x, s)` triples checked.
pub fn check_current_duality(initial: &ParticleSystem, traj: &Trajectory) -> Result<usize> {
    let (lo, hi) = traj
        .monitored_sites
        .ok_or_else(|| Error::InvalidArgument("no monitored sites".into()))?;
    let mut checked = 0;
    for (i, &t) in traj.sample_times.iter().enumerate() {
        for x in lo..=hi {
            let j = integrated_current(traj, x, t)?;
            let Some(base) = initial.first_label_at_or_left_of(x) else {
                continue;
            };
            for s in 1..=initial.last_label() - base + 1 {
                let label = base + s - 1;
                let Ok(pos) = traj.position(i, label) else {
                    continue;
                };
                let lhs = j >= s as u64;
                let rhs = pos > x;
                if lhs != rhs {
                    return Err(Error::Numerical(format!(
                        "current duality fails at t={t}, x={x}, s={s}: J={j}, x_s={pos}"
                    )));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}
