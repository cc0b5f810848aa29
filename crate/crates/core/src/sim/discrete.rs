//! Discrete-time updates. Time is counted in steps.

use super::coins::{CoinSource, HashedCoins};
use super::system::ParticleSystem;
use super::trajectory::{JumpEvent, RunSpec, Trajectory};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateRule {
    /// Right to left; a particle may use a site freed earlier in the sweep.
    Sequential,
    /// Eligibility from the configuration at the start of the step.
    Parallel,
}

pub fn simulate_discrete_sequential(
    ps: ParticleSystem,
    steps: u64,
    p: f64,
    seed: u64,
    spec: &RunSpec,
) -> Result<Trajectory> {
    simulate_discrete_with(ps, steps, p, UpdateRule::Sequential, &mut HashedCoins::new(seed), seed, spec)
}

pub fn simulate_discrete_parallel(
    ps: ParticleSystem,
    steps: u64,
    p: f64,
    seed: u64,
    spec: &RunSpec,
) -> Result<Trajectory> {
    simulate_discrete_with(ps, steps, p, UpdateRule::Parallel, &mut HashedCoins::new(seed), seed, spec)
}

/// Discrete-time run drawing coins from `coins`; `seed` is only recorded.
pub fn simulate_discrete_with<C: CoinSource>(
    mut ps: ParticleSystem,
    steps: u64,
    p: f64,
    rule: UpdateRule,
    coins: &mut C,
    seed: u64,
    spec: &RunSpec,
) -> Result<Trajectory> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "jump probability {p} outside (0, 1)"
        )));
    }
    let t_end = steps as f64;
    let idx = spec.validate(&ps, t_end)?;
    if spec.sample_times.iter().any(|s| s.fract() != 0.0) {
        return Err(Error::InvalidArgument(
            "discrete sample times must be whole steps".into(),
        ));
    }
    let mut traj = Trajectory::start(seed, &ps, spec, t_end);
    let (mlo, mhi) = spec.monitored_sites.unwrap_or((1, 0));
    let mut counters = vec![0u64; spec.monitored_sites.map_or(0, |(lo, hi)| (hi - lo + 1) as usize)];
    let label0 = ps.first_label();
    let t0 = ps.time();
    let mut next_sample = 0;
    let n = ps.len();

    for step in 0..=steps {
        while next_sample < spec.sample_times.len() && spec.sample_times[next_sample] as u64 == step {
            traj.record(&ps, &idx, &counters);
            next_sample += 1;
        }
        if step == steps {
            break;
        }
        let pos = ps.positions_mut();
        // site of the right neighbour before this step
        let mut right_old = i64::MAX;
        for i in 0..n {
            let x = pos[i];
            let free = match rule {
                UpdateRule::Sequential => i == 0 || pos[i - 1] > x + 1,
                UpdateRule::Parallel => right_old > x + 1,
            };
            right_old = x;
            if free && coins.flip(label0 + i as i64, step, p) {
                pos[i] = x + 1;
                if x >= mlo && x <= mhi {
                    counters[(x - mlo) as usize] += 1;
                }
                if let Some(ev) = traj.events.as_mut() {
                    ev.push(JumpEvent {
                        time: (step + 1) as f64,
                        label: label0 + i as i64,
                        from: x,
                    });
                }
            }
        }
    }
    ps.set_time(t0 + t_end);
    Ok(traj)
}
