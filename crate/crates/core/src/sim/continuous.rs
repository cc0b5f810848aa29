//! Continuous-time dynamics by the Gillespie algorithm.

use super::system::ParticleSystem;
use super::trajectory::{JumpEvent, RunSpec, Trajectory};
use crate::error::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

const ABSENT: u32 = u32::MAX;

/// Particles whose right neighbour is empty, with O(1) insert and remove.
struct MobileSet {
    members: Vec<u32>,
    slot: Vec<u32>,
}

impl MobileSet {
    fn new(ps: &ParticleSystem) -> Self {
        let mut set = Self {
            members: Vec::new(),
            slot: vec![ABSENT; ps.len()],
        };
        for i in 0..ps.len() {
            if ps.mobile(i) {
                set.insert(i);
            }
        }
        set
    }

    #[inline]
    fn insert(&mut self, i: usize) {
        if self.slot[i] == ABSENT {
            self.slot[i] = self.members.len() as u32;
            self.members.push(i as u32);
        }
    }

    #[inline]
    fn remove(&mut self, i: usize) {
        let s = self.slot[i];
        if s != ABSENT {
            let last = self.members.pop().unwrap();
            if last as usize != i {
                self.members[s as usize] = last;
                self.slot[last as usize] = s;
            }
            self.slot[i] = ABSENT;
        }
    }
}

/// Runs the rate-1 TASEP from `ps` until `t_end`.
///
/// All randomness comes from a ChaCha8 stream seeded with `seed`.
pub fn simulate_continuous(
    mut ps: ParticleSystem,
    t_end: f64,
    seed: u64,
    spec: &RunSpec,
) -> Result<Trajectory> {
    let idx = spec.validate(&ps, t_end)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut traj = Trajectory::start(seed, &ps, spec, t_end);
    let (mlo, mhi) = spec.monitored_sites.unwrap_or((1, 0));
    let mut counters = vec![0u64; spec.monitored_sites.map_or(0, |(lo, hi)| (hi - lo + 1) as usize)];
    let mut mobile = MobileSet::new(&ps);
    let mut next_sample = 0;
    let mut t = ps.time();
    let t0 = t;
    let label0 = ps.first_label();

    loop {
        let rate = mobile.members.len();
        let dt = if rate == 0 {
            f64::INFINITY
        } else {
            let e: f64 = rng.sample(Exp1);
            e / rate as f64
        };
        let t_next = t + dt;
        while next_sample < spec.sample_times.len() && t0 + spec.sample_times[next_sample] < t_next
        {
            traj.record(&ps, &idx, &counters);
            next_sample += 1;
        }
        if t_next > t0 + t_end {
            break;
        }
        t = t_next;
        let i = mobile.members[rng.random_range(0..rate)] as usize;
        let from = {
            let pos = ps.positions_mut();
            pos[i] += 1;
            pos[i] - 1
        };
        if from >= mlo && from <= mhi {
            counters[(from - mlo) as usize] += 1;
        }
        if let Some(ev) = traj.events.as_mut() {
            ev.push(JumpEvent {
                time: t - t0,
                label: label0 + i as i64,
                from,
            });
        }
        if !ps.mobile(i) {
            mobile.remove(i);
        }
        if i + 1 < ps.len() {
            mobile.insert(i + 1);
        }
    }
    ps.set_time(t0 + t_end);
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::ic::{init_configuration, InitialCondition, Window};

    #[test]
    fn lone_particle_is_a_poisson_clock() {
        let runs = 100_000;
        let mut total = 0i64;
        for r in 0..runs {
            let ps = ParticleSystem::new(1, vec![0]).unwrap();
            let tr = simulate_continuous(ps, 5.0, r, &RunSpec::new(vec![5.0], vec![1])).unwrap();
            total += tr.samples[0][0];
        }
        let mean = total as f64 / runs as f64;
        assert!((mean - 5.0).abs() < 0.05, "{mean}");
    }

    #[test]
    fn blocked_particle_waits() {
        let ps = ParticleSystem::new(1, vec![-1, -2]).unwrap();
        let spec = RunSpec::new((0..=50).map(|i| i as f64 * 0.1).collect(), vec![1, 2]).with_event_log();
        let tr = simulate_continuous(ps, 5.0, 7, &spec).unwrap();
        for row in &tr.samples {
            assert!(row[1] < row[0]);
        }
        let first = tr.events.as_ref().unwrap()[0];
        assert_eq!(first.label, 1);
    }

    #[test]
    fn same_seed_same_trajectory() {
        let ic = InitialCondition::Step;
        let w = Window::new(-60, 40).unwrap();
        let spec = RunSpec::new(vec![1.0, 5.0, 10.0], (1..=30).collect()).monitor(-5, 5);
        let a = simulate_continuous(init_configuration(&ic, w).unwrap(), 10.0, 3, &spec).unwrap();
        let b = simulate_continuous(init_configuration(&ic, w).unwrap(), 10.0, 3, &spec).unwrap();
        assert_eq!(a, b);
        let c = simulate_continuous(init_configuration(&ic, w).unwrap(), 10.0, 4, &spec).unwrap();
        assert_ne!(a.samples, c.samples);
    }

    #[test]
    fn sample_at_zero_is_initial_state() {
        let ps = ParticleSystem::new(1, vec![-1, -2, -3]).unwrap();
        let tr = simulate_continuous(ps, 1.0, 1, &RunSpec::new(vec![0.0], vec![1, 2, 3])).unwrap();
        assert_eq!(tr.samples[0], vec![-1, -2, -3]);
    }

    #[test]
    fn unknown_tracked_label_is_an_error() {
        let ps = ParticleSystem::new(1, vec![-1]).unwrap();
        assert!(simulate_continuous(ps, 1.0, 1, &RunSpec::new(vec![], vec![2])).is_err());
    }
}
