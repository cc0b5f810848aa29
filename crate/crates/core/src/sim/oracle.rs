//! Exact transient law of a few particles by uniformization.
//!
//! With `n` particles every configuration has total jump rate at most `n`,
//! so the chain is a rate-`n` Poisson clock whose rings each pick a
//! particle uniformly and move it if it can. Conditioning on `j` rings,
//! the state is the `j`-step distribution of that discrete chain. The
//! Poisson sum is cut at the first `J` with `P(Poisson(n t) > J) < ε`; the
//! dropped mass bounds the total-variation error of every marginal.

use super::ic::InitialCondition;
use crate::error::{Error, Result};
use std::collections::BTreeMap;

pub const MAX_ORACLE_PARTICLES: usize = 3;
pub const MAX_ORACLE_TIME: f64 = 2.0;

#[derive(Debug, Clone, PartialEq)]
pub struct TransientLaw {
    /// Labels `1..=n`.
    pub labels: Vec<i64>,
    /// Joint law of the positions, labels in order.
    pub joint: BTreeMap<Vec<i64>, f64>,
    /// `marginals[i]`: law of the position of `labels[i]`.
    pub marginals: Vec<BTreeMap<i64, f64>>,
    /// Number of Poisson rings kept.
    pub truncation: usize,
    /// Dropped Poisson mass; bounds the TV error.
    pub error_bound: f64,
}

/// Smallest `J` with `P(Poisson(mean) > J) < eps`, with that tail.
pub fn poisson_truncation(mean: f64, eps: f64) -> Result<(usize, f64)> {
    if !(mean >= 0.0) || !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "bad Poisson truncation request: mean {mean}, eps {eps}"
        )));
    }
    let pmf = poisson_pmf(mean, 400);
    for j in 0..pmf.len() {
        // tail summed from the small end to avoid cancellation
        let tail: f64 = pmf[j + 1..].iter().rev().sum();
        if tail < eps {
            return Ok((j, tail));
        }
    }
    Err(Error::CostGuard(format!("Poisson({mean}) tail too heavy")))
}

fn poisson_pmf(mean: f64, len: usize) -> Vec<f64> {
    let mut p = Vec::with_capacity(len);
    let mut v = (-mean).exp();
    for j in 0..len {
        p.push(v);
        v *= mean / (j + 1) as f64;
    }
    p
}

pub fn exact_transient_oracle(
    ic: &InitialCondition,
    n_particles: usize,
    t: f64,
    epsilon: f64,
) -> Result<TransientLaw> {
    if n_particles == 0 || n_particles > MAX_ORACLE_PARTICLES {
        return Err(Error::CostGuard(format!(
            "oracle supports 1..={MAX_ORACLE_PARTICLES} particles, got {n_particles}"
        )));
    }
    if !(0.0..=MAX_ORACLE_TIME).contains(&t) {
        return Err(Error::CostGuard(format!(
            "oracle supports t in [0, {MAX_ORACLE_TIME}], got {t}"
        )));
    }
    ic.validate()?;
    let labels: Vec<i64> = (1..=n_particles as i64).collect();
    let start: Vec<i64> = labels
        .iter()
        .map(|&k| {
            ic.initial_position(k).ok_or_else(|| {
                Error::InvalidArgument("oracle needs a deterministic initial condition".into())
            })
        })
        .collect::<Result<_>>()?;
    oracle_from(&start, t, epsilon, labels)
}

/// Same as [`exact_transient_oracle`] from explicit positions (label 1
/// first, strictly decreasing).
pub fn oracle_from(start: &[i64], t: f64, epsilon: f64, labels: Vec<i64>) -> Result<TransientLaw> {
    let n = start.len();
    if start.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument("positions must be strictly decreasing".into()));
    }
    let (truncation, error_bound) = poisson_truncation(n as f64 * t, epsilon)?;
    let weights = poisson_pmf(n as f64 * t, truncation + 1);
    let pick = 1.0 / n as f64;

    // ordered maps: summation order, and so every bit of the result,
    // must not depend on hashing
    let mut joint: BTreeMap<Vec<i64>, f64> = BTreeMap::new();
    let mut dist: BTreeMap<Vec<i64>, f64> = BTreeMap::from([(start.to_vec(), 1.0)]);
    for (j, &w) in weights.iter().enumerate() {
        for (state, &p) in &dist {
            *joint.entry(state.clone()).or_default() += w * p;
        }
        if j == truncation {
            break;
        }
        let mut next: BTreeMap<Vec<i64>, f64> = BTreeMap::new();
        for (state, p) in dist {
            for i in 0..n {
                let mut s = state.clone();
                if i == 0 || s[i - 1] > s[i] + 1 {
                    s[i] += 1;
                }
                *next.entry(s).or_default() += p * pick;
            }
        }
        dist = next;
    }

    let mut marginals = vec![BTreeMap::new(); n];
    for (state, &p) in &joint {
        for (m, &x) in marginals.iter_mut().zip(state) {
            *m.entry(x).or_insert(0.0) += p;
        }
    }
    Ok(TransientLaw {
        labels,
        joint,
        marginals,
        truncation,
        error_bound,
    })
}
