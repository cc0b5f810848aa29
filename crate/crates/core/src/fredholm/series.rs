//! Truncated Fredholm series on the Nyström nodes.
//!
//! With quadrature nodes in place of the integrals, the `n`-th series term
//! `(1/n!) Σ_{i_1..i_n} det(K(x_{i_k}, x_{i_l}))` is the sum of all `n x n`
//! principal minors of `M`, i.e. the elementary symmetric function `e_n` of
//! its eigenvalues. `e_n` is obtained from the power traces `p_k = tr(M^k)`
//! by Newton's identities, which never touches a factorization of
//! `I - M`.

use super::nystrom::{NystromParams, NystromSystem};
use super::query::DistributionQuery;
use crate::error::{Error, Result};

pub const MAX_SERIES_ORDER: usize = 10;

/// `Σ_{n=0}^{n_max} (-1)^n e_n(M)` on the same nodes as the Nyström
/// determinant (with `θ = 0`).
pub fn fredholm_series_oracle(
    q: &DistributionQuery,
    length: f64,
    nodes: usize,
    n_max: usize,
) -> Result<f64> {
    if n_max > MAX_SERIES_ORDER {
        return Err(Error::CostGuard(format!(
            "series order {n_max} exceeds {MAX_SERIES_ORDER}"
        )));
    }
    let system = NystromSystem::assemble(
        q,
        NystromParams {
            length,
            nodes,
            theta: 0.0,
        },
    )?;
    Ok(series_from_matrix(&system.matrix, system.dim, n_max))
}

/// Partial sums are returned for every order `0..=n_max`.
pub fn series_partial_sums(m: &[f64], dim: usize, n_max: usize) -> Vec<f64> {
    let traces = power_traces(m, dim, n_max);
    let mut e = vec![1.0];
    for n in 1..=n_max {
        let mut acc = 0.0;
        for k in 1..=n {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            acc += sign * e[n - k] * traces[k - 1];
        }
        e.push(acc / n as f64);
    }
    let mut sums = Vec::with_capacity(n_max + 1);
    let mut total = 0.0;
    for (n, en) in e.iter().enumerate() {
        total += if n % 2 == 0 { *en } else { -*en };
        sums.push(total);
    }
    sums
}

pub fn series_from_matrix(m: &[f64], dim: usize, n_max: usize) -> f64 {
    *series_partial_sums(m, dim, n_max).last().unwrap()
}

/// `tr(M^k)` for `k = 1..=k_max`.
fn power_traces(m: &[f64], dim: usize, k_max: usize) -> Vec<f64> {
    let mut traces = Vec::with_capacity(k_max);
    if k_max == 0 {
        return traces;
    }
    let trace = |a: &[f64]| (0..dim).map(|i| a[i * dim + i]).sum::<f64>();
    let mut power = m.to_vec();
    traces.push(trace(&power));
    let mut next = vec![0.0; dim * dim];
    for _ in 1..k_max {
        for i in 0..dim {
            let row = &mut next[i * dim..(i + 1) * dim];
            row.iter_mut().for_each(|v| *v = 0.0);
            for k in 0..dim {
                let a = power[i * dim + k];
                if a == 0.0 {
                    continue;
                }
                let mrow = &m[k * dim..(k + 1) * dim];
                for (r, &b) in row.iter_mut().zip(mrow) {
                    *r += a * b;
                }
            }
        }
        std::mem::swap(&mut power, &mut next);
        traces.push(trace(&power));
    }
    traces
}
