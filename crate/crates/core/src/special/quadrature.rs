//! Gauss–Legendre rules.

use crate::error::{ensure, Error, Result};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

/// A quadrature rule on a finite interval.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub interval: (f64, f64),
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Nodes and weights on `[-1, 1]`, ascending.
type Reference = Arc<(Vec<f64>, Vec<f64>)>;

fn reference_rule(n: usize) -> Reference {
    static CACHE: OnceLock<Mutex<HashMap<usize, Reference>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().unwrap().get(&n) {
        return Arc::clone(r);
    }
    let rule = Arc::new(legendre_roots(n));
    cache.lock().unwrap().insert(n, Arc::clone(&rule));
    rule
}

/// Evaluates `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn legendre_roots(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi's initial guess, then Newton.
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // roots come out descending from +1
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// `n`-point Gauss–Legendre rule on `[a, b]`, exact for polynomials of
/// degree `2n - 1`.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    ensure(n >= 1, || "Gauss-Legendre needs at least one node".into())?;
    ensure(a.is_finite() && b.is_finite() && a < b, || {
        format!("invalid interval [{a}, {b}]")
    })?;
    let reference = reference_rule(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    Ok(QuadratureRule {
        nodes: reference.0.iter().map(|t| mid + half * t).collect(),
        weights: reference.1.iter().map(|w| half * w).collect(),
        interval: (a, b),
    })
}

/// Composite rule: the same `order`-point rule on each consecutive panel
/// `[breaks[i], breaks[i + 1]]`.
pub fn composite_gauss_legendre(breaks: &[f64], order: usize) -> Result<QuadratureRule> {
    if breaks.len() < 2 {
        return Err(Error::InvalidArgument(
            "composite rule needs at least one panel".into(),
        ));
    }
    let reference = reference_rule(order);
    let panels = breaks.len() - 1;
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        ensure(a < b, || format!("panel breaks not increasing at {a}"))?;
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        nodes.extend(reference.0.iter().map(|t| mid + half * t));
        weights.extend(reference.1.iter().map(|w| half * w));
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        interval: (breaks[0], breaks[panels]),
    })
}
