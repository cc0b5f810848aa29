//! Extended Airy kernels.
//!
//! `K1` is evaluated from its closed form (a heat-kernel term plus a
//! shifted Airy term); `K2` from its spectral form, an integral over `λ`
//! of `e^{(u'-u)λ} Ai(s+λ) Ai(s'+λ)` on the positive half-line when
//! `u >= u'` and minus the same integral on the negative half-line when
//! `u < u'`. Both depend on the times only through `u' - u`.

use crate::error::{Error, Result};
use crate::special::airy::{ai_unchecked, airy_ai, airy_ai_scaled};
use crate::special::airy_integral::{
    airy_head_integral, airy_tail_integral, negative_lambda_rule, positive_lambda_rule,
};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Arguments `(u, s; u', s')` of an extended kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelPoint {
    pub u: f64,
    pub s: f64,
    pub u_prime: f64,
    pub s_prime: f64,
}

impl KernelPoint {
    pub fn new(u: f64, s: f64, u_prime: f64, s_prime: f64) -> Self {
        Self {
            u,
            s,
            u_prime,
            s_prime,
        }
    }

    /// Same point with both times shifted by `c`.
    pub fn shifted(self, c: f64) -> Self {
        Self {
            u: self.u + c,
            u_prime: self.u_prime + c,
            ..self
        }
    }

    fn gap(&self) -> f64 {
        self.u_prime - self.u
    }
}

/// Which extended kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    Airy1,
    Airy2,
}

impl KernelKind {
    pub fn eval(self, pt: KernelPoint) -> Result<f64> {
        match self {
            KernelKind::Airy1 => k1_eval(pt),
            KernelKind::Airy2 => k2_eval(pt),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            KernelKind::Airy1 => "airy1",
            KernelKind::Airy2 => "airy2",
        }
    }

    /// Row-major `xs.len() x ys.len()` block of `K(u, xs[i]; v, ys[j])`.
    ///
    /// For `K2` all entries of a block share one λ-grid and a table of
    /// `Ai(x + λ)`, which turns the block into a matrix product.
    pub fn block(self, u: f64, xs: &[f64], v: f64, ys: &[f64]) -> Result<Vec<f64>> {
        match self {
            KernelKind::Airy1 => {
                let mut out = Vec::with_capacity(xs.len() * ys.len());
                for &x in xs {
                    for &y in ys {
                        out.push(k1_eval(KernelPoint::new(u, x, v, y))?);
                    }
                }
                Ok(out)
            }
            KernelKind::Airy2 => k2_block(v - u, xs, ys),
        }
    }
}

/// Extended Airy₁ kernel.
pub fn k1_eval(pt: KernelPoint) -> Result<f64> {
    let d = pt.gap();
    let (s, sp) = (pt.s, pt.s_prime);
    if !(d.is_finite() && s.is_finite() && sp.is_finite()) {
        return Err(Error::InvalidArgument(format!("non-finite kernel point {pt:?}")));
    }
    let heat = if d > 0.0 {
        -(-(sp - s) * (sp - s) / (4.0 * d)).exp() / (4.0 * PI * d).sqrt()
    } else {
        0.0
    };
    let z = s + sp + d * d;
    let exponent = d * (s + sp) + 2.0 / 3.0 * d * d * d;
    let airy = if z >= 0.0 {
        // fold e^{-ζ(z)} into the prefactor so neither side overflows
        let zeta = 2.0 / 3.0 * z * z.sqrt();
        airy_ai_scaled(z)? * (exponent - zeta).exp()
    } else {
        airy_ai(z)? * exponent.exp()
    };
    Ok(heat + airy)
}

/// Extended Airy₂ kernel.
pub fn k2_eval(pt: KernelPoint) -> Result<f64> {
    let d = pt.gap();
    if !d.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite kernel point {pt:?}")));
    }
    if d == 0.0 {
        a2_eval(pt.s, pt.s_prime)
    } else if d < 0.0 {
        airy_tail_integral(pt.s, pt.s_prime, 0.0, d)
    } else {
        Ok(-airy_head_integral(pt.s, pt.s_prime, d)?)
    }
}

/// One-time Airy kernel `∫_0^∞ Ai(x+λ) Ai(y+λ) dλ`.
pub fn a2_eval(x: f64, y: f64) -> Result<f64> {
    airy_tail_integral(x, y, 0.0, 0.0)
}

fn k2_block(gap: f64, xs: &[f64], ys: &[f64]) -> Result<Vec<f64>> {
    if xs.is_empty() || ys.is_empty() {
        return Ok(Vec::new());
    }
    let lo = xs.iter().chain(ys).copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().chain(ys).copied().fold(f64::NEG_INFINITY, f64::max);
    let (rule, sign) = if gap <= 0.0 {
        (positive_lambda_rule(gap, lo, hi)?, 1.0)
    } else {
        (negative_lambda_rule(gap, lo, hi)?, -1.0)
    };
    let q = rule.len();
    let root_w: Vec<f64> = rule.weights.iter().map(|w| w.sqrt()).collect();
    let table = |pts: &[f64]| -> Vec<f64> {
        let mut t = Vec::with_capacity(pts.len() * q);
        for &x in pts {
            t.extend(
                rule.nodes
                    .iter()
                    .zip(&root_w)
                    .map(|(&l, &rw)| rw * ai_unchecked(x + l)),
            );
        }
        t
    };
    let tx = table(xs);
    let same = xs == ys;
    let ty_owned;
    let ty = if same {
        &tx
    } else {
        ty_owned = table(ys);
        &ty_owned
    };
    let mut out = vec![0.0; xs.len() * ys.len()];
    for i in 0..xs.len() {
        let row = &tx[i * q..(i + 1) * q];
        for j in 0..ys.len() {
            if same && j < i {
                out[i * ys.len() + j] = out[j * ys.len() + i];
                continue;
            }
            let col = &ty[j * q..(j + 1) * q];
            let dot: f64 = row.iter().zip(col).map(|(a, b)| a * b).sum();
            out[i * ys.len() + j] = sign * dot;
        }
    }
    Ok(out)
}
