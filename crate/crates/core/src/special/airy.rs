//! Airy function of the first kind on the real line.
//!
//! Two representations cover the validated domain:
//!
//! * the Maclaurin series generated by the ODE recurrence
//!   `(n + 2)(n + 1) c[n + 2] = c[n - 1]` for `-SERIES_SWITCH < x < 2.5`,
//! * Taylor expansions about fixed centres on `[2.5, SERIES_SWITCH)`, where
//!   the Maclaurin series would cancel away the relative accuracy of the
//!   small recessive solution,
//! * the Poincaré asymptotic expansions (exponential for `x > 0`,
//!   oscillatory for `x < 0`) beyond it.
//!
//! At the switch point the series loses about four digits to cancellation
//! and the asymptotic expansion is limited by its smallest term, roughly
//! `exp(-2ζ)` with `ζ = 2/3 |x|^{3/2}`. Both stay below `1e-11` absolute
//! at `|x| = 7`.

use crate::error::{Error, Result};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Arguments outside this interval are rejected.
///
/// On the negative side the oscillatory expansion keeps improving with
/// `|x|`; the limit only protects the phase `2/3 |x|^{3/2}` from losing
/// absolute precision. On the positive side `Ai` has long underflowed.
pub const AIRY_DOMAIN: (f64, f64) = (-1.0e4, 1.0e4);

const SERIES_SWITCH: f64 = 7.0;
const TAYLOR_START: f64 = 2.5;
const TAYLOR_STEP: f64 = 0.5;
/// Centres at 3.0, 3.5, ..., 7.0.
const N_CENTRES: usize = 9;

/// Ai(0) = 3^{-2/3} / Γ(2/3)
pub const AI_ZERO: f64 = 0.355_028_053_887_817_239_26;
/// Ai'(0) = -3^{-1/3} / Γ(1/3)
pub const AI_PRIME_ZERO: f64 = -0.258_819_403_792_806_798_41;

const MAX_SERIES_TERMS: usize = 400;
const N_ASYMPTOTIC: usize = 60;

fn check_domain(x: f64) -> Result<()> {
    if x.is_finite() && x >= AIRY_DOMAIN.0 && x <= AIRY_DOMAIN.1 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what: "Airy function",
            x,
            lo: AIRY_DOMAIN.0,
            hi: AIRY_DOMAIN.1,
        })
    }
}

/// `Ai(x)` with absolute error below `1e-10` on [`AIRY_DOMAIN`].
pub fn airy_ai(x: f64) -> Result<f64> {
    check_domain(x)?;
    Ok(ai_unchecked(x))
}

/// `Ai'(x)`, same domain and representations as [`airy_ai`].
pub fn airy_ai_prime(x: f64) -> Result<f64> {
    check_domain(x)?;
    Ok(ai_pair_unchecked(x).1)
}

/// `exp(2/3 x^{3/2}) Ai(x)` for `x >= 0`.
///
/// Lets callers fold large exponential prefactors into the decay of `Ai`
/// without overflow or underflow.
pub fn airy_ai_scaled(x: f64) -> Result<f64> {
    check_domain(x)?;
    if x < 0.0 {
        return Err(Error::OutOfRange {
            what: "scaled Airy function",
            x,
            lo: 0.0,
            hi: AIRY_DOMAIN.1,
        });
    }
    if x < SERIES_SWITCH {
        Ok(ai_pair_unchecked(x).0 * zeta(x).exp())
    } else {
        Ok(asymptotic_positive_scaled(x).0)
    }
}

/// Hot-path evaluation; the caller guarantees `x` is inside the domain.
#[inline]
pub(crate) fn ai_unchecked(x: f64) -> f64 {
    if x >= TAYLOR_START && x < SERIES_SWITCH {
        shifted_taylor(x).0
    } else if x.abs() < SERIES_SWITCH {
        maclaurin(x).0
    } else if x > 0.0 {
        let (scaled, _) = asymptotic_positive_scaled(x);
        scaled * (-zeta(x)).exp()
    } else {
        asymptotic_negative(-x).0
    }
}

pub(crate) fn ai_pair_unchecked(x: f64) -> (f64, f64) {
    if x >= TAYLOR_START && x < SERIES_SWITCH {
        shifted_taylor(x)
    } else if x.abs() < SERIES_SWITCH {
        maclaurin(x)
    } else if x > 0.0 {
        let (a, b) = asymptotic_positive_scaled(x);
        let e = (-zeta(x)).exp();
        (a * e, b * e)
    } else {
        asymptotic_negative(-x)
    }
}

#[inline]
fn zeta(z: f64) -> f64 {
    2.0 / 3.0 * z * z.sqrt()
}

/// Returns `(Ai(x), Ai'(x))` from the Taylor series at the origin.
fn maclaurin(x: f64) -> (f64, f64) {
    // c[n] are Taylor coefficients; three most recent kept in a ring.
    let mut c = [AI_ZERO, AI_PRIME_ZERO, 0.0];
    let mut value = AI_ZERO;
    let mut deriv = AI_PRIME_ZERO;
    let mut pow = x; // x^n
    value += AI_PRIME_ZERO * x;
    let mut quiet = 0;
    for n in 2..MAX_SERIES_TERMS {
        // c[n] = c[n-3] / (n (n-1))
        let cn = c[n % 3] / ((n * (n - 1)) as f64);
        c[n % 3] = cn;
        let pow_prev = pow; // x^{n-1}
        pow *= x;
        let tv = cn * pow;
        let td = n as f64 * cn * pow_prev;
        value += tv;
        deriv += td;
        if tv.abs() <= 1e-18 * value.abs().max(1e-300) && td.abs() <= 1e-18 * deriv.abs().max(1e-300)
        {
            quiet += 1;
            // every third coefficient vanishes identically, so require a run
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    (value, deriv)
}

/// `(Ai, Ai')` at `centre + h` from their values at `centre`, using
/// `(n + 2)(n + 1) a[n + 2] = centre a[n] + a[n - 1]`.
fn taylor(centre: f64, value: f64, deriv: f64, h: f64) -> (f64, f64) {
    let mut a = [value, deriv, 0.5 * centre * value]; // a[n-2], a[n-1], a[n]
    let mut sum = value + deriv * h + a[2] * h * h;
    let mut dsum = deriv + 2.0 * a[2] * h;
    let mut pow = h * h; // h^n for the newest coefficient
    let mut quiet = 0;
    for n in 3..MAX_SERIES_TERMS {
        // a[n] = (centre a[n-2] + a[n-3]) / (n (n-1))
        let next = (centre * a[1] + a[0]) / ((n * (n - 1)) as f64);
        let dpow = pow;
        pow *= h;
        let t = next * pow;
        let td = n as f64 * next * dpow;
        sum += t;
        dsum += td;
        a = [a[1], a[2], next];
        if t.abs() <= 1e-18 * sum.abs() && td.abs() <= 1e-18 * dsum.abs() {
            quiet += 1;
            if quiet >= 2 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    (sum, dsum)
}

/// `(Ai, Ai')` at the Taylor centres, obtained by stepping backwards from
/// the asymptotic region. Integrating towards smaller `x` is stable for the
/// recessive solution.
fn centres() -> &'static [(f64, f64, f64); N_CENTRES] {
    static CENTRES: OnceLock<[(f64, f64, f64); N_CENTRES]> = OnceLock::new();
    CENTRES.get_or_init(|| {
        let mut x = 10.0;
        let (s, sd) = asymptotic_positive_scaled(x);
        let e = (-zeta(x)).exp();
        let (mut v, mut d) = (s * e, sd * e);
        let last = TAYLOR_START + 0.5 * TAYLOR_STEP + (N_CENTRES - 1) as f64 * TAYLOR_STEP;
        let mut out = [(0.0, 0.0, 0.0); N_CENTRES];
        let mut idx = N_CENTRES;
        while idx > 0 {
            let h = -0.25;
            let (nv, nd) = taylor(x, v, d, h);
            x += h;
            v = nv;
            d = nd;
            let target = TAYLOR_START + 0.5 * TAYLOR_STEP + (idx - 1) as f64 * TAYLOR_STEP;
            if (x - target).abs() < 1e-12 && x <= last + 1e-12 {
                idx -= 1;
                out[idx] = (target, v, d);
            }
        }
        out
    })
}

fn shifted_taylor(x: f64) -> (f64, f64) {
    let table = centres();
    let i = (((x - TAYLOR_START) / TAYLOR_STEP) as usize).min(N_CENTRES - 1);
    let (c, v, d) = table[i];
    taylor(c, v, d, x - c)
}

struct AsymptoticCoefficients {
    u: [f64; N_ASYMPTOTIC],
    v: [f64; N_ASYMPTOTIC],
}

fn coefficients() -> &'static AsymptoticCoefficients {
    static COEFFS: OnceLock<AsymptoticCoefficients> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut u = [0.0; N_ASYMPTOTIC];
        let mut v = [0.0; N_ASYMPTOTIC];
        u[0] = 1.0;
        v[0] = 1.0;
        for k in 1..N_ASYMPTOTIC {
            let kf = k as f64;
            u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
                / ((2.0 * kf - 1.0) * 216.0 * kf);
            v[k] = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u[k];
        }
        AsymptoticCoefficients { u, v }
    })
}

/// Sums `sum_k sign(k) c[k] / zeta^k` over the index set `start, start + step, ...`
/// stopping at the smallest term.
fn optimal_sum(c: &[f64], zeta: f64, start: usize, step: usize, alternate: bool) -> f64 {
    let inv = 1.0 / zeta;
    let mut sum = 0.0;
    let mut last = f64::INFINITY;
    let mut sign = 1.0;
    let mut k = start;
    while k < c.len() {
        let term = sign * c[k] * inv.powi(k as i32);
        if term.abs() > last {
            break;
        }
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
        last = term.abs();
        if alternate {
            sign = -sign;
        }
        k += step;
    }
    sum
}

/// `(e^{ζ} Ai(x), e^{ζ} Ai'(x))` for large positive `x`.
fn asymptotic_positive_scaled(x: f64) -> (f64, f64) {
    let co = coefficients();
    let z = zeta(x);
    // (-1)^k u_k / ζ^k  ==  u_k / (-ζ)^k
    let su = optimal_sum(&co.u, -z, 0, 1, false);
    let sv = optimal_sum(&co.v, -z, 0, 1, false);
    let q = x.powf(0.25);
    let norm = 0.5 / PI.sqrt();
    (norm / q * su, -norm * q * sv)
}

/// `(Ai(-z), Ai'(-z))` for large positive `z`.
fn asymptotic_negative(z: f64) -> (f64, f64) {
    let co = coefficients();
    let zt = zeta(z);
    let p = optimal_sum(&co.u, zt, 0, 2, true);
    let q = optimal_sum(&co.u, zt, 1, 2, true);
    let r = optimal_sum(&co.v, zt, 0, 2, true);
    let s = optimal_sum(&co.v, zt, 1, 2, true);
    let phase = zt - 0.25 * PI;
    let (sn, cs) = phase.sin_cos();
    let z4 = z.powf(0.25);
    let rsp = 1.0 / PI.sqrt();
    let ai = rsp / z4 * (cs * p + sn * q);
    let aip = rsp * z4 * (sn * r - cs * s);
    (ai, aip)
}
