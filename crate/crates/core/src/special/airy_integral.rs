//! Integrals of products of shifted Airy functions,
//! `∫ e^{aλ} Ai(x + λ) Ai(y + λ) dλ`, over half-lines.
//!
//! Panels are sized from the local behaviour of the integrand: in the
//! oscillatory region `z = x + λ < 0` the product oscillates with
//! frequency `2 sqrt|z|`; in the decaying region `Ai(z)²` falls off at rate
//! `2 sqrt z`. Each panel carries a 10-point Gauss–Legendre rule.

use super::airy::{ai_unchecked, AIRY_DOMAIN};
use super::quadrature::{composite_gauss_legendre, gauss_legendre, QuadratureRule};
use crate::error::{Error, Result};
use std::f64::consts::PI;

const PANEL_ORDER: usize = 10;
const MAX_PANELS: usize = 2_000_000;
/// Relative truncation target for the adaptive pointwise integral.
const REL_TOL: f64 = 1e-14;
const ABS_FLOOR: f64 = 1e-30;
/// Absolute truncation target for shared (tabulated) λ-grids.
const GRID_ABS_TOL: f64 = 1e-18;

/// Result of [`airy_tail_integral_detailed`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailIntegral {
    pub value: f64,
    /// Upper truncation point Λ.
    pub upper: f64,
    /// Certified bound on the neglected `∫_Λ^∞`.
    pub remainder_bound: f64,
}

fn in_domain(z: f64) -> bool {
    z.is_finite() && z >= AIRY_DOMAIN.0 && z <= AIRY_DOMAIN.1
}

/// Width of the panel starting at `λ`, for arguments spanning
/// `[x_min + λ, x_max + λ]` and exponential weight `e^{aλ}`.
fn panel_width(lambda: f64, x_min: f64, x_max: f64, a: f64, cap: f64) -> f64 {
    let z_lo = x_min + lambda;
    let z_hi = x_max + lambda;
    let mut w = cap;
    if z_lo < -1.0 {
        w = w.min(1.25 / (-z_lo).sqrt());
    }
    if z_hi > 1.0 {
        w = w.min(2.0 / z_hi.sqrt());
    }
    if a != 0.0 {
        w = w.min(2.0 / a.abs());
    }
    w
}

/// Bound on `∫_Λ^∞ e^{aλ} |Ai(x+λ) Ai(y+λ)| dλ`, valid once both
/// arguments exceed 1 and the exponent is decreasing; `None` before that.
///
/// Uses `|Ai(z)| <= exp(-2/3 z^{3/2}) / (2 sqrt(pi))` for `z >= 1`.
fn remainder_bound(upper: f64, x: f64, y: f64, a: f64) -> Option<f64> {
    let zx = x + upper;
    let zy = y + upper;
    if zx < 1.0 || zy < 1.0 {
        return None;
    }
    let slope = zx.sqrt() + zy.sqrt() - a;
    if slope < 1.0 {
        return None;
    }
    let exponent = a * upper - 2.0 / 3.0 * (zx * zx.sqrt() + zy * zy.sqrt());
    Some(exponent.exp() / (4.0 * PI * slope))
}

fn check_args(x: f64, y: f64, c: f64, a: f64) -> Result<()> {
    if !(in_domain(x) && in_domain(y) && c.is_finite() && a.is_finite()) {
        return Err(Error::NonConvergence {
            what: format!("Airy tail integral with x={x}, y={y}, c={c}, a={a}"),
            achieved: f64::NAN,
        });
    }
    if !in_domain(x.min(y) + c) {
        return Err(Error::OutOfRange {
            what: "Airy tail integral lower limit",
            x: x.min(y) + c,
            lo: AIRY_DOMAIN.0,
            hi: AIRY_DOMAIN.1,
        });
    }
    Ok(())
}

/// `∫_c^∞ e^{aλ} Ai(x + λ) Ai(y + λ) dλ` with adaptive truncation.
///
/// The truncation point is advanced panel by panel until the certified
/// remainder drops below `1e-14` relative (or `1e-30` absolute). Any
/// finite `a` is accepted; for `a > 0` the superexponential Airy decay
/// still wins eventually.
pub fn airy_tail_integral(x: f64, y: f64, c: f64, a: f64) -> Result<f64> {
    airy_tail_integral_detailed(x, y, c, a).map(|t| t.value)
}

pub fn airy_tail_integral_detailed(x: f64, y: f64, c: f64, a: f64) -> Result<TailIntegral> {
    check_args(x, y, c, a)?;
    // fixed argument order keeps the result bitwise symmetric
    let (x, y) = (x.min(y), x.max(y));
    let x_min = x;
    let x_max = y;
    let reference = gauss_legendre(PANEL_ORDER, -1.0, 1.0)?;
    let mut lo = c;
    let mut sum = 0.0;
    for _ in 0..MAX_PANELS {
        let hi = lo + panel_width(lo, x_min, x_max, a, 1.0);
        sum += panel(&reference, lo, hi, |l| {
            (a * l).exp() * ai_unchecked(x + l) * ai_unchecked(y + l)
        });
        lo = hi;
        if let Some(bound) = remainder_bound(lo, x, y, a) {
            if bound <= (REL_TOL * sum.abs()).max(ABS_FLOOR) {
                return Ok(TailIntegral {
                    value: sum,
                    upper: lo,
                    remainder_bound: bound,
                });
            }
        }
        if !in_domain(x_max + lo) {
            break;
        }
    }
    Err(Error::NonConvergence {
        what: format!("Airy tail integral with x={x}, y={y}, c={c}, a={a}"),
        achieved: remainder_bound(lo, x, y, a).unwrap_or(f64::INFINITY),
    })
}

/// Same integrand over the fixed window `[c, upper]`, no truncation
/// control. Used for truncation studies.
pub fn airy_tail_integral_to(x: f64, y: f64, c: f64, a: f64, upper: f64) -> Result<f64> {
    check_args(x, y, c, a)?;
    if !(upper > c) || !in_domain(x.max(y) + upper) {
        return Err(Error::InvalidArgument(format!(
            "upper limit {upper} must exceed {c} and stay in the Airy domain"
        )));
    }
    let (x, y) = (x.min(y), x.max(y));
    let x_min = x;
    let x_max = y;
    let reference = gauss_legendre(PANEL_ORDER, -1.0, 1.0)?;
    let mut lo = c;
    let mut sum = 0.0;
    while lo < upper {
        let hi = (lo + panel_width(lo, x_min, x_max, a, 1.0)).min(upper);
        sum += panel(&reference, lo, hi, |l| {
            (a * l).exp() * ai_unchecked(x + l) * ai_unchecked(y + l)
        });
        lo = hi;
    }
    Ok(sum)
}

/// `∫_{-∞}^0 e^{aλ} Ai(x + λ) Ai(y + λ) dλ` for `a > 0`.
///
/// The exponential weight supplies the decay; the window is
/// `[-max(40/a, 40), 0]`, beyond which the weight is below `e^{-40}`.
pub fn airy_head_integral(x: f64, y: f64, a: f64) -> Result<f64> {
    let (x, y) = (x.min(y), x.max(y));
    let rule = negative_lambda_rule(a, x.min(y), x.max(y))?;
    Ok(rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&l, &w)| w * ai_unchecked(x + l) * ai_unchecked(y + l))
        .sum())
}

fn panel<F: Fn(f64) -> f64>(reference: &QuadratureRule, lo: f64, hi: f64, f: F) -> f64 {
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    half * reference
        .nodes
        .iter()
        .zip(&reference.weights)
        .map(|(&t, &w)| w * f(mid + half * t))
        .sum::<f64>()
}

/// Length of the negative-λ window for weight `e^{aλ}`.
pub(crate) fn negative_window(a: f64) -> f64 {
    (40.0 / a).max(40.0)
}

/// Shared rule on `[0, Λ]` for all arguments in `[x_min, x_max]`, with the
/// weight `e^{aλ}` folded into the quadrature weights. `Λ` is chosen so the
/// remainder for the smallest argument is below `1e-18` absolute.
pub(crate) fn positive_lambda_rule(a: f64, x_min: f64, x_max: f64) -> Result<QuadratureRule> {
    check_args(x_min, x_max, 0.0, a)?;
    let mut breaks = vec![0.0];
    let mut lo = 0.0;
    loop {
        let hi = lo + panel_width(lo, x_min, x_max, a, 1.0);
        breaks.push(hi);
        lo = hi;
        if let Some(b) = remainder_bound(lo, x_min, x_min, a) {
            if b <= GRID_ABS_TOL {
                break;
            }
        }
        if breaks.len() > MAX_PANELS || !in_domain(x_max + lo) {
            return Err(Error::NonConvergence {
                what: format!("positive λ-grid for a={a}, x in [{x_min}, {x_max}]"),
                achieved: remainder_bound(lo, x_min, x_min, a).unwrap_or(f64::INFINITY),
            });
        }
    }
    let mut rule = composite_gauss_legendre(&breaks, PANEL_ORDER)?;
    for (w, &l) in rule.weights.iter_mut().zip(&rule.nodes) {
        *w *= (a * l).exp();
    }
    Ok(rule)
}

/// Shared rule on `[-Λ', 0]`, `Λ' = max(40/a, 40)`, weight `e^{aλ}` folded
/// in. Panels are at most 0.25 wide and shrink like `1.25 / sqrt|z|` deep in
/// the oscillatory region.
pub(crate) fn negative_lambda_rule(a: f64, x_min: f64, x_max: f64) -> Result<QuadratureRule> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "negative-λ branch needs a > 0, got {a}"
        )));
    }
    check_args(x_min, x_max, 0.0, a)?;
    let window = negative_window(a);
    if !in_domain(x_min - window) {
        return Err(Error::Numerical(format!(
            "time gap {a} too small: the λ-window reaches Ai({}) outside the validated domain",
            x_min - window
        )));
    }
    let mut breaks = vec![0.0];
    let mut hi = 0.0;
    while hi > -window {
        // size from the far (more oscillatory) end of the panel
        let guess = panel_width(hi, x_min, x_max, a, 0.25);
        let w = panel_width(hi - guess, x_min, x_max, a, 0.25);
        let lo = (hi - w).max(-window);
        breaks.push(lo);
        hi = lo;
        if breaks.len() > MAX_PANELS {
            return Err(Error::Numerical(format!("too many panels for a={a}")));
        }
    }
    breaks.reverse();
    let mut rule = composite_gauss_legendre(&breaks, PANEL_ORDER)?;
    for (w, &l) in rule.weights.iter_mut().zip(&rule.nodes) {
        *w *= (a * l).exp();
    }
    Ok(rule)
}

#[cfg(test)]
mod tests {
    use super::*;

    // mpmath: A2(x, y) through the Christoffel-Darboux form at 40 digits.
    const A2_REFERENCE: &[(f64, f64, f64)] = &[
        (0.0, 0.0, 0.066987483779663974144),
        (-2.0, 1.0, 0.039945689051187241007),
        (1.0, 3.0, 0.00028138622002838066695),
        (-5.0, -4.5, 0.55833092360541159915),
        (8.0, 8.0, 3.8114404962281760495e-16),
        (-6.0, -6.0, 0.76969063330341854737),
        (2.5, -1.25, 0.0042236817382600231167),
    ];

    #[test]
    fn zero_weight_matches_airy_kernel() {
        for &(x, y, want) in A2_REFERENCE {
            let got = airy_tail_integral(x, y, 0.0, 0.0).unwrap();
            assert!(((got - want) / want).abs() < 1e-8, "A2({x},{y}) = {got}, want {want}");
        }
    }

    #[test]
    fn symmetric_in_arguments() {
        for &(x, y) in &[(0.3, -1.7), (2.0, 5.0), (-4.0, 1.0)] {
            let a = airy_tail_integral(x, y, 0.5, -0.7).unwrap();
            let b = airy_tail_integral(y, x, 0.5, -0.7).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn doubling_the_window_changes_little() {
        for &(x, y, a) in &[(0.0, 0.0, 0.0), (-3.0, -1.0, -0.5), (1.0, 2.0, -2.0)] {
            let t = airy_tail_integral_detailed(x, y, 0.0, a).unwrap();
            let doubled = airy_tail_integral_to(x, y, 0.0, a, 2.0 * t.upper).unwrap();
            assert!((doubled - t.value).abs() < 1e-8 * t.value.abs().max(1e-300));
            assert!(t.remainder_bound <= 1e-11 * t.value.abs() + 1e-30);
        }
    }

    #[test]
    fn head_integral_matches_gaussian_identity() {
        // -∫_{-∞}^0 = ∫_0^∞ - ∫_R and ∫_R e^{aλ} Ai Ai has a closed form;
        // values below are mpmath evaluations of that difference.
        let cases = [
            (0.5, 0.0, 0.0, -0.31694059611293473163),
            (0.5, -1.0, 2.0, 0.0083694202397479589835),
            (1.0, -3.0, -2.0, 0.016315232151767406472),
            (0.25, 1.0, 1.0, -0.43225977906821725482),
            (2.0, -2.0, 0.5, 0.015607734533059075171),
        ];
        for (a, x, y, want) in cases {
            let got = -airy_head_integral(x, y, a).unwrap();
            assert!(((got - want) / want).abs() < 1e-8, "a={a} x={x} y={y}: {got} vs {want}");
        }
    }

    #[test]
    fn tiny_time_gap_is_rejected() {
        assert!(matches!(
            airy_head_integral(0.0, 0.0, 1e-3),
            Err(Error::Numerical(_))
        ));
        assert!(airy_head_integral(0.0, 0.0, -1.0).is_err());
    }

    #[test]
    fn shared_grid_agrees_with_adaptive() {
        let rule = positive_lambda_rule(-0.3, -4.0, 10.0).unwrap();
        for &(x, y) in &[(-4.0, -4.0), (-1.0, 3.0), (9.0, 10.0)] {
            let tab: f64 = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(&l, &w)| w * ai_unchecked(x + l) * ai_unchecked(y + l))
                .sum();
            let adaptive = airy_tail_integral(x, y, 0.0, -0.3).unwrap();
            assert!((tab - adaptive).abs() < 1e-13 + 1e-9 * adaptive.abs(), "({x},{y})");
        }
    }
}
