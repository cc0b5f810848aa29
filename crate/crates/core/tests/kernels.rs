use nalgebra::DMatrix;
use proptest::prelude::*;
use tasep_lab::kernels::{a2_eval, KernelKind, KernelPoint};
use tasep_lab::special::{airy_ai, airy_ai_prime, composite_gauss_legendre};

/// Closed form of the one-time Airy kernel off the diagonal.
fn a2_wronskian(x: f64, y: f64) -> f64 {
    let (ax, ay) = (airy_ai(x).unwrap(), airy_ai(y).unwrap());
    let (dx, dy) = (airy_ai_prime(x).unwrap(), airy_ai_prime(y).unwrap());
    (ax * dy - dx * ay) / (x - y)
}

/// `∫ e^{-dλ} Ai(x+λ) Ai(y+λ) dλ` by brute-force composite quadrature.
fn brute_force(x: f64, y: f64, d: f64, lo: f64, hi: f64) -> f64 {
    let panels = ((hi - lo) * 4.0) as usize;
    let breaks: Vec<f64> = (0..=panels)
        .map(|i| lo + (hi - lo) * i as f64 / panels as f64)
        .collect();
    let rule = composite_gauss_legendre(&breaks, 16).unwrap();
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&l, &w)| w * (-d * l).exp() * airy_ai(x + l).unwrap() * airy_ai(y + l).unwrap())
        .sum()
}

#[test]
fn k2_forward_gap_matches_brute_force() {
    for &(x, y, d) in &[(0.0, 0.0, 0.5), (-1.0, 0.5, 1.0), (1.0, -2.0, 0.25), (-3.0, -3.0, 2.0)] {
        // u' - u = d > 0: minus the integral over the negative half-line
        let k = KernelKind::Airy2
            .eval(KernelPoint::new(0.0, x, d, y))
            .unwrap();
        let lo = -(60.0 / d).min(400.0);
        let bf = -brute_force(x, y, -d, lo, 0.0);
        assert!((k - bf).abs() < 1e-8, "{x} {y} {d}: {k} vs {bf}");
    }
}

#[test]
fn k2_backward_gap_matches_brute_force() {
    for &(x, y, d) in &[(0.0, 0.0, 0.5), (-1.0, 0.5, 1.0), (-4.0, 2.0, 0.1)] {
        let k = KernelKind::Airy2
            .eval(KernelPoint::new(d, x, 0.0, y))
            .unwrap();
        let bf = brute_force(x, y, d, 0.0, 40.0);
        assert!((k - bf).abs() < 1e-10, "{x} {y} {d}: {k} vs {bf}");
    }
}

#[test]
fn a2_at_negative_arguments() {
    // 40-digit quadrature of the defining integral
    let v = a2_eval(-3.5749815922960977, -4.254140171118081).unwrap();
    assert!((v - 0.47050543226927551).abs() < 1e-13, "{v}");
}

#[test]
fn a2_gram_matrix_is_positive_semidefinite() {
    let pts: Vec<f64> = (0..16).map(|i| -4.0 + 8.0 * i as f64 / 15.0).collect();
    let block = KernelKind::Airy2.block(0.0, &pts, 0.0, &pts).unwrap();
    let m = DMatrix::from_row_slice(16, 16, &block);
    assert!((&m - m.transpose()).amax() == 0.0);
    let eig = m.clone().symmetric_eigen().eigenvalues;
    assert!(eig.min() > -1e-12, "{}", eig.min());
    assert!(m.diagonal().iter().all(|&v| v >= 0.0));
}

#[test]
fn block_agrees_with_pointwise_k2() {
    let xs = [-2.0, -0.5, 1.0];
    let ys = [-1.0, 0.0, 2.5];
    for gap in [-0.7, 0.0, 0.7] {
        let b = KernelKind::Airy2.block(0.0, &xs, gap, &ys).unwrap();
        for (i, &x) in xs.iter().enumerate() {
            for (j, &y) in ys.iter().enumerate() {
                let p = KernelKind::Airy2
                    .eval(KernelPoint::new(0.0, x, gap, y))
                    .unwrap();
                assert!((b[i * 3 + j] - p).abs() < 1e-10);
            }
        }
    }
}

proptest! {
    #[test]
    fn k2_equal_times_is_a2(u in -5.0..5.0f64, s in -6.0..6.0f64, sp in -6.0..6.0f64) {
        prop_assume!((s - sp).abs() > 0.05);
        let k = KernelKind::Airy2.eval(KernelPoint::new(u, s, u, sp)).unwrap();
        prop_assert_eq!(k, a2_eval(s, sp).unwrap());
        prop_assert!((k - a2_wronskian(s, sp)).abs() <= 1e-12, "{} vs {}", k, a2_wronskian(s, sp));
    }

    #[test]
    fn k1_equal_times_is_shifted_airy(u in -5.0..5.0f64, s in -6.0..6.0f64, sp in -6.0..6.0f64) {
        let k = KernelKind::Airy1.eval(KernelPoint::new(u, s, u, sp)).unwrap();
        prop_assert!((k - airy_ai(s + sp).unwrap()).abs() <= 1e-10);
    }

    #[test]
    fn kernels_are_invariant_under_common_time_shift(
        u in -3.0..3.0f64,
        up in -3.0..3.0f64,
        s in -4.0..4.0f64,
        sp in -4.0..4.0f64,
        c in -4.0..4.0f64,
    ) {
        // the gap must survive the shift exactly for the check to be exact
        let c = (c * 8.0).round() / 8.0;
        let u = (u * 8.0).round() / 8.0;
        let up = (up * 8.0).round() / 8.0;
        let p = KernelPoint::new(u, s, up, sp);
        for kind in [KernelKind::Airy1, KernelKind::Airy2] {
            prop_assert_eq!(kind.eval(p).unwrap(), kind.eval(p.shifted(c)).unwrap());
        }
    }
}
