use tasep_lab::fredholm::{
    f1_scaled_point, f2_point, fredholm_det_nystrom, fredholm_series_oracle, joint_law,
    one_point, DistributionQuery, NystromParams,
};
use tasep_lab::kernels::KernelKind;

const KINDS: [KernelKind; 2] = [KernelKind::Airy2, KernelKind::Airy1];

#[test]
fn nystrom_matches_series_oracle() {
    for kind in KINDS {
        let p = NystromParams::default_for(kind);
        for s in [-2.0, -1.0, 0.0, 1.0, 2.0] {
            let q = DistributionQuery::one_point(kind, s).unwrap();
            let ny = fredholm_det_nystrom(&q, p.length, p.nodes, p.theta).unwrap();
            let series = fredholm_series_oracle(&q, p.length, p.nodes, 8).unwrap();
            assert!((ny - series).abs() <= 1e-6, "{kind:?} s={s}: {ny} vs {series}");
        }
    }
}

#[test]
fn theta_does_not_change_the_determinant() {
    for (kind, tol) in [(KernelKind::Airy2, 1e-6), (KernelKind::Airy1, 1e-5)] {
        let p = NystromParams::default_for(kind);
        for s in [-2.0, 0.0, 2.0] {
            let q = DistributionQuery::one_point(kind, s).unwrap();
            let v: Vec<f64> = [0.0, 0.25, 0.5]
                .iter()
                .map(|&th| fredholm_det_nystrom(&q, p.length, p.nodes, th).unwrap())
                .collect();
            assert!((v[0] - v[1]).abs() <= tol && (v[0] - v[2]).abs() <= tol, "{kind:?} {v:?}");
        }
    }
}

#[test]
fn pinned_values() {
    // frozen from the series oracle at (L, n) = (40, 128)
    assert!((f2_point(0.0).unwrap() - 0.969372828355).abs() < 1e-10);
    assert!((f2_point(-2.0).unwrap() - 0.413224142505).abs() < 1e-10);
    assert!((f1_scaled_point(0.0).unwrap() - 0.831908066203).abs() < 1e-10);
    assert!((f1_scaled_point(-2.0).unwrap() - 0.007567678599).abs() < 1e-10);
}

#[test]
fn cdfs_are_monotone() {
    for kind in KINDS {
        let v: Vec<f64> = (0..=48)
            .map(|i| one_point(kind, -6.0 + 0.25 * i as f64).unwrap())
            .collect();
        assert!(v.windows(2).all(|w| w[1] >= w[0]), "{kind:?}");
        assert!(v[0] >= 0.0 && v[48] <= 1.0);
    }
}

#[test]
fn far_level_reduces_to_the_marginal() {
    for kind in KINDS {
        let q = DistributionQuery::new(kind, vec![(0.0, -0.5), (0.7, 40.0)]).unwrap();
        let joint = joint_law(&q).unwrap().value;
        let marginal = one_point(kind, -0.5).unwrap();
        assert!((joint - marginal).abs() < 1e-8, "{kind:?}: {joint} vs {marginal}");
    }
}

#[test]
fn joint_law_is_stationary_in_time() {
    for kind in KINDS {
        let q = DistributionQuery::new(kind, vec![(0.0, -1.0), (0.5, 0.0)]).unwrap();
        let a = joint_law(&q).unwrap().value;
        let b = joint_law(&q.shifted(3.0).unwrap()).unwrap().value;
        assert!((a - b).abs() < 1e-10, "{kind:?}: {a} vs {b}");
    }
}

#[test]
fn joint_law_is_bounded_by_marginals() {
    for kind in KINDS {
        for (s1, s2) in [(-1.0, 0.0), (0.0, 0.0), (1.0, -1.5)] {
            let q = DistributionQuery::new(kind, vec![(0.0, s1), (0.5, s2)]).unwrap();
            let joint = joint_law(&q).unwrap().value;
            let m1 = one_point(kind, s1).unwrap();
            let m2 = one_point(kind, s2).unwrap();
            assert!(joint <= m1.min(m2) + 1e-9, "{kind:?}");
            // Fréchet lower bound
            assert!(joint >= m1 + m2 - 1.0 - 1e-9, "{kind:?}");
        }
    }
}

#[test]
fn two_point_values() {
    let q = DistributionQuery::new(KernelKind::Airy2, vec![(0.0, 0.0), (0.5, 0.0)]).unwrap();
    assert!((joint_law(&q).unwrap().value - 0.9476496065).abs() < 1e-9);
}
