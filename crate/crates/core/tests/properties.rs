use proptest::prelude::*;
use tasep_lab::geometry::{
    border_set, height_apply_jump, height_from_config, lpp_brute_force, lpp_passage_times,
    lpp_sample_weights, LppGeometry,
};
use tasep_lab::sim::{
    check_current_duality, simulate_continuous, simulate_discrete_parallel,
    simulate_discrete_sequential, ParticleSystem, RunSpec, Window,
};

/// Strictly decreasing positions from sorted distinct offsets.
fn system(offsets: Vec<i64>) -> ParticleSystem {
    let mut xs = offsets;
    xs.sort_unstable_by(|a, b| b.cmp(a));
    xs.dedup();
    ParticleSystem::new(1, xs).unwrap()
}

fn config() -> impl Strategy<Value = ParticleSystem> {
    prop::collection::vec(-30i64..30, 1..20).prop_map(system)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exclusion_and_monotone_positions(ps in config(), seed: u64, t in 0.1..20.0f64) {
        let labels: Vec<i64> = ps.labels().collect();
        let start: Vec<i64> = ps.positions().to_vec();
        let spec = RunSpec::new(vec![0.0, t / 2.0, t], labels.clone());
        let tr = simulate_continuous(ps, t, seed, &spec).unwrap();
        for row in &tr.samples {
            prop_assert!(row.windows(2).all(|w| w[1] < w[0]));
        }
        for k in 0..labels.len() {
            prop_assert!(tr.samples[0][k] == start[k]);
            prop_assert!(tr.samples[1][k] <= tr.samples[2][k]);
            prop_assert!(tr.samples[0][k] <= tr.samples[1][k]);
        }
    }

    #[test]
    fn discrete_rules_keep_exclusion(ps in config(), seed: u64, p in 0.05..1.0f64, steps in 1u64..60) {
        let labels: Vec<i64> = ps.labels().collect();
        let spec = RunSpec::new(vec![steps as f64], labels);
        for tr in [
            simulate_discrete_sequential(ps.clone(), steps, p, seed, &spec).unwrap(),
            simulate_discrete_parallel(ps.clone(), steps, p, seed, &spec).unwrap(),
        ] {
            prop_assert!(tr.samples[0].windows(2).all(|w| w[1] < w[0]));
        }
    }

    #[test]
    fn current_duality_holds(ps in config(), seed: u64, t in 0.1..10.0f64) {
        let labels: Vec<i64> = ps.labels().collect();
        let spec = RunSpec::new(vec![t / 3.0, t], labels).monitor(-35, 40).with_event_log();
        let tr = simulate_continuous(ps.clone(), t, seed, &spec).unwrap();
        prop_assert!(check_current_duality(&ps, &tr).unwrap() > 0);
    }

    #[test]
    fn same_seed_same_trajectory(ps in config(), seed: u64) {
        let labels: Vec<i64> = ps.labels().collect();
        let spec = RunSpec::new(vec![1.0, 5.0], labels);
        let a = simulate_continuous(ps.clone(), 5.0, seed, &spec).unwrap();
        let b = simulate_continuous(ps, 5.0, seed, &spec).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn height_total_change_counts_holes_minus_particles(ps in config()) {
        let w = Window::new(-40, 40).unwrap();
        let h = height_from_config(&ps, w).unwrap();
        let eta = ps.occupation(-40, 40);
        let particles = eta.iter().filter(|&&o| o).count() as i64;
        let holes = eta.len() as i64 - particles;
        let total = h.height(41).unwrap() - h.height(-40).unwrap();
        prop_assert_eq!(total, holes - particles);
    }

    #[test]
    fn jumps_move_the_height_by_two(ps in config(), pick in 0usize..20) {
        let w = Window::new(-40, 40).unwrap();
        let h = height_from_config(&ps, w).unwrap();
        let movable: Vec<i64> = ps
            .positions()
            .iter()
            .copied()
            .filter(|&x| !ps.is_occupied(x + 1) && x + 1 <= 40)
            .collect();
        prop_assume!(!movable.is_empty());
        let x = movable[pick % movable.len()];
        let h2 = height_apply_jump(&h, x).unwrap();
        for y in -40..=41 {
            let d = h2.height(y).unwrap() - h.height(y).unwrap();
            prop_assert_eq!(d, if y == x + 1 { 2 } else { 0 });
        }
    }

    #[test]
    fn border_region_grows_with_time(seed: u64, m in 1usize..12, n in 1usize..12) {
        let g = lpp_passage_times(lpp_sample_weights(m, n, seed).unwrap(), LppGeometry::PointToPoint);
        let mut prev = 0;
        for i in 0..40 {
            let b = border_set(&g, 0.5 * i as f64).unwrap();
            prop_assert!(b.area() >= prev);
            prev = b.area();
        }
    }

    #[test]
    fn recursion_matches_path_enumeration(seed: u64, m in 1usize..6, n in 1usize..6) {
        for geometry in [LppGeometry::PointToPoint, LppGeometry::PointToLine] {
            let g = lpp_passage_times(lpp_sample_weights(m, n, seed).unwrap(), geometry);
            prop_assert_eq!(g.g(m, n).unwrap(), lpp_brute_force(&g, m, n, geometry).unwrap());
        }
    }
}
