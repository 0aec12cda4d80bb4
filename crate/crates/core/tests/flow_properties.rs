mod common;

use common::oracles::{norm, rk4_euler_field};

use milnor_core::flow::{euler_flow, time_to_sphere};
use milnor_core::numeric::angle_between;
use milnor_core::weights::WeightSystem;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn closed_form_flow_matches_rk4() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for pair in common::random_qh_pairs(50, 31) {
        let w = pair.ws.weights_f64();
        let x0 = common::random_points(1, w.len(), 1.0, rng.random())[0].clone();
        for s in [0.5, 1.0, 2.0] {
            let exact = euler_flow(&x0, s, &pair.ws).unwrap();
            let numeric = rk4_euler_field(&x0, &w, s, 1e-3);
            let scale = norm(&exact).max(1e-300);
            for (a, b) in exact.iter().zip(&numeric) {
                assert!((a - b).abs() <= 1e-8 * scale, "s = {s}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn flow_group_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for pair in common::random_qh_pairs(50, 32) {
        let x = common::random_points(1, pair.ws.num_vars(), 1.0, rng.random())[0].clone();
        let (s, t) = (rng.random_range(-3.0..3.0), rng.random_range(-2.0..2.0));
        let two_step = euler_flow(&euler_flow(&x, s, &pair.ws).unwrap(), t, &pair.ws).unwrap();
        let one_step = euler_flow(&x, s + t, &pair.ws).unwrap();
        for (a, b) in two_step.iter().zip(&one_step) {
            assert!((a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-300));
        }
    }
}

#[test]
fn flow_transports_components_and_fixes_direction() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for pair in common::random_qh_pairs(60, 33) {
        let b = pair.ws.degree_p().to_f64().unwrap();
        let num = pair.germ.to_numeric();
        for x in common::random_points(10, pair.ws.num_vars(), 1.0, rng.random()) {
            let s = rng.random_range(-5.0..5.0);
            let y = euler_flow(&x, s, &pair.ws).unwrap();
            let before = num.value(&x);
            let after = num.value(&y);
            for (p0, p1) in before.iter().zip(&after) {
                let expect = (b * s).exp() * p0;
                // Rounding in the polynomial evaluation itself is relative to
                // the coefficient bound at the evaluation radius.
                let eval_scale = pair.germ.magnitude_at_radius(norm(&y));
                assert!(
                    (p1 - expect).abs() <= 1e-9 * expect.abs().max(1.0).max(1e-6 * eval_scale),
                    "{p1} vs {expect}"
                );
            }
            if before[0].hypot(before[1]) > 1e-6 * pair.germ.magnitude_at_radius(norm(&x)) {
                assert!(angle_between(before, after) <= 1e-9);
            }
        }
    }
}

#[test]
fn flow_norm_is_strictly_increasing() {
    for pair in common::random_qh_pairs(20, 34) {
        for x in common::random_points(5, pair.ws.num_vars(), 1.0, 8) {
            let radii: Vec<f64> = (0..100)
                .map(|k| -2.0 + 4.0 * k as f64 / 99.0)
                .map(|s| norm(&euler_flow(&x, s, &pair.ws).unwrap()))
                .collect();
            assert!(radii.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn time_to_sphere_lands_on_sphere() {
    for pair in common::random_qh_pairs(50, 35) {
        for x in common::random_points(10, pair.ws.num_vars(), 1.0, 9) {
            for eps in [0.1, 1.0, 5.0] {
                let s = time_to_sphere(&x, eps, &pair.ws).unwrap();
                let y = euler_flow(&x, s, &pair.ws).unwrap();
                assert!((norm(&y) - eps).abs() <= 1e-12 * eps);
            }
        }
    }
}

#[test]
fn unequal_weight_example_matches_quadratic_formula() {
    let ws = WeightSystem::from_integers(&[2, 1], 4, 4).unwrap();
    let s = time_to_sphere(&[0.01, 0.1], 1.0, &ws).unwrap();
    // 1e-4·u² + 1e-2·u − 1 = 0 with u = e^{2s}.
    let u = (-0.01 + (0.0001f64 + 0.0004).sqrt()) / 0.0002;
    assert!((s - 0.5 * u.ln()).abs() <= 1e-12);
}
