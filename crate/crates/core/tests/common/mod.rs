#![allow(dead_code)]

pub mod oracles;

use milnor_core::algebra::{rational, MapGerm, Polynomial};
use milnor_core::weights::{monomials_of_weighted_degree, WeightSystem};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random pair (P, Q), both quasi-homogeneous of one degree for `ws`.
pub struct RandomPair {
    pub germ: MapGerm,
    pub ws: WeightSystem,
}

fn random_poly(rng: &mut ChaCha8Rng, m: usize, support: &[Vec<u32>]) -> Polynomial {
    let k = rng.random_range(1..=support.len().min(4));
    let chosen: Vec<&Vec<u32>> = support.choose_multiple(rng, k).collect();
    let terms = chosen.into_iter().map(|e| {
        let mut num: i64 = rng.random_range(-9..=8);
        if num >= 0 {
            num += 1;
        }
        (e.clone(), rational(num, rng.random_range(1..=5)))
    });
    Polynomial::from_terms(m, terms).unwrap()
}

/// Generates `count` pairs with m ∈ {2,3,4}, integer weights in 1..=4 and
/// degree ≤ 12.
pub fn random_qh_pairs(count: usize, seed: u64) -> Vec<RandomPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = rng.random_range(2..=4usize);
        let weights: Vec<u32> = (0..m).map(|_| rng.random_range(1..=4)).collect();
        let b = rng.random_range(1..=12u32);
        let support = monomials_of_weighted_degree(&weights, b);
        if support.is_empty() {
            continue;
        }
        let p = random_poly(&mut rng, m, &support);
        let q = random_poly(&mut rng, m, &support);
        let ws = WeightSystem::from_integers(
            &weights.iter().map(|w| *w as i64).collect::<Vec<_>>(),
            b as i64,
            b as i64,
        )
        .unwrap();
        out.push(RandomPair {
            germ: MapGerm::with_default_names(p, q).unwrap(),
            ws,
        });
    }
    out
}

/// Seeded points with ‖x‖ ≤ radius.
pub fn random_points(count: usize, m: usize, radius: f64, seed: u64) -> Vec<Vec<f64>> {
    (0..count)
        .map(|i| milnor_core::sampling::uniform_ball(&mut milnor_core::sampling::sample_rng(seed, i as u64), m, radius))
        .collect()
}
