//! Seeded, order-independent random sampling.
//!
//! Every sample draws from its own ChaCha stream keyed by (seed, index), so a
//! sample's value never depends on how many others were drawn before it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform point on the sphere of the given radius in ℝᵐ.
pub fn uniform_sphere<R: Rng>(rng: &mut R, m: usize, radius: f64) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..m).map(|_| rng.sample(StandardNormal)).collect();
        let n = norm(&v);
        if n > 1e-12 {
            return v.into_iter().map(|c| c * radius / n).collect();
        }
    }
}

/// Uniform point in the closed ball of the given radius in ℝᵐ.
pub fn uniform_ball<R: Rng>(rng: &mut R, m: usize, radius: f64) -> Vec<f64> {
    let u: f64 = rng.random();
    let r = radius * u.powf(1.0 / m as f64);
    uniform_sphere(rng, m, r)
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}
