//! The Euler flow and the bundle map it induces from the Milnor tube
//! E = B̄_ε ∩ f⁻¹(S_η) to the sphere complement S_ε ∖ K_ε.
//!
//! For the Euler field e(x) = (w₁x₁, …, w_m x_m) the flow is the diagonal
//! exponential xᵢ·exp(wᵢs). It scales a quasi-homogeneous component of
//! degree b by exp(b·s), so f/‖f‖ is constant along flow lines when b₁ = b₂,
//! and ‖flow(x, s)‖ is strictly increasing in s. Following each tube point
//! until it reaches the ε-sphere is the equivalence of the two fibrations.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::algebra::MapGerm;
use crate::critical::{MERGE_RADIUS, NEAR_LINK_TOLERANCE, SINGULAR_TOLERANCE};
use crate::error::{check_dims, Error, Result};
use crate::numeric::{angle_between, dedup_points, distance, norm};
use crate::sampling::{sample_rng, uniform_ball, uniform_sphere};
use crate::solver::{level_set_newton, sphere_gauss_newton, CompiledSystem};
use crate::weights::{verify_qh, Component, WeightSystem};

/// Largest η/ε accepted by default.
pub const DEFAULT_ETA_RATIO: f64 = 0.1;
/// Tube points must satisfy |f(x) − η·(cosθ, sinθ)| ≤ this · η.
pub const TUBE_TOLERANCE: f64 = 1e-10;
/// Sphere fiber points must be within this angle (radians) of the target direction.
pub const ANGULAR_TOLERANCE: f64 = 1e-10;
/// Verdict thresholds of the equivalence check.
pub const MAX_ANGULAR_DEVIATION: f64 = 1e-8;
pub const MAX_SPHERE_RESIDUAL: f64 = 1e-10;
/// Two points closer than this (relative to ε) count as the same point.
pub const INJECTIVITY_RADIUS: f64 = 1e-9;
/// Newton starts tried per requested tube sample in the equivalence check.
pub const STARTS_PER_SAMPLE: usize = 64;

/// x ↦ (x₁e^{w₁s}, …, x_m e^{w_m s}).
pub fn euler_flow(x: &[f64], s: f64, ws: &WeightSystem) -> Result<Vec<f64>> {
    check_dims(ws.num_vars(), x.len())?;
    Ok(flow_with(x, s, &ws.weights_f64()))
}

fn flow_with(x: &[f64], s: f64, weights: &[f64]) -> Vec<f64> {
    x.iter().zip(weights).map(|(xi, w)| xi * (w * s).exp()).collect()
}

/// ln‖flow(x, s)‖ and its derivative in s, via log-sum-exp over the nonzero
/// coordinates.
fn log_radius(x: &[f64], s: f64, weights: &[f64]) -> (f64, f64) {
    let logs: Vec<(f64, f64)> = x
        .iter()
        .zip(weights)
        .filter(|(xi, _)| **xi != 0.0)
        .map(|(xi, w)| (2.0 * (xi.abs().ln() + w * s), *w))
        .collect();
    let top = logs.iter().map(|l| l.0).fold(f64::NEG_INFINITY, f64::max);
    let (mut sum, mut wsum) = (0.0, 0.0);
    for (l, w) in &logs {
        let e = (l - top).exp();
        sum += e;
        wsum += w * e;
    }
    (0.5 * (top + sum.ln()), wsum / sum)
}

/// The unique s with ‖flow(x, s)‖ = ε.
///
/// d/ds ln‖flow‖ is a weighted mean of the weights of the nonzero
/// coordinates, so it lies in [w_min, w_max]; that pins an initial bracket,
/// which safeguarded Newton then shrinks.
pub fn time_to_sphere(x: &[f64], epsilon: f64, ws: &WeightSystem) -> Result<f64> {
    check_dims(ws.num_vars(), x.len())?;
    if !(epsilon > 0.0) {
        return Err(Error::Precondition(format!("epsilon must be positive, got {epsilon}")));
    }
    if x.iter().all(|c| *c == 0.0) {
        return Err(Error::Precondition(
            "the origin is a fixed point of the Euler flow; it never reaches the sphere".into(),
        ));
    }
    let weights = ws.weights_f64();
    let target = epsilon.ln();
    let active = || x.iter().zip(&weights).filter(|(c, _)| **c != 0.0).map(|(_, w)| *w);
    let w_min = active().fold(f64::INFINITY, f64::min);
    let w_max = active().fold(0.0, f64::max);

    let gap = log_radius(x, 0.0, &weights).0 - target;
    // Already on the sphere to working precision.
    if gap.abs() <= 1e-15 {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = if gap < 0.0 {
        (-gap / w_max, -gap / w_min)
    } else {
        (-gap / w_min, -gap / w_max)
    };
    let mut s = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (lr, slope) = log_radius(x, s, &weights);
        let phi = lr - target;
        if phi.abs() <= 1e-15 {
            break;
        }
        if phi < 0.0 {
            lo = s;
        } else {
            hi = s;
        }
        let newton = s - phi / slope;
        s = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= f64::EPSILON * s.abs().max(1.0) {
            break;
        }
    }
    Ok(s)
}

fn check_off_variety(germ: &MapGerm, x: &[f64]) -> Result<[f64; 2]> {
    let f = germ.eval(x)?;
    let n = f[0].hypot(f[1]);
    if n == 0.0 || n <= SINGULAR_TOLERANCE * germ.magnitude_at_radius(norm(x)) {
        return Err(Error::OnVariety { norm: n });
    }
    Ok(f)
}

/// h(x): flow x along the Euler field until it meets the ε-sphere.
pub fn tube_to_sphere(germ: &MapGerm, ws: &WeightSystem, x: &[f64], epsilon: f64) -> Result<Vec<f64>> {
    check_dims(germ.num_vars(), ws.num_vars())?;
    check_off_variety(germ, x)?;
    let s = time_to_sphere(x, epsilon, ws)?;
    euler_flow(x, s, ws)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TubePoint {
    pub x: Vec<f64>,
    pub f_value: [f64; 2],
    pub within_ball: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FiberOptions {
    /// Largest admissible η/ε; must stay below 1.
    pub max_eta_ratio: f64,
}

impl Default for FiberOptions {
    fn default() -> Self {
        FiberOptions {
            max_eta_ratio: DEFAULT_ETA_RATIO,
        }
    }
}

fn check_tube_radii(epsilon: f64, eta: f64, options: &FiberOptions) -> Result<()> {
    if !(epsilon > 0.0 && eta > 0.0) {
        return Err(Error::Precondition(format!(
            "epsilon and eta must be positive, got epsilon = {epsilon}, eta = {eta}"
        )));
    }
    if eta >= epsilon {
        return Err(Error::Precondition(format!(
            "eta = {eta} must be much smaller than epsilon = {epsilon}"
        )));
    }
    if eta > options.max_eta_ratio * epsilon {
        return Err(Error::Precondition(format!(
            "eta = {eta} exceeds {} * epsilon = {}",
            options.max_eta_ratio,
            options.max_eta_ratio * epsilon
        )));
    }
    Ok(())
}

/// One Newton solve onto f⁻¹(η·(cosθ, sinθ)) from a start in the ball;
/// `None` unless it converges inside the ball.
fn solve_tube_point(
    system: &CompiledSystem,
    start: Vec<f64>,
    epsilon: f64,
    eta: f64,
    theta: f64,
) -> Option<(TubePoint, f64)> {
    let target = [eta * theta.cos(), eta * theta.sin()];
    let (x, residual) = level_set_newton(system, &target, start, 0.5 * epsilon, eta);
    if !(residual <= TUBE_TOLERANCE) {
        return None;
    }
    let within_ball = norm(&x) <= epsilon;
    if !within_ball {
        return None;
    }
    let f = system.eval(&x);
    Some((
        TubePoint {
            x,
            f_value: [f[0], f[1]],
            within_ball,
        },
        residual,
    ))
}

fn germ_system(germ: &MapGerm) -> CompiledSystem {
    CompiledSystem::new(&[germ.p().clone(), germ.q().clone()])
}

/// Points of the Milnor tube fiber over η·(cosθ, sinθ), from `n` seeded
/// Newton starts in the ball, deduplicated.
pub fn tube_fiber_sample(
    germ: &MapGerm,
    epsilon: f64,
    eta: f64,
    theta: f64,
    n: usize,
    seed: u64,
) -> Result<Vec<TubePoint>> {
    tube_fiber_sample_with(germ, epsilon, eta, theta, n, seed, &FiberOptions::default())
}

pub fn tube_fiber_sample_with(
    germ: &MapGerm,
    epsilon: f64,
    eta: f64,
    theta: f64,
    n: usize,
    seed: u64,
    options: &FiberOptions,
) -> Result<Vec<TubePoint>> {
    check_tube_radii(epsilon, eta, options)?;
    let system = germ_system(germ);
    let m = germ.num_vars();
    let found: Vec<(Vec<f64>, f64, TubePoint)> = (0..n)
        .filter_map(|i| {
            let start = uniform_ball(&mut sample_rng(seed, i as u64), m, epsilon);
            solve_tube_point(&system, start, epsilon, eta, theta).map(|(p, r)| (p.x.clone(), r, p))
        })
        .collect();
    if found.is_empty() {
        return Err(Error::EmptyFiber { starts: n });
    }
    Ok(dedup_points(found, MERGE_RADIUS * epsilon)
        .into_iter()
        .map(|(_, _, p)| p)
        .collect())
}

/// Points of the sphere fiber (f/‖f‖)⁻¹(cosθ, sinθ) on S_ε ∖ K_ε.
pub fn sphere_fiber_sample(germ: &MapGerm, epsilon: f64, theta: f64, n: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if !(epsilon > 0.0) {
        return Err(Error::Precondition(format!("epsilon must be positive, got {epsilon}")));
    }
    let (c, s) = (theta.cos(), theta.sin());
    // −sinθ·P + cosθ·Q vanishes on the line through (cosθ, sinθ).
    let g = &germ.q().scale(&to_rational(c)) - &germ.p().scale(&to_rational(s));
    let system = CompiledSystem::new(&[g]);
    let num = germ.to_numeric();
    let f_scale = germ.magnitude_at_radius(epsilon);
    let scale = if f_scale > 0.0 { f_scale } else { 1.0 };
    let cutoff = NEAR_LINK_TOLERANCE * f_scale;
    let m = germ.num_vars();
    let found: Vec<(Vec<f64>, f64, ())> = (0..n)
        .filter_map(|i| {
            let start = uniform_sphere(&mut sample_rng(seed, i as u64), m, epsilon);
            let (x, _) = sphere_gauss_newton(&system, start, epsilon, scale);
            let f = num.value(&x);
            if f[0].hypot(f[1]) <= cutoff {
                return None;
            }
            let dev = angle_between(f, [c, s]);
            (dev <= ANGULAR_TOLERANCE).then_some((x, dev, ()))
        })
        .collect();
    Ok(dedup_points(found, MERGE_RADIUS * epsilon)
        .into_iter()
        .map(|(x, _, _)| x)
        .collect())
}

/// Exact rational image of a float, so a rotated combination of P and Q can
/// stay in the exact polynomial type.
fn to_rational(v: f64) -> crate::algebra::Rational {
    crate::algebra::Rational::from_float(v).expect("finite coefficient")
}

/// One tube point and its image under h.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceSample {
    pub theta: f64,
    pub tube_point: Vec<f64>,
    pub image: Vec<f64>,
    pub flow_time: f64,
    pub angular_deviation: f64,
    pub sphere_residual: f64,
}

/// Numeric check that h commutes with the two projections, lands on the
/// sphere and is injective on the sampled points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub epsilon: f64,
    pub eta: f64,
    pub num_samples: usize,
    /// Fiber angles for which no tube point converged.
    pub missed_angles: usize,
    pub max_angular_deviation: f64,
    pub max_sphere_residual: f64,
    pub max_tube_residual: f64,
    pub max_flow_time: f64,
    pub injectivity_violations: usize,
    pub verdict: bool,
    pub samples: Vec<EquivalenceSample>,
}

/// Samples `n` tube points at evenly spaced fiber angles, maps them through h
/// and aggregates the deviations.
pub fn equivalence_report(
    germ: &MapGerm,
    ws: &WeightSystem,
    epsilon: f64,
    eta: f64,
    n: usize,
    seed: u64,
) -> Result<EquivalenceReport> {
    equivalence_report_with(germ, ws, epsilon, eta, n, seed, &FiberOptions::default())
}

pub fn equivalence_report_with(
    germ: &MapGerm,
    ws: &WeightSystem,
    epsilon: f64,
    eta: f64,
    n: usize,
    seed: u64,
    options: &FiberOptions,
) -> Result<EquivalenceReport> {
    check_dims(germ.num_vars(), ws.num_vars())?;
    if !verify_qh(germ.p(), ws, Component::P)? || !verify_qh(germ.q(), ws, Component::Q)? {
        return Err(Error::Precondition(format!(
            "the germ is not quasi-homogeneous for the weight system {ws}"
        )));
    }
    if !ws.has_same_degree() {
        return Err(Error::Precondition(format!(
            "P and Q must share one weighted degree, got {ws}"
        )));
    }
    if n == 0 {
        return Err(Error::Precondition("need at least one sample".into()));
    }
    check_tube_radii(epsilon, eta, options)?;

    let system = germ_system(germ);
    let num = germ.to_numeric();
    let m = germ.num_vars();
    let weights = ws.weights_f64();

    let mut samples = Vec::with_capacity(n);
    let mut missed = 0;
    let mut max_tube_residual: f64 = 0.0;
    for k in 0..n {
        let theta = TAU * k as f64 / n as f64;
        let mut rng = sample_rng(seed, k as u64);
        let solved = (0..STARTS_PER_SAMPLE).find_map(|_| {
            let start = uniform_ball(&mut rng, m, epsilon);
            solve_tube_point(&system, start, epsilon, eta, theta)
        });
        let Some((point, residual)) = solved else {
            missed += 1;
            continue;
        };
        max_tube_residual = max_tube_residual.max(residual);
        let x = point.x;
        let s = time_to_sphere(&x, epsilon, ws)?;
        let image = flow_with(&x, s, &weights);
        let before = num.value(&x);
        let after = num.value(&image);
        samples.push(EquivalenceSample {
            theta,
            angular_deviation: angle_between(before, after),
            sphere_residual: (norm(&image) - epsilon).abs(),
            tube_point: x,
            image,
            flow_time: s,
        });
    }
    if samples.is_empty() {
        return Err(Error::EmptyFiber {
            starts: n * STARTS_PER_SAMPLE,
        });
    }

    let same = INJECTIVITY_RADIUS * epsilon;
    let mut injectivity_violations = 0;
    for i in 0..samples.len() {
        for j in i + 1..samples.len() {
            let (a, b) = (&samples[i], &samples[j]);
            if distance(&a.tube_point, &b.tube_point) > same && distance(&a.image, &b.image) <= same {
                injectivity_violations += 1;
            }
        }
    }

    let max_of = |f: fn(&EquivalenceSample) -> f64| samples.iter().map(f).fold(0.0, f64::max);
    let max_angular_deviation = max_of(|s| s.angular_deviation);
    let max_sphere_residual = max_of(|s| s.sphere_residual);
    let max_flow_time = samples.iter().map(|s| s.flow_time).fold(f64::NEG_INFINITY, f64::max);
    let verdict = max_angular_deviation <= MAX_ANGULAR_DEVIATION
        && max_sphere_residual <= MAX_SPHERE_RESIDUAL * epsilon
        && injectivity_violations == 0;
    Ok(EquivalenceReport {
        epsilon,
        eta,
        num_samples: samples.len(),
        missed_angles: missed,
        max_angular_deviation,
        max_sphere_residual,
        max_tube_residual,
        max_flow_time,
        injectivity_violations,
        verdict,
        samples,
    })
}
