//! Critical points of the sphere projection f/‖f‖ : S_ε ∖ K_ε → S¹.
//!
//! A point x off V is critical iff ω(x) is parallel to x (including ω(x) = 0).
//! The symbolic side of that criterion is [`parallel_residual`] and, in the
//! plane, [`tangential_residual`]; the numeric side is a seeded multistart
//! Gauss–Newton search on the sphere.

use serde::Serialize;

use crate::algebra::{MapGerm, NumericGerm, PolyVectorField, Polynomial};
use crate::error::{Error, Result};
use crate::fields::omega;
use crate::numeric::{dedup_points, dot, norm, singular_values, tangent_part};
use crate::solver::{sphere_gauss_newton, CompiledSystem};
use crate::sampling::{sample_rng, uniform_sphere};

/// Scaled residual at which a Newton run stops.
pub const CONVERGED_RESIDUAL: f64 = 1e-12;
/// Scaled residual a stopped run must reach to be reported.
pub const ACCEPTED_RESIDUAL: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 50;
/// Merge radius for deduplication, relative to ε.
pub const MERGE_RADIUS: f64 = 1e-6;
/// ‖f‖ below this fraction of its magnitude bound at radius ε counts as on the link.
pub const NEAR_LINK_TOLERANCE: f64 = 1e-8;
/// ‖f‖ at or below this fraction of its magnitude bound is reported as a link point.
pub const LINK_TOLERANCE: f64 = 1e-10;
/// Relative ‖f‖ below which the projection Jacobian is undefined.
pub const SINGULAR_TOLERANCE: f64 = 1e-14;

fn wedge(u: &PolyVectorField) -> Vec<Polynomial> {
    let m = u.len();
    let x = PolyVectorField::position(m);
    let mut out = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            out.push(&(&u[i] * &x[j]) - &(&u[j] * &x[i]));
        }
    }
    out
}

/// g = ‖ω‖²‖x‖² − ⟨ω, x⟩², nonnegative and vanishing exactly where ω ∥ x.
pub fn parallel_residual(germ: &MapGerm) -> Polynomial {
    let w = omega(germ);
    let x = PolyVectorField::position(germ.num_vars());
    let ww = w.dot(&w).expect("same variables");
    let xx = x.dot(&x).expect("same variables");
    let wx = w.dot(&x).expect("same variables");
    &(&ww * &xx) - &(&wx * &wx)
}

/// ⟨ω, (−y, x)⟩ for plane germs. Its square is [`parallel_residual`].
pub fn tangential_residual(germ: &MapGerm) -> Result<Polynomial> {
    if germ.num_vars() != 2 {
        return Err(Error::Precondition(format!(
            "the tangential form needs 2 variables, germ has {}",
            germ.num_vars()
        )));
    }
    let w = omega(germ);
    let rot = PolyVectorField::new(vec![-Polynomial::var(1, 2), Polynomial::var(0, 2)])?;
    w.dot(&rot)
}

/// The 2×2 minors ωᵢxⱼ − ωⱼxᵢ (i < j); all vanish iff ω ∥ x.
pub fn wedge_minors(germ: &MapGerm) -> Vec<Polynomial> {
    wedge(&omega(germ))
}

fn check_off_variety(num: &NumericGerm, germ: &MapGerm, x: &[f64]) -> Result<[f64; 2]> {
    if x.len() != germ.num_vars() {
        return Err(Error::DimensionMismatch {
            expected: germ.num_vars(),
            found: x.len(),
        });
    }
    let f = num.value(x);
    let n = f[0].hypot(f[1]);
    if n == 0.0 || n <= SINGULAR_TOLERANCE * germ.magnitude_at_radius(norm(x)) {
        return Err(Error::OnVariety { norm: n });
    }
    Ok(f)
}

fn closed_form_jacobian(f: [f64; 2], w: &[f64]) -> [Vec<f64>; 2] {
    let n3 = f[0].hypot(f[1]).powi(3);
    [
        w.iter().map(|wi| -f[1] / n3 * wi).collect(),
        w.iter().map(|wi| f[0] / n3 * wi).collect(),
    ]
}

/// Jacobian of f/‖f‖ on ℝᵐ: rows (−Q/‖f‖³)·ω and (P/‖f‖³)·ω.
pub fn projection_jacobian(germ: &MapGerm, x: &[f64]) -> Result<[Vec<f64>; 2]> {
    let num = germ.to_numeric();
    let f = check_off_variety(&num, germ, x)?;
    Ok(closed_form_jacobian(f, &num.omega(x)))
}

/// Singular value of the differential of f/‖f‖ restricted to the tangent
/// space of the sphere through x, as a map into the tangent line of S¹.
/// It vanishes exactly at critical points; away from them it equals
/// ‖ω_tan(x)‖/‖f(x)‖².
pub fn projection_differential_sigma(germ: &MapGerm, x: &[f64]) -> Result<f64> {
    let num = germ.to_numeric();
    let f = check_off_variety(&num, germ, x)?;
    let jac = closed_form_jacobian(f, &num.omega(x));
    let n = f[0].hypot(f[1]);
    // Unit tangent of S¹ at f/‖f‖.
    let (u0, u1) = (-f[1] / n, f[0] / n);
    let row: Vec<f64> = jac[0].iter().zip(&jac[1]).map(|(a, b)| u0 * a + u1 * b).collect();
    let row = tangent_part(&row, x);
    Ok(singular_values(&[row])[0])
}

/// sinθ·cos²θ: in polar coordinates the critical points of f/‖f‖ for
/// (x, x² + y(x² + y²)) lie on r = sinθ·cos²θ.
pub fn polar_curve_radius(theta: f64) -> f64 {
    theta.sin() * theta.cos().powi(2)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalSetResult {
    pub epsilon: f64,
    pub points: Vec<Vec<f64>>,
    /// Scaled parallelism residual ‖W(x)‖/(ε·Ω(ε)) where W are the wedge minors
    /// and Ω(ε) bounds ‖ω‖ on the ε-ball.
    pub residuals: Vec<f64>,
    /// Points where ω itself vanishes off V.
    pub omega_zero_flags: Vec<bool>,
    pub multistart_count: usize,
    /// Starts whose run reached the accepted residual.
    pub converged_starts: usize,
    /// Converged starts dropped for lying on (or next to) the link.
    pub near_link_starts: usize,
    pub seed: u64,
}

impl CriticalSetResult {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinkSample {
    pub epsilon: f64,
    pub points: Vec<Vec<f64>>,
    pub f_norms: Vec<f64>,
    pub multistart_count: usize,
    pub seed: u64,
}

impl LinkSample {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon.is_finite() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("epsilon must be positive, got {epsilon}")))
    }
}

fn omega_scale(w: &PolyVectorField, epsilon: f64) -> f64 {
    w.components()
        .iter()
        .map(|c| c.magnitude_at_radius(epsilon).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Multistart search for critical points of f/‖f‖ on the ε-sphere, away from
/// the link. Deterministic for a fixed seed.
pub fn critical_points_on_sphere(
    germ: &MapGerm,
    epsilon: f64,
    n_starts: usize,
    seed: u64,
) -> Result<CriticalSetResult> {
    check_epsilon(epsilon)?;
    let m = germ.num_vars();
    let w = omega(germ);
    let system = CompiledSystem::new(&wedge(&w));
    let num = germ.to_numeric();
    let omega_bound = omega_scale(&w, epsilon);
    let scale = if omega_bound > 0.0 { epsilon * omega_bound } else { 1.0 };
    let link_cutoff = NEAR_LINK_TOLERANCE * germ.magnitude_at_radius(epsilon);

    let mut converged = 0;
    let mut near_link = 0;
    let mut found = Vec::new();
    for i in 0..n_starts {
        let start = uniform_sphere(&mut sample_rng(seed, i as u64), m, epsilon);
        let (x, residual) = sphere_gauss_newton(&system, start, epsilon, scale);
        if !(residual <= ACCEPTED_RESIDUAL) {
            continue;
        }
        converged += 1;
        if num.norm(&x) <= link_cutoff {
            near_link += 1;
            continue;
        }
        let omega_zero = norm(&num.omega(&x)) <= NEAR_LINK_TOLERANCE * omega_bound;
        found.push((x, residual, omega_zero));
    }
    let kept = dedup_points(found, MERGE_RADIUS * epsilon);
    let mut result = CriticalSetResult {
        epsilon,
        points: Vec::with_capacity(kept.len()),
        residuals: Vec::with_capacity(kept.len()),
        omega_zero_flags: Vec::with_capacity(kept.len()),
        multistart_count: n_starts,
        converged_starts: converged,
        near_link_starts: near_link,
        seed,
    };
    for (x, r, z) in kept {
        result.points.push(x);
        result.residuals.push(r);
        result.omega_zero_flags.push(z);
    }
    Ok(result)
}

/// Multistart minimisation of ‖f‖² on the ε-sphere; keeps the points that
/// reach the link tolerance. Empty when the link is empty.
pub fn link_points(germ: &MapGerm, epsilon: f64, n: usize, seed: u64) -> Result<LinkSample> {
    check_epsilon(epsilon)?;
    let m = germ.num_vars();
    let system = CompiledSystem::new(&[germ.p().clone(), germ.q().clone()]);
    let f_scale = germ.magnitude_at_radius(epsilon);
    let scale = if f_scale > 0.0 { f_scale } else { 1.0 };

    let mut found = Vec::new();
    for i in 0..n {
        let start = uniform_sphere(&mut sample_rng(seed, i as u64), m, epsilon);
        let (x, residual) = sphere_gauss_newton(&system, start, epsilon, scale);
        if residual <= LINK_TOLERANCE {
            found.push((x, residual * scale, ()));
        }
    }
    let kept = dedup_points(found, MERGE_RADIUS * epsilon);
    Ok(LinkSample {
        epsilon,
        f_norms: kept.iter().map(|k| k.1).collect(),
        points: kept.into_iter().map(|k| k.0).collect(),
        multistart_count: n,
        seed,
    })
}

/// Distance of x from the ε-sphere relative to ε.
pub fn sphere_defect(x: &[f64], epsilon: f64) -> f64 {
    (dot(x, x).sqrt() - epsilon).abs() / epsilon
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::integer;
    use crate::catalog;

    #[test]
    fn tangential_residual_of_polar_curve_germ() {
        let x = Polynomial::var(0, 2);
        let y = Polynomial::var(1, 2);
        let r2 = &x.pow(2) + &y.pow(2);
        let expected = &r2.pow(2) - &(&x.pow(2) * &y);
        assert_eq!(tangential_residual(&catalog::polar_curve_germ()).unwrap(), expected);
        let a = tangential_residual(&catalog::complex_square()).unwrap();
        assert_eq!(a, r2.pow(2).scale(&integer(2)));
        assert!(tangential_residual(&catalog::hopf_pair()).is_err());
    }

    #[test]
    fn general_residual_is_square_of_tangential_form_in_the_plane() {
        for germ in [catalog::polar_curve_germ(), catalog::complex_square(), catalog::weighted_quartic()] {
            let t = tangential_residual(&germ).unwrap();
            assert_eq!(parallel_residual(&germ), t.pow(2));
            let minors = wedge_minors(&germ);
            assert_eq!(minors.len(), 1);
            assert_eq!(minors[0], -t);
        }
    }

    #[test]
    fn hopf_pair_residual_at_diagonal_point() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let g = parallel_residual(&catalog::hopf_pair());
        assert!((g.eval(&[h, 0.0, h, 0.0]).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(wedge_minors(&catalog::hopf_pair()).len(), 6);
    }

    #[test]
    fn projection_jacobian_closed_form() {
        let germ = catalog::complex_square();
        let j = projection_jacobian(&germ, &[1.0, 0.0]).unwrap();
        assert_eq!(j, [vec![0.0, 0.0], vec![0.0, 2.0]]);
        // Q = 2xy = 0 on the axis: first row vanishes.
        let j = projection_jacobian(&germ, &[0.0, 0.7]).unwrap();
        assert_eq!(j[0], vec![0.0, 0.0]);
        assert!(matches!(
            projection_jacobian(&germ, &[0.0, 0.0]),
            Err(Error::OnVariety { .. })
        ));
        assert!(projection_jacobian(&germ, &[1.0]).is_err());
    }

    #[test]
    fn differential_sigma_of_complex_square_is_two_over_radius() {
        let germ = catalog::complex_square();
        for r in [0.1, 0.5, 1.0] {
            let s = projection_differential_sigma(&germ, &[0.6 * r, 0.8 * r]).unwrap();
            assert!((s - 2.0 / r).abs() < 1e-12 * (2.0 / r), "{s}");
        }
    }

    #[test]
    fn polar_radius_values() {
        use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
        assert!(polar_curve_radius(FRAC_PI_2).abs() < 1e-16);
        assert!((polar_curve_radius(FRAC_PI_4) - 2f64.sqrt() / 4.0).abs() < 1e-15);
        let t = (1.0 / 3f64.sqrt()).asin();
        assert!((polar_curve_radius(t) - 2.0 / (3.0 * 3f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn complex_square_has_no_critical_points() {
        for eps in [0.1, 0.5, 1.0] {
            let r = critical_points_on_sphere(&catalog::complex_square(), eps, 32, 5).unwrap();
            assert!(r.is_empty());
            assert_eq!(r.converged_starts, 0);
        }
    }

    #[test]
    fn polar_curve_germ_critical_points_lie_on_curve() {
        let germ = catalog::polar_curve_germ();
        let r = critical_points_on_sphere(&germ, 0.2, 64, 1).unwrap();
        assert_eq!(r.len(), 4);
        let t = tangential_residual(&germ).unwrap();
        for (p, z) in r.points.iter().zip(&r.omega_zero_flags) {
            assert!(t.eval(p).unwrap().abs() < 1e-10);
            assert!(sphere_defect(p, 0.2) < 1e-10);
            assert!(!z);
        }
    }

    #[test]
    fn critical_search_is_deterministic() {
        let germ = catalog::polar_curve_germ();
        let a = critical_points_on_sphere(&germ, 0.3, 16, 9).unwrap();
        let b = critical_points_on_sphere(&germ, 0.3, 16, 9).unwrap();
        assert_eq!(a, b);
        assert!(critical_points_on_sphere(&germ, 0.0, 16, 9).is_err());
    }

    #[test]
    fn link_samples() {
        assert!(link_points(&catalog::complex_square(), 1.0, 32, 0).unwrap().is_empty());
        assert!(link_points(&catalog::polar_curve_germ(), 0.5, 32, 0).unwrap().is_empty());
        let d = link_points(&catalog::hopf_pair(), 1.0, 32, 0).unwrap();
        assert!(!d.is_empty());
        for p in &d.points {
            let z1 = p[0].hypot(p[1]);
            let z2 = p[2].hypot(p[3]);
            assert!(z1.min(z2) <= 1e-8);
            assert!(sphere_defect(p, 1.0) <= 1e-10);
        }
    }
}
