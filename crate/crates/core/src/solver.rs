//! Newton-type solvers for polynomial systems on spheres and level sets.

use crate::algebra::{FloatPolynomial, Polynomial};
use crate::critical::{CONVERGED_RESIDUAL, MAX_ITERATIONS};
use crate::numeric::{min_norm_solve, norm, retract, tangent_part};

/// Polynomial system evaluated together with its Jacobian.
pub(crate) struct CompiledSystem {
    values: Vec<FloatPolynomial>,
    gradients: Vec<Vec<FloatPolynomial>>,
}

impl CompiledSystem {
    pub(crate) fn new(polys: &[Polynomial]) -> Self {
        CompiledSystem {
            values: polys.iter().map(Polynomial::to_float).collect(),
            gradients: polys.iter().map(|p| p.gradient().to_float()).collect(),
        }
    }

    pub(crate) fn eval(&self, x: &[f64]) -> Vec<f64> {
        self.values.iter().map(|p| p.eval(x)).collect()
    }

    pub(crate) fn jacobian(&self, x: &[f64]) -> Vec<Vec<f64>> {
        self.gradients
            .iter()
            .map(|g| g.iter().map(|p| p.eval(x)).collect())
            .collect()
    }
}

/// Gauss–Newton on the sphere of radius `radius`: minimum-norm tangent step,
/// length-capped, followed by radial retraction. Returns the final point and
/// its scaled residual.
pub(crate) fn sphere_gauss_newton(system: &CompiledSystem, start: Vec<f64>, radius: f64, scale: f64) -> (Vec<f64>, f64) {
    let mut x = start;
    let mut residual = norm(&system.eval(&x)) / scale;
    for _ in 0..MAX_ITERATIONS {
        if residual <= CONVERGED_RESIDUAL || !residual.is_finite() {
            break;
        }
        let value = system.eval(&x);
        let rows: Vec<Vec<f64>> = system
            .jacobian(&x)
            .iter()
            .map(|r| tangent_part(r, &x))
            .collect();
        let rhs: Vec<f64> = value.iter().map(|v| -v).collect();
        let mut step = tangent_part(&min_norm_solve(&rows, &rhs), &x);
        let len = norm(&step);
        if len == 0.0 {
            break;
        }
        let cap = 0.5 * radius;
        if len > cap {
            step.iter_mut().for_each(|s| *s *= cap / len);
        }
        let moved: Vec<f64> = x.iter().zip(&step).map(|(a, b)| a + b).collect();
        x = retract(&moved, radius);
        residual = norm(&system.eval(&x)) / scale;
    }
    (x, residual)
}


/// Newton iteration with minimum-norm updates for an underdetermined system
/// `system(x) = target`, each step capped at `max_step`. Returns the final
/// point and the residual ‖system(x) − target‖ divided by `scale`.
pub(crate) fn level_set_newton(
    system: &CompiledSystem,
    target: &[f64],
    start: Vec<f64>,
    max_step: f64,
    scale: f64,
) -> (Vec<f64>, f64) {
    let defect = |x: &[f64]| -> Vec<f64> {
        system.eval(x).iter().zip(target).map(|(v, t)| v - t).collect()
    };
    let mut x = start;
    let mut value = defect(&x);
    let mut residual = norm(&value) / scale;
    for _ in 0..MAX_ITERATIONS {
        if residual <= CONVERGED_RESIDUAL || !residual.is_finite() {
            break;
        }
        let rhs: Vec<f64> = value.iter().map(|v| -v).collect();
        let mut step = min_norm_solve(&system.jacobian(&x), &rhs);
        let len = norm(&step);
        if len == 0.0 {
            break;
        }
        if len > max_step {
            step.iter_mut().for_each(|s| *s *= max_step / len);
        }
        x.iter_mut().zip(&step).for_each(|(a, b)| *a += b);
        value = defect(&x);
        residual = norm(&value) / scale;
    }
    (x, residual)
}
