//! Reference germs used throughout the tests and the CLI examples.

use crate::algebra::{integer, MapGerm, Polynomial};

fn names(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|s| s.to_string()).collect()
}

/// (x² − y², 2xy): real and imaginary parts of z², weights (1,1), degree 2.
pub fn complex_square() -> MapGerm {
    let x = Polynomial::var(0, 2);
    let y = Polynomial::var(1, 2);
    let p = &x.pow(2) - &y.pow(2);
    let q = (&x * &y).scale(&integer(2));
    MapGerm::new(p, q, names(&["x", "y"])).expect("valid germ")
}

/// (x² − y⁴, xy²): weights (2,1), degree 4.
pub fn weighted_quartic() -> MapGerm {
    let x = Polynomial::var(0, 2);
    let y = Polynomial::var(1, 2);
    let p = &x.pow(2) - &y.pow(4);
    let q = &x * &y.pow(2);
    MapGerm::new(p, q, names(&["x", "y"])).expect("valid germ")
}

/// (x₁x₂ + y₁y₂, y₁x₂ − x₁y₂) in variables (x₁, y₁, x₂, y₂): the real pair of
/// z₁·conj(z₂). Its zero set is {z₁ = 0} ∪ {z₂ = 0}.
pub fn hopf_pair() -> MapGerm {
    let v = |i| Polynomial::var(i, 4);
    let (x1, y1, x2, y2) = (v(0), v(1), v(2), v(3));
    let p = &(&x1 * &x2) + &(&y1 * &y2);
    let q = &(&y1 * &x2) - &(&x1 * &y2);
    MapGerm::new(p, q, names(&["x1", "y1", "x2", "y2"])).expect("valid germ")
}

/// (x, x² + y(x² + y²)): not quasi-homogeneous; f/‖f‖ has critical points on
/// every small circle, lying on the curve r = sinθ·cos²θ.
pub fn polar_curve_germ() -> MapGerm {
    let x = Polynomial::var(0, 2);
    let y = Polynomial::var(1, 2);
    let q = &x.pow(2) + &(&y * &(&x.pow(2) + &y.pow(2)));
    MapGerm::new(x, q, names(&["x", "y"])).expect("valid germ")
}
