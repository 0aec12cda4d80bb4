//! Independent numeric oracles the library results are checked against.

use milnor_core::MapGerm;

/// Roots of sinθ·cos²θ = r on [0, 2π) by grid scan and bisection.
pub fn polar_roots(r: f64) -> Vec<f64> {
    let f = |t: f64| t.sin() * t.cos().powi(2) - r;
    let n = 20_000;
    let step = std::f64::consts::TAU / n as f64;
    let mut roots = Vec::new();
    for i in 0..n {
        let (mut a, mut b) = (i as f64 * step, (i + 1) as f64 * step);
        if f(a).signum() == f(b).signum() {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if f(a).signum() == f(mid).signum() {
                a = mid;
            } else {
                b = mid;
            }
        }
        roots.push(0.5 * (a + b));
    }
    roots
}

fn normalized(f: [f64; 2]) -> [f64; 2] {
    let n = f[0].hypot(f[1]);
    [f[0] / n, f[1] / n]
}

/// Central differences of f/‖f‖ with step `h`.
pub fn fd_projection_jacobian(germ: &MapGerm, x: &[f64], h: f64) -> [Vec<f64>; 2] {
    let m = x.len();
    let mut rows = [vec![0.0; m], vec![0.0; m]];
    for j in 0..m {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[j] += h;
        xm[j] -= h;
        let up = normalized(germ.eval(&xp).unwrap());
        let dn = normalized(germ.eval(&xm).unwrap());
        for i in 0..2 {
            rows[i][j] = (up[i] - dn[i]) / (2.0 * h);
        }
    }
    rows
}

/// Classical fourth-order Runge–Kutta for x' = (w_i x_i), integrated to time
/// `s` with steps of about `h`.
pub fn rk4_euler_field(x0: &[f64], weights: &[f64], s: f64, h: f64) -> Vec<f64> {
    let field = |x: &[f64]| -> Vec<f64> { x.iter().zip(weights).map(|(xi, w)| w * xi).collect() };
    let axpy = |x: &[f64], k: &[f64], a: f64| -> Vec<f64> { x.iter().zip(k).map(|(xi, ki)| xi + a * ki).collect() };
    let steps = ((s / h).abs().round() as usize).max(1);
    let h = s / steps as f64;
    let mut x = x0.to_vec();
    for _ in 0..steps {
        let k1 = field(&x);
        let k2 = field(&axpy(&x, &k1, h / 2.0));
        let k3 = field(&axpy(&x, &k2, h / 2.0));
        let k4 = field(&axpy(&x, &k3, h));
        for i in 0..x.len() {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    x
}

pub fn norm(x: &[f64]) -> f64 {
    x.iter().map(|c| c * c).sum::<f64>().sqrt()
}
