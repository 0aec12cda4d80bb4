//! Small dense linear algebra used by the numeric solvers.

use nalgebra::DMatrix;

pub(crate) use crate::sampling::norm;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Singular values of a row-major matrix, in descending order.
pub fn singular_values(rows: &[Vec<f64>]) -> Vec<f64> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mat = DMatrix::from_fn(nrows, ncols, |i, j| rows[i][j]);
    let mut s: Vec<f64> = mat.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Minimum-norm least-squares solution of `rows · d = rhs`.
pub(crate) fn min_norm_solve(rows: &[Vec<f64>], rhs: &[f64]) -> Vec<f64> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mat = DMatrix::from_fn(nrows, ncols, |i, j| rows[i][j]);
    let b = DMatrix::from_column_slice(nrows, 1, rhs);
    let svd = mat.svd(true, true);
    let max_sv = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let eps = max_sv * 1e-13 * (nrows.max(ncols) as f64);
    if max_sv == 0.0 {
        return vec![0.0; ncols];
    }
    match svd.solve(&b, eps) {
        Ok(sol) => sol.iter().copied().collect(),
        Err(_) => vec![0.0; ncols],
    }
}

/// Removes the component of `v` along `x`.
pub(crate) fn tangent_part(v: &[f64], x: &[f64]) -> Vec<f64> {
    let xx = dot(x, x);
    if xx == 0.0 {
        return v.to_vec();
    }
    let c = dot(v, x) / xx;
    v.iter().zip(x).map(|(vi, xi)| vi - c * xi).collect()
}

/// Rescales `x` onto the sphere of radius `r`.
pub(crate) fn retract(x: &[f64], r: f64) -> Vec<f64> {
    let n = norm(x);
    x.iter().map(|c| c * r / n).collect()
}

/// Angle in [0, π] between two nonzero plane vectors.
pub fn angle_between(a: [f64; 2], b: [f64; 2]) -> f64 {
    let cross = a[0] * b[1] - a[1] * b[0];
    let dotp = a[0] * b[0] + a[1] * b[1];
    cross.abs().atan2(dotp)
}

/// Euclidean distance.
pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Sorts points lexicographically and merges those closer than `radius`,
/// keeping the representative with the smaller residual.
pub(crate) fn dedup_points<T>(
    mut items: Vec<(Vec<f64>, f64, T)>,
    radius: f64,
) -> Vec<(Vec<f64>, f64, T)> {
    items.sort_by(|a, b| {
        a.0.iter()
            .zip(&b.0)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.1.total_cmp(&b.1))
    });
    let mut kept: Vec<(Vec<f64>, f64, T)> = Vec::new();
    for item in items {
        match kept.iter_mut().find(|k| distance(&k.0, &item.0) <= radius) {
            Some(k) => {
                if item.1 < k.1 {
                    *k = item;
                }
            }
            None => kept.push(item),
        }
    }
    kept
}
