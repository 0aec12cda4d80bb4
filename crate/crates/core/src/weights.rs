//! Quasi-homogeneous weight systems: inference, verification and the Euler
//! vector field.
//!
//! A polynomial is quasi-homogeneous of type (w₁,…,w_m; b) when every exponent
//! vector a of its support satisfies ⟨w, a⟩ = b, which is the same as
//! p(λ^{w₁}x₁,…,λ^{w_m}x_m) = λᵇ p(x) for all λ > 0.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{integer, rational_to_f64, MapGerm, Monomial, PolyVectorField, Polynomial, Rational};
use crate::error::{check_dims, Error, Result};

/// Which component of f = (P, Q) a degree refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Component {
    P,
    Q,
}

/// Positive weights (w₁,…,w_m) with the weighted degrees b₁ of P and b₂ of Q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightSystem {
    weights: Vec<Rational>,
    degree_p: Rational,
    degree_q: Rational,
}

impl WeightSystem {
    pub fn new(weights: Vec<Rational>, degree_p: Rational, degree_q: Rational) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Precondition("a weight system needs at least one weight".into()));
        }
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !w.is_positive()) {
            return Err(Error::Precondition(format!(
                "weight w{} = {w} is not strictly positive",
                i + 1
            )));
        }
        if !degree_p.is_positive() || !degree_q.is_positive() {
            return Err(Error::Precondition(format!(
                "degrees must be strictly positive, got ({degree_p}, {degree_q})"
            )));
        }
        Ok(WeightSystem {
            weights,
            degree_p,
            degree_q,
        })
    }

    pub fn with_same_degree(weights: Vec<Rational>, degree: Rational) -> Result<Self> {
        Self::new(weights, degree.clone(), degree)
    }

    /// Convenience constructor from integer data.
    pub fn from_integers(weights: &[i64], degree_p: i64, degree_q: i64) -> Result<Self> {
        Self::new(
            weights.iter().map(|w| integer(*w)).collect(),
            integer(degree_p),
            integer(degree_q),
        )
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weights_f64(&self) -> Vec<f64> {
        self.weights.iter().map(rational_to_f64).collect()
    }

    pub fn num_vars(&self) -> usize {
        self.weights.len()
    }

    pub fn degree_p(&self) -> &Rational {
        &self.degree_p
    }

    pub fn degree_q(&self) -> &Rational {
        &self.degree_q
    }

    pub fn degree(&self, which: Component) -> &Rational {
        match which {
            Component::P => &self.degree_p,
            Component::Q => &self.degree_q,
        }
    }

    pub fn has_same_degree(&self) -> bool {
        self.degree_p == self.degree_q
    }

    /// Common degree b when b₁ = b₂.
    pub fn common_degree(&self) -> Option<&Rational> {
        self.has_same_degree().then_some(&self.degree_p)
    }

    /// Multiplies weights and degrees by a positive rational.
    pub fn scaled(&self, c: &Rational) -> Result<WeightSystem> {
        WeightSystem::new(
            self.weights.iter().map(|w| w * c).collect(),
            &self.degree_p * c,
            &self.degree_q * c,
        )
    }

    /// The unique positive multiple with integer entries whose overall gcd is 1.
    pub fn canonical(&self) -> WeightSystem {
        let mut all: Vec<Rational> = self.weights.clone();
        all.push(self.degree_p.clone());
        all.push(self.degree_q.clone());
        let prim = primitive_integer_vector(&all);
        let m = self.weights.len();
        WeightSystem {
            weights: prim[..m].iter().cloned().map(Rational::from_integer).collect(),
            degree_p: Rational::from_integer(prim[m].clone()),
            degree_q: Rational::from_integer(prim[m + 1].clone()),
        }
    }

    /// Weighted degree ⟨w, a⟩ of an exponent vector.
    pub fn weighted_degree(&self, monomial: &Monomial) -> Rational {
        self.weights
            .iter()
            .zip(monomial.exponents())
            .map(|(w, e)| w * integer(*e as i64))
            .fold(Rational::zero(), |acc, t| acc + t)
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "({}; {}, {})", ws.join(", "), self.degree_p, self.degree_q)
    }
}

/// Scales a vector of rationals to the primitive integer vector on the same ray.
fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = v.iter().map(|r| (r * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
    if gcd.is_zero() {
        return ints;
    }
    ints.into_iter().map(|n| n / &gcd).collect()
}

/// True iff every monomial of `p` has weighted degree equal to the degree of
/// the designated component. The zero polynomial verifies against any system.
pub fn verify_qh(p: &Polynomial, ws: &WeightSystem, which: Component) -> Result<bool> {
    is_weighted_homogeneous(p, ws.weights(), ws.degree(which))
}

pub fn is_weighted_homogeneous(p: &Polynomial, weights: &[Rational], degree: &Rational) -> Result<bool> {
    check_dims(p.num_vars(), weights.len())?;
    Ok(p.terms().all(|(m, _)| {
        let d = weights
            .iter()
            .zip(m.exponents())
            .map(|(w, e)| w * integer(*e as i64))
            .fold(Rational::zero(), |acc, t| acc + t);
        &d == degree
    }))
}

/// e(x) = (w₁x₁, …, w_m x_m).
pub fn euler_field(ws: &WeightSystem) -> PolyVectorField {
    let m = ws.num_vars();
    PolyVectorField::new(
        ws.weights()
            .iter()
            .enumerate()
            .map(|(i, w)| Polynomial::var(i, m).scale(w))
            .collect(),
    )
    .expect("weight systems are non-empty")
}

/// ⟨∇p, e⟩ − b·p, computed exactly. It is the zero polynomial iff p is
/// quasi-homogeneous of degree b for the weights of `ws`.
pub fn euler_residual(p: &Polynomial, ws: &WeightSystem, b: &Rational) -> Result<Polynomial> {
    check_dims(p.num_vars(), ws.num_vars())?;
    let lhs = p.gradient().dot(&euler_field(ws))?;
    lhs.checked_sub(&p.scale(b))
}

/// All exponent vectors a ∈ ℕᵐ with ⟨w, a⟩ = degree, in lexicographic order.
pub fn monomials_of_weighted_degree(weights: &[u32], degree: u32) -> Vec<Vec<u32>> {
    fn rec(weights: &[u32], remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let i = prefix.len();
        if i == weights.len() {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let w = weights[i].max(1);
        for e in 0..=remaining / w {
            prefix.push(e);
            rec(weights, remaining - e * w, prefix, out);
            prefix.pop();
        }
    }
    assert!(weights.iter().all(|w| *w > 0), "weights must be positive");
    let mut out = Vec::new();
    rec(weights, degree, &mut Vec::with_capacity(weights.len()), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QhStatus {
    QuasiHomogeneous {
        /// Canonical integer representative.
        weights: WeightSystem,
        /// Dimension of the solution space of the weight equations
        /// (unknowns: weights and degrees). Values above 1 mean the
        /// representative was selected among many.
        solution_dimension: usize,
    },
    NotQuasiHomogeneous {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QhVerdict {
    pub status: QhStatus,
    /// Whether the returned weights have b₁ = b₂ (false when rejected).
    pub same_degree: bool,
}

impl QhVerdict {
    pub fn weights(&self) -> Option<&WeightSystem> {
        match &self.status {
            QhStatus::QuasiHomogeneous { weights, .. } => Some(weights),
            QhStatus::NotQuasiHomogeneous { .. } => None,
        }
    }

    pub fn is_quasi_homogeneous(&self) -> bool {
        self.weights().is_some()
    }

    /// True when the weight equations admit more than one ray of solutions.
    pub fn is_multiple(&self) -> bool {
        matches!(
            self.status,
            QhStatus::QuasiHomogeneous { solution_dimension, .. } if solution_dimension > 1
        )
    }
}

/// Solves the weight equations ⟨w, a⟩ = b₁ (a ∈ supp P), ⟨w, c⟩ = b₂
/// (c ∈ supp Q) exactly and returns a strictly positive solution when one
/// exists.
///
/// When the solutions form a single ray, the canonical integer point on it is
/// returned. Otherwise the representative is the lexicographically smallest
/// positive integer solution ordered by (b, w₁, …, w_m), or by
/// (b₁ + b₂, b₁, w₁, …, w_m) when the degrees may differ.
pub fn infer_weights(germ: &MapGerm, require_same_degree: bool) -> Result<QhVerdict> {
    if germ.p().is_zero() || germ.q().is_zero() {
        return Err(Error::Precondition(
            "weight inference needs nonzero P and Q".into(),
        ));
    }
    let m = germ.num_vars();
    let system = WeightEquations::new(germ, require_same_degree);
    let basis = nullspace(&system.rows, system.num_unknowns);

    let reject = |reason: String| {
        Ok(QhVerdict {
            status: QhStatus::NotQuasiHomogeneous { reason },
            same_degree: false,
        })
    };

    let forced: Vec<usize> = (0..system.num_unknowns)
        .filter(|&i| basis.iter().all(|v| v[i].is_zero()))
        .collect();
    if let Some(&i) = forced.first() {
        let names: Vec<String> = forced.iter().map(|&j| system.unknown_name(j, germ)).collect();
        let lead = if basis.is_empty() {
            "the weight equations admit only the zero solution".to_string()
        } else {
            "the weight equations force a zero unknown".to_string()
        };
        return reject(format!(
            "{lead}: {} = 0 (forced zero: {})",
            system.unknown_name(i, germ),
            names.join(", ")
        ));
    }

    let Some(witness) = positive_point(&basis) else {
        return reject("the weight equations have no strictly positive solution".into());
    };

    let solution = if basis.len() == 1 {
        witness
    } else {
        system
            .least_integer_solution(&witness)
            .expect("search is bounded by a known positive solution")
    };

    let weights = WeightSystem::new(
        solution[..m].iter().cloned().map(Rational::from_integer).collect(),
        Rational::from_integer(solution[m].clone()),
        Rational::from_integer(solution[system.num_unknowns - 1].clone()),
    )?;
    let same_degree = weights.has_same_degree();
    Ok(QhVerdict {
        status: QhStatus::QuasiHomogeneous {
            weights,
            solution_dimension: basis.len(),
        },
        same_degree,
    })
}

/// Unknowns are (w₁,…,w_m, b) or (w₁,…,w_m, b₁, b₂).
struct WeightEquations {
    rows: Vec<Vec<Rational>>,
    num_vars: usize,
    num_unknowns: usize,
    same_degree: bool,
    /// Exponent vectors of P and Q, used by the integer search.
    support_p: Vec<Vec<u32>>,
    support_q: Vec<Vec<u32>>,
}

impl WeightEquations {
    fn new(germ: &MapGerm, same_degree: bool) -> Self {
        let m = germ.num_vars();
        let num_unknowns = if same_degree { m + 1 } else { m + 2 };
        let support = |p: &Polynomial| -> Vec<Vec<u32>> {
            p.terms().map(|(mono, _)| mono.exponents().to_vec()).collect()
        };
        let support_p = support(germ.p());
        let support_q = support(germ.q());
        let mut rows = Vec::new();
        for (exps, degree_col) in support_p
            .iter()
            .map(|e| (e, m))
            .chain(support_q.iter().map(|e| (e, num_unknowns - 1)))
        {
            let mut row: Vec<Rational> = exps.iter().map(|e| integer(*e as i64)).collect();
            row.resize(num_unknowns, Rational::zero());
            row[degree_col] = -Rational::one();
            rows.push(row);
        }
        WeightEquations {
            rows,
            num_vars: m,
            num_unknowns,
            same_degree,
            support_p,
            support_q,
        }
    }

    fn unknown_name(&self, i: usize, germ: &MapGerm) -> String {
        if i < self.num_vars {
            format!("w{} ({})", i + 1, germ.variables()[i])
        } else if self.same_degree {
            "b".into()
        } else if i == self.num_vars {
            "b1 (degree of P)".into()
        } else {
            "b2 (degree of Q)".into()
        }
    }

    /// Lexicographically least positive integer solution, ordered by degree
    /// first. `witness` is a known positive integer solution bounding the search.
    fn least_integer_solution(&self, witness: &[BigInt]) -> Option<Vec<BigInt>> {
        let to_u64 = |n: &BigInt| -> u64 { u64::try_from(n).expect("positive witness fits in u64") };
        let m = self.num_vars;
        if self.same_degree {
            let bound = to_u64(&witness[m]);
            (1..=bound).find_map(|b| {
                self.least_weights(b, b).map(|w| {
                    let mut sol: Vec<BigInt> = w.into_iter().map(BigInt::from).collect();
                    sol.push(BigInt::from(b));
                    sol
                })
            })
        } else {
            let bound = to_u64(&witness[m]) + to_u64(&witness[m + 1]);
            (2..=bound).find_map(|total| {
                (1..total).find_map(|b1| {
                    let b2 = total - b1;
                    self.least_weights(b1, b2).map(|w| {
                        let mut sol: Vec<BigInt> = w.into_iter().map(BigInt::from).collect();
                        sol.push(BigInt::from(b1));
                        sol.push(BigInt::from(b2));
                        sol
                    })
                })
            })
        }
    }

    /// Depth-first search in lexicographic order for positive integer weights
    /// meeting every monomial equation exactly.
    fn least_weights(&self, b1: u64, b2: u64) -> Option<Vec<u64>> {
        let rows: Vec<(&[u32], u64)> = self
            .support_p
            .iter()
            .map(|e| (e.as_slice(), b1))
            .chain(self.support_q.iter().map(|e| (e.as_slice(), b2)))
            .collect();
        let m = self.num_vars;
        // Largest admissible value per weight; unconstrained weights are pinned to 1.
        let upper: Vec<u64> = (0..m)
            .map(|i| {
                rows.iter()
                    .filter(|(e, _)| e[i] > 0)
                    .map(|(e, rhs)| rhs / e[i] as u64)
                    .min()
                    .unwrap_or(1)
            })
            .collect();

        fn dfs(
            i: usize,
            rows: &[(&[u32], u64)],
            upper: &[u64],
            partial: &mut Vec<u64>,
            sums: &mut Vec<u64>,
        ) -> bool {
            let m = upper.len();
            if i == m {
                return rows.iter().zip(sums.iter()).all(|((_, rhs), s)| s == rhs);
            }
            for w in 1..=upper[i] {
                let mut ok = true;
                for (k, (e, rhs)) in rows.iter().enumerate() {
                    // Remaining unknowns contribute at least their exponent each.
                    let rest: u64 = e[i + 1..].iter().map(|x| *x as u64).sum();
                    if sums[k] + e[i] as u64 * w + rest > *rhs {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    // Larger w only increases the partial sums.
                    break;
                }
                for (k, (e, _)) in rows.iter().enumerate() {
                    sums[k] += e[i] as u64 * w;
                }
                partial.push(w);
                if dfs(i + 1, rows, upper, partial, sums) {
                    return true;
                }
                partial.pop();
                for (k, (e, _)) in rows.iter().enumerate() {
                    sums[k] -= e[i] as u64 * w;
                }
            }
            false
        }

        let mut partial = Vec::with_capacity(m);
        let mut sums = vec![0u64; rows.len()];
        dfs(0, &rows, &upper, &mut partial, &mut sums).then_some(partial)
    }
}

/// Basis of the right nullspace of `rows` (each of length `n`) via exact
/// reduced row echelon form.
fn nullspace(rows: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in 0..n {
                    let delta = &factor * &a[r][j];
                    a[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Finds t with Σ tⱼ·basisⱼ ≥ 1 componentwise by Fourier–Motzkin elimination
/// and returns the resulting point as a primitive integer vector.
fn positive_point(basis: &[Vec<Rational>]) -> Option<Vec<BigInt>> {
    let k = basis.len();
    if k == 0 {
        return None;
    }
    let n = basis[0].len();
    // Inequalities coeffs·t ≥ rhs.
    type Ineq = (Vec<Rational>, Rational);
    let mut stages: Vec<Vec<Ineq>> = Vec::with_capacity(k + 1);
    let initial: Vec<Ineq> = (0..n)
        .map(|i| (basis.iter().map(|v| v[i].clone()).collect(), Rational::one()))
        .collect();
    stages.push(initial);
    for var in (0..k).rev() {
        let current = stages.last().unwrap();
        let (mut next, mut lower, mut upper) = (Vec::new(), Vec::new(), Vec::new());
        for ineq in current {
            if ineq.0[var].is_positive() {
                lower.push(ineq);
            } else if ineq.0[var].is_negative() {
                upper.push(ineq);
            } else {
                next.push(ineq.clone());
            }
        }
        for lo in &lower {
            for up in &upper {
                let a = lo.0[var].clone();
                let b = -up.0[var].clone();
                let coeffs: Vec<Rational> = lo.0.iter().zip(&up.0).map(|(x, y)| x * &b + y * &a).collect();
                let rhs = &lo.1 * &b + &up.1 * &a;
                let ineq = (coeffs, rhs);
                if !next.contains(&ineq) {
                    next.push(ineq);
                }
            }
        }
        stages.push(next);
    }
    if stages[k].iter().any(|(_, rhs)| rhs.is_positive()) {
        return None;
    }
    // Back-substitution: stage k - j constrains t_0..=t_{j}.
    let mut t = vec![Rational::zero(); k];
    for j in 0..k {
        let system = &stages[k - 1 - j];
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for (coeffs, rhs) in system {
            let c = &coeffs[j];
            if c.is_zero() {
                continue;
            }
            let rest = (0..j).fold(rhs.clone(), |acc, i| acc - &coeffs[i] * &t[i]);
            let bound = rest / c;
            if c.is_positive() {
                lo = Some(lo.map_or(bound.clone(), |l| if bound > l { bound.clone() } else { l }));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h| if bound < h { bound.clone() } else { h }));
            }
        }
        t[j] = lo.or(hi).unwrap_or_else(Rational::zero);
    }
    let point: Vec<Rational> = (0..n)
        .map(|i| {
            basis
                .iter()
                .zip(&t)
                .fold(Rational::zero(), |acc, (v, tj)| acc + &v[i] * tj)
        })
        .collect();
    debug_assert!(point.iter().all(|v| v.is_positive()));
    Some(primitive_integer_vector(&point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;
    use crate::catalog;

    fn weights_of(v: &QhVerdict) -> WeightSystem {
        v.weights().cloned().expect("quasi-homogeneous")
    }

    #[test]
    fn infers_weights_of_reference_germs() {
        let a = infer_weights(&catalog::complex_square(), true).unwrap();
        assert_eq!(weights_of(&a), WeightSystem::from_integers(&[1, 1], 2, 2).unwrap());
        assert!(a.same_degree && !a.is_multiple());

        let b = infer_weights(&catalog::weighted_quartic(), true).unwrap();
        assert_eq!(weights_of(&b), WeightSystem::from_integers(&[2, 1], 4, 4).unwrap());

        let d = infer_weights(&catalog::hopf_pair(), true).unwrap();
        assert_eq!(weights_of(&d), WeightSystem::from_integers(&[1, 1, 1, 1], 2, 2).unwrap());
    }

    #[test]
    fn rejects_polar_curve_germ_with_forced_zero_weight() {
        for same in [true, false] {
            let v = infer_weights(&catalog::polar_curve_germ(), same).unwrap();
            match v.status {
                QhStatus::NotQuasiHomogeneous { reason } => {
                    assert!(reason.contains("w1 (x) = 0"), "{reason}");
                }
                other => panic!("expected rejection, got {other:?}"),
            }
        }
    }

    #[test]
    fn distinct_degrees_when_allowed() {
        // (x, y^2): weights (2,1) with b1 = 2, b2 = 2 or (1,1) with (1,2) ...
        // The solution space is 2-dimensional; least (b1 + b2, b1, w) is (1,1;1,2).
        let x = Polynomial::var(0, 2);
        let y = Polynomial::var(1, 2);
        let germ = MapGerm::with_default_names(x, y.pow(2)).unwrap();
        let v = infer_weights(&germ, false).unwrap();
        assert_eq!(weights_of(&v), WeightSystem::from_integers(&[1, 1], 1, 2).unwrap());
        assert!(v.is_multiple());
        assert!(!v.same_degree);

        let v = infer_weights(&germ, true).unwrap();
        assert_eq!(weights_of(&v), WeightSystem::from_integers(&[2, 1], 2, 2).unwrap());
        assert!(!v.is_multiple());
    }

    #[test]
    fn underdetermined_system_picks_least_degree() {
        // P = Q = xy: any w1 + w2 = b works; least is (1,1; 2).
        let x = Polynomial::var(0, 2);
        let y = Polynomial::var(1, 2);
        let germ = MapGerm::with_default_names(&x * &y, &x * &y).unwrap();
        let v = infer_weights(&germ, true).unwrap();
        assert_eq!(weights_of(&v), WeightSystem::from_integers(&[1, 1], 2, 2).unwrap());
        assert!(v.is_multiple());

        // A variable that never appears gets weight 1.
        let x3 = Polynomial::var(0, 3);
        let y3 = Polynomial::var(1, 3);
        let germ = MapGerm::with_default_names(x3.pow(2), &x3 * &y3).unwrap();
        let v = infer_weights(&germ, true).unwrap();
        assert_eq!(weights_of(&v), WeightSystem::from_integers(&[1, 1, 1], 2, 2).unwrap());
    }

    #[test]
    fn mixed_sign_solution_is_rejected() {
        // x^2 = b, x^3 y = b forces 3w1 + w2 = 2w1, i.e. w2 = -w1.
        let x = Polynomial::var(0, 2);
        let y = Polynomial::var(1, 2);
        let germ = MapGerm::with_default_names(x.pow(2), &x.pow(3) * &y).unwrap();
        let v = infer_weights(&germ, true).unwrap();
        assert!(!v.is_quasi_homogeneous());
    }

    #[test]
    fn constant_term_forces_zero_degree() {
        let x = Polynomial::var(0, 2);
        let p = &x + &Polynomial::one(2);
        let germ = MapGerm::with_default_names(p, Polynomial::var(1, 2)).unwrap();
        assert!(!infer_weights(&germ, true).unwrap().is_quasi_homogeneous());
    }

    #[test]
    fn zero_component_is_a_precondition_error() {
        let germ = MapGerm::with_default_names(Polynomial::var(0, 2), Polynomial::zero(2)).unwrap();
        assert!(matches!(infer_weights(&germ, true), Err(Error::Precondition(_))));
    }

    #[test]
    fn verify_examples() {
        let p = catalog::complex_square().p().clone();
        let ws = WeightSystem::from_integers(&[1, 1], 2, 2).unwrap();
        assert!(verify_qh(&p, &ws, Component::P).unwrap());
        let ws = WeightSystem::from_integers(&[1, 2], 2, 2).unwrap();
        assert!(!verify_qh(&p, &ws, Component::P).unwrap());
        assert!(verify_qh(&Polynomial::zero(2), &ws, Component::Q).unwrap());
        assert!(verify_qh(&Polynomial::zero(3), &ws, Component::Q).is_err());
    }

    #[test]
    fn euler_field_components() {
        let ws = WeightSystem::from_integers(&[2, 1], 4, 4).unwrap();
        let e = euler_field(&ws);
        assert_eq!(e[0], Polynomial::var(0, 2).scale(&integer(2)));
        assert_eq!(e[1], Polynomial::var(1, 2));
        let id = euler_field(&WeightSystem::from_integers(&[1, 1, 1, 1], 2, 2).unwrap());
        assert_eq!(id, PolyVectorField::position(4));
    }

    #[test]
    fn euler_residual_examples() {
        let ws = WeightSystem::from_integers(&[1, 1], 2, 2).unwrap();
        let p = catalog::complex_square().p().clone();
        assert!(euler_residual(&p, &ws, &integer(2)).unwrap().is_zero());

        let x = Polynomial::var(0, 2);
        let y = Polynomial::var(1, 2);
        let r = euler_residual(&(&x.pow(2) + &y.pow(3)), &ws, &integer(2)).unwrap();
        assert_eq!(r, y.pow(3));

        assert!(euler_residual(&Polynomial::zero(2), &ws, &integer(2)).unwrap().is_zero());
    }

    #[test]
    fn canonical_form_is_integral_and_primitive() {
        let ws = WeightSystem::new(
            vec![rational(1, 2), rational(1, 4)],
            integer(1),
            integer(1),
        )
        .unwrap();
        assert_eq!(ws.canonical(), WeightSystem::from_integers(&[2, 1], 4, 4).unwrap());
        assert_eq!(ws.canonical().canonical(), ws.canonical());
        let scaled = ws.scaled(&rational(6, 5)).unwrap();
        assert_eq!(scaled.canonical(), ws.canonical());
    }

    #[test]
    fn non_positive_weights_are_rejected() {
        assert!(WeightSystem::from_integers(&[1, 0], 2, 2).is_err());
        assert!(WeightSystem::from_integers(&[1, 1], 0, 2).is_err());
        assert!(WeightSystem::from_integers(&[], 1, 1).is_err());
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(
            monomials_of_weighted_degree(&[2, 1], 4),
            vec![vec![0, 4], vec![1, 2], vec![2, 0]]
        );
        assert!(monomials_of_weighted_degree(&[2, 2], 3).is_empty());
    }
}
