use std::collections::HashSet;

use super::{FloatPolynomial, Polynomial};
use crate::error::{check_dims, Error, Result};

/// A real polynomial map germ f = (P, Q): ℝᵐ → ℝ², m ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapGerm {
    p: Polynomial,
    q: Polynomial,
    variables: Vec<String>,
}

impl MapGerm {
    pub fn new(p: Polynomial, q: Polynomial, variables: Vec<String>) -> Result<Self> {
        check_dims(p.num_vars(), q.num_vars())?;
        check_dims(p.num_vars(), variables.len())?;
        if variables.len() < 2 {
            return Err(Error::Precondition(format!(
                "a map germ needs at least 2 variables, got {}",
                variables.len()
            )));
        }
        let mut seen = HashSet::new();
        for v in &variables {
            if v.is_empty() || !seen.insert(v.as_str()) {
                return Err(Error::Precondition(format!(
                    "variable names must be non-empty and distinct (offending: {v:?})"
                )));
            }
        }
        Ok(MapGerm { p, q, variables })
    }

    /// Builds a germ with variables named `x1, …, xm`.
    pub fn with_default_names(p: Polynomial, q: Polynomial) -> Result<Self> {
        let names = (1..=p.num_vars()).map(|i| format!("x{i}")).collect();
        Self::new(p, q, names)
    }

    pub fn p(&self) -> &Polynomial {
        &self.p
    }

    pub fn q(&self) -> &Polynomial {
        &self.q
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    /// The germ with its components exchanged, (Q, P).
    pub fn swapped(&self) -> MapGerm {
        MapGerm {
            p: self.q.clone(),
            q: self.p.clone(),
            variables: self.variables.clone(),
        }
    }

    pub fn eval(&self, x: &[f64]) -> Result<[f64; 2]> {
        Ok([self.p.eval(x)?, self.q.eval(x)?])
    }

    /// Lowest total degree over the terms of P and Q.
    pub fn order(&self) -> Option<u32> {
        match (self.p.order(), self.q.order()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Upper bound for ‖f‖ on the ball of radius `r`; the natural scale for
    /// relative tolerances on f at that radius.
    pub fn magnitude_at_radius(&self, r: f64) -> f64 {
        self.p
            .magnitude_at_radius(r)
            .hypot(self.q.magnitude_at_radius(r))
    }

    pub fn to_numeric(&self) -> NumericGerm {
        let grad_p = self.p.gradient().to_float();
        let grad_q = self.q.gradient().to_float();
        NumericGerm {
            p: self.p.to_float(),
            q: self.q.to_float(),
            grad_p,
            grad_q,
        }
    }
}

/// Floating point evaluator for a germ and its first derivatives.
#[derive(Clone, Debug)]
pub struct NumericGerm {
    p: FloatPolynomial,
    q: FloatPolynomial,
    grad_p: Vec<FloatPolynomial>,
    grad_q: Vec<FloatPolynomial>,
}

impl NumericGerm {
    pub fn num_vars(&self) -> usize {
        self.grad_p.len()
    }

    pub fn value(&self, x: &[f64]) -> [f64; 2] {
        [self.p.eval(x), self.q.eval(x)]
    }

    pub fn norm(&self, x: &[f64]) -> f64 {
        let [p, q] = self.value(x);
        p.hypot(q)
    }

    /// Rows ∇P(x) and ∇Q(x).
    pub fn jacobian(&self, x: &[f64]) -> [Vec<f64>; 2] {
        [
            self.grad_p.iter().map(|g| g.eval(x)).collect(),
            self.grad_q.iter().map(|g| g.eval(x)).collect(),
        ]
    }

    /// ω(x) = P∇Q − Q∇P.
    pub fn omega(&self, x: &[f64]) -> Vec<f64> {
        let [p, q] = self.value(x);
        let [gp, gq] = self.jacobian(x);
        gp.iter().zip(&gq).map(|(a, b)| p * b - q * a).collect()
    }
}

/// The real pair (Re h, Im h) of h = f·conj(g) for holomorphic f, g given by
/// their real and imaginary parts.
pub fn fg_bar_pair(
    f_re: &Polynomial,
    f_im: &Polynomial,
    g_re: &Polynomial,
    g_im: &Polynomial,
) -> Result<MapGerm> {
    let m = f_re.num_vars();
    for p in [f_im, g_re, g_im] {
        check_dims(m, p.num_vars())?;
    }
    let re = &(f_re * g_re) + &(f_im * g_im);
    let im = &(f_im * g_re) - &(f_re * g_im);
    MapGerm::with_default_names(re, im)
}
