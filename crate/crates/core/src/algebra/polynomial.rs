use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::PolyVectorField;
use crate::error::{check_dims, Result};

/// Exact coefficient type. Always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back for ratios whose parts overflow f64 individually.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exponent vector of a monomial. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn var(index: usize, num_vars: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn product(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(x)
            .filter(|(e, _)| **e > 0)
            .map(|(e, xi)| xi.powi(*e as i32))
            .product()
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in canonical form: no zero coefficients, keyed by exponent
/// vector in lexicographic order. Two polynomials are equal iff their term
/// maps are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational, num_vars: usize) -> Self {
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(num_vars), c);
        }
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(Rational::one(), num_vars)
    }

    /// The coordinate function `x_index`.
    pub fn var(index: usize, num_vars: usize) -> Self {
        assert!(index < num_vars, "variable index {index} out of range");
        let mut p = Self::zero(num_vars);
        p.terms.insert(Monomial::var(index, num_vars), Rational::one());
        p
    }

    pub fn monomial(c: Rational, exponents: Vec<u32>) -> Self {
        let mut p = Self::zero(exponents.len());
        if !c.is_zero() {
            p.terms.insert(Monomial(exponents), c);
        }
        p
    }

    /// Builds a polynomial from raw terms, merging repeated monomials and
    /// dropping zero coefficients.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(num_vars);
        for (exps, c) in terms {
            check_dims(num_vars, exps.len())?;
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Exact zero test on the canonical term map.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Lowest total degree among the terms, `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).min()
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dims(self.num_vars, other.num_vars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dims(self.num_vars, other.num_vars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dims(self.num_vars, other.num_vars)?;
        let mut out = Self::zero(self.num_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.product(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        (0..k).fold(Self::one(self.num_vars), |acc, _| &acc * self)
    }

    /// Exact partial derivative with respect to variable `index`.
    pub fn derivative(&self, index: usize) -> Polynomial {
        assert!(index < self.num_vars, "variable index {index} out of range");
        let mut out = Self::zero(self.num_vars);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[index] -= 1;
            out.add_term(Monomial(exps), c * integer(e as i64));
        }
        out
    }

    pub fn gradient(&self) -> PolyVectorField {
        PolyVectorField::from_components_unchecked(
            (0..self.num_vars).map(|i| self.derivative(i)).collect(),
        )
    }

    /// Floating point evaluation, summing terms in ascending lexicographic order.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        check_dims(self.num_vars, x.len())?;
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| rational_to_f64(c) * m.eval(x))
            .sum())
    }

    /// Σ |c|·r^deg over the terms: an upper bound for |p| on the closed ball of radius `r`.
    pub fn magnitude_at_radius(&self, r: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| rational_to_f64(c).abs() * r.powi(m.total_degree() as i32))
            .sum()
    }

    /// Lowers the coefficients to `f64` for repeated numeric evaluation.
    pub fn to_float(&self) -> FloatPolynomial {
        FloatPolynomial {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (rational_to_f64(c), m.0.clone()))
                .collect(),
        }
    }

    /// Renders the polynomial with the given variable names, highest terms first.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, names }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial variable counts differ")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial variable counts differ")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial variable counts differ")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Polynomial with `f64` coefficients, for hot numeric loops.
#[derive(Clone, Debug)]
pub struct FloatPolynomial {
    num_vars: usize,
    terms: Vec<(f64, Vec<u32>)>,
}

impl FloatPolynomial {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.num_vars);
        self.terms
            .iter()
            .map(|(c, e)| {
                c * e
                    .iter()
                    .zip(x)
                    .filter(|(k, _)| **k > 0)
                    .map(|(k, xi)| xi.powi(*k as i32))
                    .product::<f64>()
            })
            .sum()
    }
}

struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| {
                    let name = self
                        .names
                        .get(i)
                        .cloned()
                        .unwrap_or_else(|| format!("x{}", i + 1));
                    if *e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else if abs.is_integer() {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            } else {
                write!(f, "({})*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}
