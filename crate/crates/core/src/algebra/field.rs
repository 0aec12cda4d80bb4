use std::ops::Index;

use super::{FloatPolynomial, Polynomial, Rational};
use crate::error::{check_dims, Error, Result};

/// A vector of polynomials in a common set of variables, e.g. ∇P or ω.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyVectorField {
    components: Vec<Polynomial>,
}

impl PolyVectorField {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::Precondition(
                "a vector field needs at least one component".into(),
            ));
        };
        let m = first.num_vars();
        for c in &components {
            check_dims(m, c.num_vars())?;
        }
        Ok(PolyVectorField { components })
    }

    pub(crate) fn from_components_unchecked(components: Vec<Polynomial>) -> Self {
        debug_assert!(components
            .windows(2)
            .all(|w| w[0].num_vars() == w[1].num_vars()));
        PolyVectorField { components }
    }

    /// The zero field with `len` components in `num_vars` variables.
    pub fn zero(len: usize, num_vars: usize) -> Self {
        PolyVectorField {
            components: vec![Polynomial::zero(num_vars); len],
        }
    }

    /// The position field x ↦ (x₁, …, x_m).
    pub fn position(num_vars: usize) -> Self {
        PolyVectorField {
            components: (0..num_vars).map(|i| Polynomial::var(i, num_vars)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn num_vars(&self) -> usize {
        self.components.first().map_or(0, Polynomial::num_vars)
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// Exact inner product Σ uᵢ·vᵢ.
    pub fn dot(&self, other: &PolyVectorField) -> Result<Polynomial> {
        check_dims(self.len(), other.len())?;
        check_dims(self.num_vars(), other.num_vars())?;
        let mut acc = Polynomial::zero(self.num_vars());
        for (u, v) in self.components.iter().zip(&other.components) {
            acc = acc.checked_add(&u.checked_mul(v)?)?;
        }
        Ok(acc)
    }

    pub fn checked_add(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        self.zip_with(other, Polynomial::checked_add)
    }

    pub fn checked_sub(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        self.zip_with(other, Polynomial::checked_sub)
    }

    fn zip_with(
        &self,
        other: &PolyVectorField,
        op: impl Fn(&Polynomial, &Polynomial) -> Result<Polynomial>,
    ) -> Result<PolyVectorField> {
        check_dims(self.len(), other.len())?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| op(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyVectorField { components })
    }

    /// Multiplies every component by the polynomial `p`.
    pub fn mul_poly(&self, p: &Polynomial) -> Result<PolyVectorField> {
        let components = self
            .components
            .iter()
            .map(|c| c.checked_mul(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyVectorField { components })
    }

    pub fn scale(&self, c: &Rational) -> PolyVectorField {
        PolyVectorField {
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn eval(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.components.iter().map(|p| p.eval(x)).collect()
    }

    pub fn to_float(&self) -> Vec<FloatPolynomial> {
        self.components.iter().map(Polynomial::to_float).collect()
    }
}

impl Index<usize> for PolyVectorField {
    type Output = Polynomial;

    fn index(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{integer, Polynomial};

    #[test]
    fn dot_of_position_is_squared_norm() {
        let x = PolyVectorField::position(2);
        let n = x.dot(&x).unwrap();
        let expected = &Polynomial::var(0, 2).pow(2) + &Polynomial::var(1, 2).pow(2);
        assert_eq!(n, expected);
    }

    #[test]
    fn dot_with_rotated_position() {
        // ⟨(1, 0), (−y, x)⟩ = −y
        let grad = PolyVectorField::new(vec![Polynomial::one(2), Polynomial::zero(2)]).unwrap();
        let rot = PolyVectorField::new(vec![-Polynomial::var(1, 2), Polynomial::var(0, 2)]).unwrap();
        assert_eq!(grad.dot(&rot).unwrap(), -Polynomial::var(1, 2));
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = PolyVectorField::position(2);
        let b = PolyVectorField::position(3);
        assert!(a.dot(&b).is_err());
        assert!(PolyVectorField::new(vec![Polynomial::zero(2), Polynomial::zero(3)]).is_err());
        assert!(PolyVectorField::new(vec![]).is_err());
    }

    #[test]
    fn scale_and_eval() {
        let f = PolyVectorField::position(2).scale(&integer(3));
        assert_eq!(f.eval(&[1.0, -2.0]).unwrap(), vec![3.0, -6.0]);
    }
}
