//! Exact multivariate polynomial arithmetic over ℚ and the map germs built on it.

mod field;
mod germ;
mod polynomial;

pub use field::PolyVectorField;
pub use germ::{fg_bar_pair, MapGerm, NumericGerm};
pub use polynomial::{integer, rational, FloatPolynomial, Monomial, Polynomial, Rational};

pub(crate) use polynomial::rational_to_f64;
