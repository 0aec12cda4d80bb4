//! Real Milnor fibrations of polynomial map germs f = (P, Q): ℝᵐ → ℝ².
//!
//! The crate certifies quasi-homogeneity and the Euler identities exactly
//! over ℚ, locates critical points of the sphere projection f/‖f‖ through
//! the criterion ω(x) ∥ x with ω = P∇Q − Q∇P, and realizes the Euler-flow
//! diffeomorphism between the Milnor tube fibration and the sphere fibration.
//!
//! ```
//! use milnor_core::{catalog, fields, weights};
//!
//! let germ = catalog::complex_square();
//! let verdict = weights::infer_weights(&germ, true).unwrap();
//! let ws = verdict.weights().unwrap();
//! assert!(fields::omega_euler_residual(&germ, ws).unwrap().holds);
//! ```

pub mod algebra;
pub mod catalog;
pub mod critical;
pub mod error;
pub mod fields;
pub mod flow;
pub mod numeric;
pub mod sampling;
mod solver;
pub mod weights;

pub use algebra::{fg_bar_pair, MapGerm, PolyVectorField, Polynomial, Rational};
pub use error::{Error, Result};
pub use weights::WeightSystem;
