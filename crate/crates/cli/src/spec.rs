//! The germ-spec JSON format.
//!
//! ```json
//! {
//!   "variables": ["x", "y"],
//!   "P": [{"coefficient": "1", "exponents": [2, 0]}, {"coefficient": "-1", "exponents": [0, 2]}],
//!   "Q": [{"coefficient": "2", "exponents": [1, 1]}],
//!   "weights": ["1", "1"],
//!   "degrees": ["2", "2"]
//! }
//! ```
//!
//! Coefficients, weights and degrees are exact: strings of the form `"p/q"` or
//! `"n"`, or JSON integers. Floating literals are rejected. `weights` and
//! `degrees` are optional; declared weights must make P and Q
//! quasi-homogeneous or loading fails. Without `degrees` the degrees are read
//! off the first term of each component.

use std::fmt;
use std::str::FromStr;

use milnor_core::algebra::{Polynomial, Rational};
use milnor_core::weights::{verify_qh, Component, WeightSystem};
use milnor_core::MapGerm;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("malformed germ spec: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{component} term {index}: exponent vector has length {found}, expected {expected} (one per variable)")]
    ExponentLength {
        component: &'static str,
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("declared {found} weights for {expected} variables")]
    WeightCount { expected: usize, found: usize },

    #[error("declared weight w{index} = {value} is not strictly positive")]
    NonPositiveWeight { index: usize, value: String },

    #[error("declared degree {value} is not strictly positive")]
    NonPositiveDegree { value: String },

    #[error("degrees are declared without weights")]
    DegreesWithoutWeights,

    #[error("cannot read degrees off a germ with P = Q = 0; declare them explicitly")]
    UndeterminedDegrees,

    #[error("{component} is not quasi-homogeneous for the declared weight system {weights}")]
    NotQuasiHomogeneous { component: &'static str, weights: String },

    #[error("invalid germ: {0}")]
    Germ(#[from] milnor_core::Error),
}

/// An exact rational read from a string or JSON integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct ExactVisitor;

        impl Visitor<'_> for ExactVisitor {
            type Value = Exact;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an exact rational as a string \"p/q\" or \"n\", or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Exact, E> {
                Rational::from_str(v)
                    .map(Exact)
                    .map_err(|_| E::custom(format!("cannot parse {v:?} as an exact rational")))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Exact, E> {
                Ok(Exact(Rational::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Exact, E> {
                Ok(Exact(Rational::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Exact, E> {
                Err(E::custom(format!(
                    "floating literal {v} is not exact; write it as a string such as \"3/4\""
                )))
            }
        }

        d.deserialize_any(ExactVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coefficient: Exact,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermSpec {
    pub variables: Vec<String>,
    #[serde(rename = "P")]
    pub p: Vec<TermSpec>,
    #[serde(rename = "Q")]
    pub q: Vec<TermSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Exact>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<[Exact; 2]>,
}

/// A validated germ together with its declared weight system, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedGerm {
    pub germ: MapGerm,
    pub weights: Option<WeightSystem>,
}

pub fn parse_germ_spec(bytes: &[u8]) -> Result<GermSpec, SpecError> {
    Ok(serde_json::from_slice(bytes)?)
}

fn build_polynomial(component: &'static str, terms: &[TermSpec], m: usize) -> Result<Polynomial, SpecError> {
    for (index, t) in terms.iter().enumerate() {
        if t.exponents.len() != m {
            return Err(SpecError::ExponentLength {
                component,
                index,
                expected: m,
                found: t.exponents.len(),
            });
        }
    }
    Ok(Polynomial::from_terms(
        m,
        terms.iter().map(|t| (t.exponents.clone(), t.coefficient.0.clone())),
    )?)
}

/// Weighted degree of the lowest term of `p`, `None` for the zero polynomial.
pub(crate) fn leading_degree(p: &Polynomial, weights: &[Rational]) -> Option<Rational> {
    p.terms().next().map(|(mono, _)| {
        mono.exponents()
            .iter()
            .zip(weights)
            .map(|(&a, w)| w * Rational::from_integer(a.into()))
            .sum()
    })
}

fn declared_weights(spec: &GermSpec, germ: &MapGerm) -> Result<Option<WeightSystem>, SpecError> {
    let Some(weights) = &spec.weights else {
        return match spec.degrees {
            Some(_) => Err(SpecError::DegreesWithoutWeights),
            None => Ok(None),
        };
    };
    let m = germ.num_vars();
    if weights.len() != m {
        return Err(SpecError::WeightCount {
            expected: m,
            found: weights.len(),
        });
    }
    let zero = Rational::from_integer(0.into());
    let weights: Vec<Rational> = weights.iter().map(|w| w.0.clone()).collect();
    if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| **w <= zero) {
        return Err(SpecError::NonPositiveWeight {
            index: i + 1,
            value: w.to_string(),
        });
    }
    let (b1, b2) = match &spec.degrees {
        Some([b1, b2]) => (b1.0.clone(), b2.0.clone()),
        None => {
            let d1 = leading_degree(germ.p(), &weights);
            let d2 = leading_degree(germ.q(), &weights);
            match (d1, d2) {
                (Some(a), Some(b)) => (a, b),
                (Some(a), None) => (a.clone(), a),
                (None, Some(b)) => (b.clone(), b),
                (None, None) => return Err(SpecError::UndeterminedDegrees),
            }
        }
    };
    if let Some(b) = [&b1, &b2].into_iter().find(|b| **b <= zero) {
        return Err(SpecError::NonPositiveDegree { value: b.to_string() });
    }
    let ws = WeightSystem::new(weights, b1, b2)?;
    for (component, which, poly) in [("P", Component::P, germ.p()), ("Q", Component::Q, germ.q())] {
        if !verify_qh(poly, &ws, which)? {
            return Err(SpecError::NotQuasiHomogeneous {
                component,
                weights: ws.to_string(),
            });
        }
    }
    Ok(Some(ws))
}

impl GermSpec {
    pub fn load(&self) -> Result<LoadedGerm, SpecError> {
        let m = self.variables.len();
        let p = build_polynomial("P", &self.p, m)?;
        let q = build_polynomial("Q", &self.q, m)?;
        let germ = MapGerm::new(p, q, self.variables.clone())?;
        let weights = declared_weights(self, &germ)?;
        Ok(LoadedGerm { germ, weights })
    }

    /// The spec of a germ, terms in ascending lexicographic exponent order.
    pub fn from_germ(germ: &MapGerm, weights: Option<&WeightSystem>) -> GermSpec {
        let terms = |p: &Polynomial| {
            p.terms()
                .map(|(mono, c)| TermSpec {
                    coefficient: Exact(c.clone()),
                    exponents: mono.exponents().to_vec(),
                })
                .collect()
        };
        GermSpec {
            variables: germ.variables().to_vec(),
            p: terms(germ.p()),
            q: terms(germ.q()),
            weights: weights.map(|ws| ws.weights().iter().cloned().map(Exact).collect()),
            degrees: weights.map(|ws| [Exact(ws.degree_p().clone()), Exact(ws.degree_q().clone())]),
        }
    }
}

pub fn load_germ(bytes: &[u8]) -> Result<LoadedGerm, SpecError> {
    parse_germ_spec(bytes)?.load()
}
