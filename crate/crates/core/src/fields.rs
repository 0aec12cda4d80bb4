//! The vector fields ω = P∇Q − Q∇P and ∇‖f‖², exact certificates for the
//! identities that make the Euler field a valid Milnor vector field, and a
//! sampled rank check for Df.

use serde::Serialize;

use crate::algebra::{integer, MapGerm, PolyVectorField, Polynomial, Rational};
use crate::error::{check_dims, Error, Result};
use crate::numeric::singular_values;
use crate::sampling::{sample_rng, uniform_sphere};
use crate::weights::{euler_field, euler_residual, WeightSystem};

/// Default relative distance from V below which rank samples are discarded.
pub const OFF_VARIETY_TOLERANCE: f64 = 1e-8;

/// ω(x) = P(x)∇Q(x) − Q(x)∇P(x).
pub fn omega(germ: &MapGerm) -> PolyVectorField {
    let p_grad_q = germ.q().gradient().mul_poly(germ.p()).expect("same variables");
    let q_grad_p = germ.p().gradient().mul_poly(germ.q()).expect("same variables");
    p_grad_q.checked_sub(&q_grad_p).expect("same variables")
}

/// ∇‖f‖² = 2(P∇P + Q∇Q).
pub fn grad_norm_sq(germ: &MapGerm) -> PolyVectorField {
    let a = germ.p().gradient().mul_poly(germ.p()).expect("same variables");
    let b = germ.q().gradient().mul_poly(germ.q()).expect("same variables");
    a.checked_add(&b).expect("same variables").scale(&integer(2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityName {
    /// ⟨ω, e⟩ = 0.
    OmegaOrthogonalToEuler,
    /// ⟨∇‖f‖², e⟩ = 2b(P² + Q²).
    NormGrowthAlongEuler,
    /// ⟨∇P, e⟩ = b₁P.
    EulerIdentityP,
    /// ⟨∇Q, e⟩ = b₂Q.
    EulerIdentityQ,
}

/// An exact polynomial identity check: `holds` iff `residual` is the zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCertificate {
    pub name: IdentityName,
    pub residual: Polynomial,
    pub holds: bool,
}

impl IdentityCertificate {
    fn new(name: IdentityName, residual: Polynomial) -> Self {
        let holds = residual.is_zero();
        IdentityCertificate {
            name,
            residual,
            holds,
        }
    }
}

fn common_degree(ws: &WeightSystem) -> Result<&Rational> {
    ws.common_degree().ok_or_else(|| {
        Error::Precondition(format!(
            "P and Q must share one weighted degree, got b1 = {}, b2 = {}",
            ws.degree_p(),
            ws.degree_q()
        ))
    })
}

/// Residual ⟨ω, e⟩, which vanishes identically when P and Q are
/// quasi-homogeneous for `ws` with a common degree.
pub fn omega_euler_residual(germ: &MapGerm, ws: &WeightSystem) -> Result<IdentityCertificate> {
    check_dims(germ.num_vars(), ws.num_vars())?;
    common_degree(ws)?;
    let residual = omega(germ).dot(&euler_field(ws))?;
    Ok(IdentityCertificate::new(IdentityName::OmegaOrthogonalToEuler, residual))
}

/// Residual ⟨∇‖f‖², e⟩ − 2b(P² + Q²). When it vanishes, the Euler field
/// strictly increases ‖f‖² away from V, since P² + Q² > 0 there.
pub fn norm_growth_residual(germ: &MapGerm, ws: &WeightSystem) -> Result<IdentityCertificate> {
    check_dims(germ.num_vars(), ws.num_vars())?;
    let b = common_degree(ws)?;
    let lhs = grad_norm_sq(germ).dot(&euler_field(ws))?;
    let norm_sq = &(germ.p() * germ.p()) + &(germ.q() * germ.q());
    let residual = lhs.checked_sub(&norm_sq.scale(&(b * integer(2))))?;
    Ok(IdentityCertificate::new(IdentityName::NormGrowthAlongEuler, residual))
}

/// Euler identities for both components, each against its own degree.
pub fn euler_certificates(germ: &MapGerm, ws: &WeightSystem) -> Result<[IdentityCertificate; 2]> {
    check_dims(germ.num_vars(), ws.num_vars())?;
    Ok([
        IdentityCertificate::new(
            IdentityName::EulerIdentityP,
            euler_residual(germ.p(), ws, ws.degree_p())?,
        ),
        IdentityCertificate::new(
            IdentityName::EulerIdentityQ,
            euler_residual(germ.q(), ws, ws.degree_q())?,
        ),
    ])
}

/// All four certificates. Requires b₁ = b₂.
pub fn certify_all(germ: &MapGerm, ws: &WeightSystem) -> Result<Vec<IdentityCertificate>> {
    let [ep, eq] = euler_certificates(germ, ws)?;
    Ok(vec![
        omega_euler_residual(germ, ws)?,
        norm_growth_residual(germ, ws)?,
        ep,
        eq,
    ])
}

/// Sampled evidence (not proof) that Df has rank 2 on a sphere off V.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankSampleReport {
    pub epsilon: f64,
    /// Samples drawn.
    pub num_samples: usize,
    /// Samples discarded for lying within the tolerance of V.
    pub discarded: usize,
    /// Smallest singular value of Df over the kept samples.
    pub min_sigma: f64,
    pub worst_point: Vec<f64>,
    /// Relative to the magnitude bound of f at radius ε.
    pub off_variety_tolerance: f64,
}

pub fn df_min_singular_sample(
    germ: &MapGerm,
    epsilon: f64,
    n: usize,
    seed: u64,
) -> Result<RankSampleReport> {
    df_min_singular_sample_with(germ, epsilon, n, seed, OFF_VARIETY_TOLERANCE)
}

/// As [`df_min_singular_sample`] with an explicit off-variety tolerance.
pub fn df_min_singular_sample_with(
    germ: &MapGerm,
    epsilon: f64,
    n: usize,
    seed: u64,
    off_variety_tolerance: f64,
) -> Result<RankSampleReport> {
    if n == 0 {
        return Err(Error::Precondition("need at least one sample".into()));
    }
    if !(epsilon > 0.0) {
        return Err(Error::Precondition(format!("epsilon must be positive, got {epsilon}")));
    }
    let m = germ.num_vars();
    let num = germ.to_numeric();
    let cutoff = off_variety_tolerance * germ.magnitude_at_radius(epsilon);
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut discarded = 0;
    for i in 0..n {
        let x = uniform_sphere(&mut sample_rng(seed, i as u64), m, epsilon);
        if num.norm(&x) <= cutoff {
            discarded += 1;
            continue;
        }
        let [gp, gq] = num.jacobian(&x);
        let sigma = *singular_values(&[gp, gq]).last().expect("two rows");
        if best.as_ref().is_none_or(|(s, _)| sigma < *s) {
            best = Some((sigma, x));
        }
    }
    let Some((min_sigma, worst_point)) = best else {
        return Err(Error::DegenerateSample {
            samples: n,
            tolerance: off_variety_tolerance,
        });
    };
    Ok(RankSampleReport {
        epsilon,
        num_samples: n,
        discarded,
        min_sigma,
        worst_point,
        off_variety_tolerance,
    })
}
