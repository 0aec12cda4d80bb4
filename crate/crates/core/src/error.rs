use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The point sits on (or numerically on) the zero set V = f⁻¹(0).
    #[error("point lies on the zero set of the germ (|f| = {norm:e})")]
    OnVariety { norm: f64 },

    #[error("all {samples} samples fell within {tolerance:e} (relative) of the zero set")]
    DegenerateSample { samples: usize, tolerance: f64 },

    #[error("no fiber point converged after {starts} starts")]
    EmptyFiber { starts: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
