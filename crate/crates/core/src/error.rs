use thiserror::Error;

pub type Result<T> = std::result::Result<T, LgiError>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum LgiError {
    #[error("real part of the quadratic form is not positive definite (pivot {pivot})")]
    NotPositiveDefinite { pivot: usize },

    #[error("quadratic form is singular (|det| = {det_abs:e})")]
    SingularForm { det_abs: f64 },

    #[error("quadratic form matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("no convergence in {what}: achieved error estimate {estimate:e}")]
    NoConvergence { what: &'static str, estimate: f64 },

    #[error("coherent-projector formula called with squeeze parameter r = {r}")]
    InvalidProjector { r: f64 },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("Fock truncation N = {dim} too small for {what} = {value}")]
    Truncation {
        dim: usize,
        what: &'static str,
        value: f64,
    },

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error("at grid index (ix = {ix}, iy = {iy}): {source}")]
    AtGridPoint {
        ix: usize,
        iy: usize,
        #[source]
        source: Box<LgiError>,
    },
}

impl LgiError {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        LgiError::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub(crate) fn ensure_finite(value: f64, name: &'static str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(LgiError::invalid(name, format!("must be finite, got {value}")))
    }
}
