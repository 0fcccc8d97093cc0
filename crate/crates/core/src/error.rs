use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("SVD did not converge after {sweeps} Jacobi sweeps")]
    NoConvergence { sweeps: usize },

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),

    #[error("frame sequence must contain at least one vector")]
    EmptySequence,

    #[error("ambient dimension must be positive")]
    ZeroDimension,

    #[error("span of the sequence is numerically zero")]
    DegenerateSpan,

    #[error("frame sequence is not tight (B/A - 1 = {excess:e})")]
    NotTight { excess: f64 },

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),

    #[error("{0}")]
    InvalidArgument(String),
}
