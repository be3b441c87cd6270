use thiserror::Error;

/// Errors raised by the linear-algebra kernels and solvers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: String,
        found: String,
    },
    #[error("matrix contains a non-finite entry")]
    NonFinite,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e} below floor {floor:e}")]
    NotPsd { min_eigenvalue: f64, floor: f64 },
    #[error("{0} decomposition failed to converge")]
    DecompositionFailed(&'static str),
    #[error("Schatten exponent p = {0} is outside the admitted range")]
    InvalidExponent(f64),
    #[error("existence condition violated: {0}")]
    ConditionViolated(String),
    #[error("problem too large for the dense oracle: {0}")]
    SizeGuard(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal consistency check failed: {0}")]
    InternalAssertion(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dims(rows: usize, cols: usize) -> String {
    format!("{rows}x{cols}")
}
