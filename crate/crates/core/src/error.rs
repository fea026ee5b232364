/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
    #[error("matrix is not positive definite (min eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },
    #[error("internal error: {0}")]
    InternalError(&'static str),
    #[error("zero set is empty")]
    EmptyZeroSet,
    #[error("solution dimension changed from {coarse} to {fine} when the phase grid was refined")]
    UnstableDimension { coarse: usize, fine: usize },
    #[error("objective has an imaginary part (Frobenius norm {imag_norm:e}); real symmetric restriction is invalid")]
    ComplexObjective { imag_norm: f64 },
    #[error("line search could not keep all constraint blocks positive definite")]
    NumericalFailure,
    #[error("iteration limit reached")]
    MaxIterations,
}

pub type Result<T> = core::result::Result<T, Error>;
