use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty system: mode count must be at least 1")]
    EmptySystem,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    #[error("matrix is not symmetric (defect {defect:.3e})")]
    NotSymmetric { defect: f64 },

    #[error("parameter {name} = {value} outside domain {domain}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("parameter {name} is not finite")]
    NonFinite { name: &'static str },

    #[error("channel violates the complete-positivity condition")]
    NotCpt,

    #[error("matrix is not symplectic (defect {defect:.3e})")]
    NotSymplectic { defect: f64 },

    #[error("channel is not diagonal")]
    NotDiagonal,

    #[error("invalid covariance matrix: {0}")]
    InvalidCovariance(&'static str),

    #[error("mode index {0} out of range")]
    InvalidMode(usize),

    #[error("bisection bracket invalid: predicate agrees at both endpoints")]
    BisectionBracket,

    #[error("matrix is singular")]
    Singular,

    #[error("eigensolver failed to converge")]
    NoConvergence,
}
