use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("ring descriptor mismatch: {0} vs {1}")]
    DescriptorMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    UndefinedGcd,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("ring {0} is not Euclidean; use the diagonalizer instead")]
    NotEuclidean(String),
    #[error("a square matrix with nonzero determinant is required")]
    FullRankRequired,
    #[error("step budget exhausted: {0}")]
    Budget(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
