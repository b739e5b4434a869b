use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("dimension mismatch: {left} has length {left_len}, {right} has length {right_len}")]
    DimensionMismatch {
        left: &'static str,
        left_len: usize,
        right: &'static str,
        right_len: usize,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("matrix is not positive definite (curvature {curvature:e} at iteration {iteration})")]
    NotPositiveDefinite { iteration: usize, curvature: f64 },

    #[error("matrix has a negative eigenvalue (Ritz value {ritz:e})")]
    NotPositiveSemidefinite { ritz: f64 },

    #[error("certificate failed: {0}")]
    CertificateFailed(String),

    #[error("series did not converge: {0}")]
    NonConvergence(String),

    #[error("insufficient precision: only {correct_bits:.1} correct bits at {precision} bits working precision")]
    PrecisionInsufficient { correct_bits: f64, precision: usize },

    #[error("dense oracle limited to n <= {cap}, got n = {n}")]
    OracleCapExceeded { n: usize, cap: usize },

    #[error("matrix is singular to working precision")]
    Singular,

    #[error("sweep vector is constant")]
    ConstantVector,

    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            reason: reason.into(),
        }
    }
}

pub(crate) fn check_len(left: &'static str, left_len: usize, right: &'static str, right_len: usize) -> Result<()> {
    if left_len != right_len {
        return Err(Error::DimensionMismatch {
            left,
            left_len,
            right,
            right_len,
        });
    }
    Ok(())
}
