use std::io;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("insufficient zero data: cutoff {cutoff} exceeds last ordinate {last}")]
    OutOfData { cutoff: f64, last: f64 },

    #[error("format error at line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("parse error at line {line}: cannot read {token:?} as a number")]
    Parse { line: usize, token: String },

    #[error("quadrature did not converge: {0}")]
    NumericFailure(QuadratureDiagnostics),

    #[error("sieve cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

/// What the adaptive integrator saw when it gave up.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureDiagnostics {
    pub estimate: f64,
    pub error_estimate: f64,
    pub tolerance: f64,
    pub subdivisions: usize,
}

impl std::fmt::Display for QuadratureDiagnostics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "estimate {:e}, error estimate {:e} > tolerance {:e} after {} subdivisions",
            self.estimate, self.error_estimate, self.tolerance, self.subdivisions
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
