use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole at {0}")]
    Pole(Complex64),
    #[error("invalid hypergeometric parameters: {0}")]
    InvalidSpec(String),
    #[error("{what} did not converge within {limit} iterations")]
    NonConvergence { what: &'static str, limit: usize },
    #[error("argument {0} lies on the branch cut")]
    BranchCut(Complex64),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("non-finite value encountered: {0}")]
    NonFinite(String),
    #[error("root finder failed: {0}")]
    RootFinding(String),
    #[error("zero count mismatch: winding number {winding}, zeros found {found}")]
    ZeroCount { winding: i64, found: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn finite(z: Complex64, what: &str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}
