use thiserror::Error;

/// Errors raised by the arithmetic and verification routines.
///
/// Domain errors describe a violated precondition on the caller's inputs.
/// `InexactDivision` and `Internal` indicate an arithmetic bug: every quotient
/// taken by this crate is provably integral.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero is undefined")]
    ValuationOfZero,

    #[error("theta is zero for q > n (q = {q}, n = {n}); valuation undefined")]
    ThetaZero { q: u64, n: u64 },

    #[error("precondition violated: {0}")]
    Domain(String),

    #[error("size guard exceeded: {0}; use the formula path")]
    GuardExceeded(String),

    #[error("matrix is not skew-symmetric: {0}")]
    NotSkew(String),

    #[error("inexact division in {0}")]
    InexactDivision(&'static str),

    #[error("result does not fit in 64 bits: {0}")]
    Overflow(&'static str),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
