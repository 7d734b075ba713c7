use thiserror::Error;

/// Errors raised by the exact-arithmetic core and the command layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed radicands: {0} and {1}")]
    MixedRadicand(String, String),
    #[error("invalid radicand {0}: must be a negative rational")]
    InvalidRadicand(String),
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("center {0} is incompatible with the curve's coefficient field")]
    CenterMismatch(String),
    #[error("zero quaternion polynomial")]
    ZeroInput,
    #[error("F(beta) = 0 at beta = {0}: all components of F vanish there")]
    LeadingCoefficientZero(String),
    #[error("no normalized curve starts at Laurent index {0}")]
    DegenerateIndex(i64),
    #[error("{0} is not a root of the denominator")]
    NotARoot(String),
    #[error("no certificate mu with a'b - ab' = mu F: {0}")]
    CertificateMissing(String),
    #[error("curve does not satisfy r' x F = 0; residual (a'b - ab') x F = {0}")]
    NotPHCurve(String),
    #[error("curve is not in the span of the supplied basis")]
    NotInSpan,
    #[error("supplied basis is linearly dependent")]
    RedundantBasis,
    #[error("series are not a conjugate pair: {0}")]
    NotConjugatePair(String),
    #[error("empty sampling range")]
    EmptyRange,
    #[error("unsupported denominator: {0}")]
    UnsupportedDenominator(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::NotPHCurve(_) | Error::CertificateMissing(_) => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
