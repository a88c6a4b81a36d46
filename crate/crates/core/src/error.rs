use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by an element that is zero to precision")]
    DivisionByZeroPrecision,
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("logarithm needs v(x - 1) >= 1")]
    OutsideLogDomain,
    #[error("exponential needs v(x) >= 1")]
    OutsideExpDomain,
    #[error("level mismatch: cannot go from level {from} to level {to}")]
    LevelError { from: u32, to: u32 },
    #[error("truncation too short: certified precision would be {0}")]
    InsufficientTruncation(i64),
    #[error("element is not integral")]
    NotIntegral,
    #[error("no admissible N: conductor exponent {m} with m_delta {m_delta}")]
    NoAdmissibleN { m: u32, m_delta: u32 },
    #[error("certificate is not admissible")]
    NotAdmissible,
    #[error("input series does not satisfy psi = 0 to precision")]
    NotPsiZero,
    #[error("component {0} is not a psi-eigenvector to precision")]
    EigenCondition(usize),
    #[error("Frobenius eigenvalue is zero to precision")]
    InvalidEigenvalue,
    #[error("epsilon input is zero to precision")]
    InvalidEpsilon,
    #[error("Mahler coefficients did not decay within {0} terms")]
    NotLocallyAnalytic(usize),
    #[error("precision exhausted")]
    InsufficientPrecision,
    #[error("mismatched primes {0} and {1}")]
    PrimeMismatch(u32, u32),
    #[error("unsupported prime {0}: p must be an odd prime")]
    UnsupportedPrime(u64),
    #[error("{0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
