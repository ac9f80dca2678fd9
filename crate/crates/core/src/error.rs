use alloc::string::String;
use alloc::vec::Vec;

use crate::number_ring::SplittingReport;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unramified polynomial is not irreducible modulo {p}")]
    NotIrreducibleModP { p: u64 },
    #[error("polynomial is not Eisenstein over the unramified subring: {reason}")]
    NotEisenstein { reason: String },
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements live in different towers")]
    TowerMismatch,
    #[error("element is not integral")]
    NotIntegral,
    #[error("source tower is not a structural subtower of the target")]
    NotSubtower,
    #[error("no prime up to {p_max} is unramified, not totally split and equidegree")]
    NoSuitablePrimeFound { p_max: u64, table: Vec<SplittingReport> },
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("generator index {index} exceeds truncation {n}")]
    TruncationExceeded { index: usize, n: usize },
    #[error("zero polynomial has no leading monomial")]
    ZeroPolynomial,
    #[error("no image supplied for generator v_{0}")]
    MissingImage(usize),
    #[error("weight arithmetic overflowed")]
    WeightOverflow,
    #[error("γ(v_{n}) has a non-integral coefficient")]
    IntegralityFailure { n: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("graded pieces have different sizes ({source_len} vs {target_len})")]
    WeightMismatch { source_len: usize, target_len: usize },
    #[error("congruence failed: lhs {lhs}, rhs {rhs}")]
    CongruenceFailed { lhs: String, rhs: String },
    #[error("minimality failed: γ(v_{h}) is nonzero modulo the ideal")]
    MinimalityFailed { h: usize },
    #[error("normal form is nonzero but the basis was truncated below weight {weight}")]
    TruncationUnsound { weight: u64 },
    #[error("outside scope: {0}")]
    OutsideScope(String),
    #[error("presentation matrix has a non-integer entry")]
    NonIntegerMatrix,
}
