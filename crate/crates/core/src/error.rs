use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^16")]
    NotPrime(u32),
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u16, right: u16 },
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),
    #[error("budget exceeded: {what} requires {required}, limit is {limit}")]
    BudgetExceeded { what: &'static str, required: u128, limit: u128 },
    #[error("cap too small: {0}")]
    CapTooSmall(String),
    #[error("degree {degree} exceeds model cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("map does not respect relations: {0}")]
    RelationViolation(String),
    #[error("invalid colon input: {0}")]
    InvalidColon(String),
    #[error("malformed system: {0}")]
    MalformedSystem(String),
    #[error("hypothesis not satisfied: {0}")]
    HypothesisFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
