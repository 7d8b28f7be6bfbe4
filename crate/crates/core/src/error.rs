use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {p}^{k} exceeds 2^63")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("zero has no inverse or multiplicative order")]
    ZeroElement,
    #[error("operands live over different fields or ambient rings")]
    ContextMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("element is not in reduced (h, t) form")]
    NotReduced,
    #[error("singular matrix")]
    Singular,
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
