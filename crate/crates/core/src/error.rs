use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid code parameters r={r}, m={m}: {reason}")]
    InvalidCode {
        r: usize,
        m: usize,
        reason: &'static str,
    },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{what} too large: {value} exceeds the limit of {limit}")]
    TooLarge {
        what: &'static str,
        value: u128,
        limit: u128,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed alist input: {0}")]
    Alist(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
