use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid quantum numbers n={n}, l={l}, m={m}: {reason}")]
    QuantumNumbers { n: i64, l: i64, m: i64, reason: &'static str },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("malformed operator expression: {0}")]
    MalformedOperator(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("point is outside the domain: {0}")]
    OutOfDomain(&'static str),

    #[error("invalid quadrature configuration: {0}")]
    Quadrature(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
