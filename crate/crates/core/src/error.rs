use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    /// A closed form that must be rational produced a nonzero √3 part.
    #[error("expected a rational value, got {0}")]
    Irrational(String),
    #[error("invalid vertex: {0}")]
    InvalidVertex(String),
    #[error("resistances {0} do not form a realizable star")]
    NonRealizable(String),
    #[error("singular system")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
