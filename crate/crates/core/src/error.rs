use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(String),
    /// An exact identity that must hold produced a different value. This
    /// always indicates an arithmetic bug, never bad input.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("oracle bound exceeded: {0}")]
    OracleBound(String),
    #[error("quotient has a pole")]
    Pole,
    #[error("series error: {0}")]
    Series(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
