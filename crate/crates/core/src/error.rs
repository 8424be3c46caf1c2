use thiserror::Error;

/// Errors raised by the algebra engines.
///
/// Falsified identities are never reported through this type; they come back
/// as ordinary results carrying a counterexample. `ConstructionFailure` is the
/// exception: it signals that a construction which must succeed did not.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("set is not downward closed: {0} is missing")]
    NotDownwardClosed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("polynomials live in different rings")]
    ContextMismatch,
    #[error("degree guard exceeded: degree {degree} > limit {limit}")]
    DegreeGuard { degree: u32, limit: u32 },
    #[error("unsupported denominator pattern: {0}")]
    UnsupportedDenominator(String),
    #[error("field characteristic mismatch: {0}")]
    CharacteristicMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("linear system is inconsistent: {0}")]
    Inconsistent(String),
    #[error("construction failed: {0}")]
    ConstructionFailure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
