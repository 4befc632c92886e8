use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation mismatch: {0}")]
    ConfigMismatch(String),
    #[error("invalid truncation config: {0}")]
    InvalidConfig(String),
    #[error("degree {degree} out of range 1..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("generator index {index} out of range for {n} generators")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("scalar part precondition violated: {0}")]
    ScalarPart(String),
    #[error("word {0} is not a Lyndon word")]
    NotLyndon(String),
    #[error("element is not a Lie element: {0}")]
    NotLie(String),
    #[error("malformed strand descriptor: {0}")]
    BadStrandSpec(String),
    #[error("inconsistent linear system at degree {degree}: {what}")]
    Infeasible { degree: usize, what: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("missing Duflo series")]
    MissingDuflo,
    #[error("wiring diagram: {0}")]
    Wiring(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
