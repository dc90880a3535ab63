use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("field overflow: cannot combine sqrt({left}) with sqrt({right})")]
    FieldOverflow { left: u32, right: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("point {0} is not a member of the cone")]
    NotMember(String),
    #[error("the face is empty")]
    EmptyFace,
    #[error("no exposing lift exists: {0}")]
    NoLift(String),
    #[error("tangential depth {depth} exceeds cone dimension {dim}")]
    DepthBoundViolated { depth: usize, dim: usize },
    #[error("certificate {certificate} exceeded tolerance: violation {violation:e}")]
    ToleranceExceeded { certificate: String, violation: f64 },
    #[error("exposure classification is inconsistent: {0}")]
    ConsistencyViolation(String),
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
