use thiserror::Error;

/// Errors raised by the algebra kernel.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("group closure exceeded the configured cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("{what} = {value} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },
    #[error("expected a homogeneous polynomial")]
    NotHomogeneous,
    #[error("polynomial is not invariant under the group")]
    NotInvariant,
    #[error("division is not exact")]
    InexactDivision,
    #[error("index {index} out of range (limit {limit})")]
    OutOfRange { index: usize, limit: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A computed result contradicts a structural identity. This always
    /// points at a defect in the implementation.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
