use thiserror::Error;

use crate::exactalg::MultiPoly;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Values from different scalar fields were combined.
    #[error("scalar context mismatch: {0}")]
    Context(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("invalid prime {0}: prime fields need an odd prime")]
    InvalidPrime(u64),

    /// Exact division failed; the remainder is the witness.
    #[error("polynomial is not divisible (remainder has {} terms)", remainder.len())]
    NotDivisible { remainder: Box<MultiPoly> },

    #[error("undefined: {0}")]
    Undefined(String),

    #[error("grading error: {0}")]
    Grading(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("ambient mismatch: {0}")]
    Ambient(String),

    #[error("point is not a smooth point of the hypersurface: {0}")]
    NotSmooth(String),

    #[error("point is not on the hypersurface")]
    NotOnHypersurface,

    #[error("reduction modulo {p} failed: {reason}")]
    Reduction { p: u32, reason: String },

    #[error("isotropy error: {0}")]
    Isotropy(String),

    #[error("integrality error: {0}")]
    Integrality(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal invariant failed. Not expected on valid input.
    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}
