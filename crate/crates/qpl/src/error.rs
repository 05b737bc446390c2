//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Field order is not a prime number.
    #[error("field order {0} is not prime")]
    NotPrime(u64),

    /// Matrix shapes do not admit the requested operation.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// Operands live in different ambient spaces or over different fields.
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    /// A bilinear form matrix is not symmetric or not invertible.
    #[error("invalid gram matrix: {0}")]
    BadGram(String),

    /// An enumeration would exceed the configured budget.
    #[error("capacity exceeded: {what} = {count} > budget {budget}")]
    Capacity {
        what: &'static str,
        count: u128,
        budget: u128,
    },

    /// Arithmetic overflow in an exact integer computation.
    #[error("integer overflow computing {0}")]
    Overflow(&'static str),

    /// The rank distance of the zero code is undefined.
    #[error("rank distance of the zero code is undefined")]
    UndefinedDistance,

    /// The supplied value is not a denominator of the rank function.
    #[error("{mu_num}/{mu_den} is not a denominator (principal denominator is {principal_num}/{principal_den})")]
    NotADenominator {
        mu_num: u64,
        mu_den: u64,
        principal_num: u64,
        principal_den: u64,
    },

    /// A candidate collection failed an axiom required before extension.
    #[error("precondition failed: candidate violates axiom {0}")]
    PreconditionFailed(String),

    /// Text input could not be parsed.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// Text formats encode residues as single digits.
    #[error("field order {0} too large for the digit-based text format (max 7)")]
    UnsupportedTextField(u64),

    /// Generic invalid-argument error.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }
}
