use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("structure violates signature: {}", .0.join("; "))]
    Violation(Vec<String>),

    #[error("relabeling is undefined on domain element {0}")]
    UndefinedElement(i64),

    #[error("relabeling is not injective: elements {0} and {1} both map to {2}")]
    NonInjective(i64, i64, i64),

    #[error("signature mismatch")]
    SignatureMismatch,

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("prefix length {requested} out of range for sequence of length {len}")]
    OutOfRange { requested: usize, len: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("malformed code: {0}")]
    MalformedCode(String),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("enumeration budget exceeded: {needed} code tuples > budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("element {0} does not occur in the sequence")]
    AbsentElement(i64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty sequence")]
    EmptySequence,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
