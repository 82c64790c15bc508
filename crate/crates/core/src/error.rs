use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("coefficient outside double-precision range")]
    Overflow,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("arity mismatch in {op}: {left_in}->{left_out} vs {right_in}->{right_out}")]
    Arity {
        op: &'static str,
        left_in: usize,
        left_out: usize,
        right_in: usize,
        right_out: usize,
    },

    #[error("pure interpretation undefined for ticked diagram")]
    Ticked,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not Hermitian")]
    NotHermitian,

    #[error("trace is {0}, expected 1")]
    Trace(String),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("rule {rule}: {reason}")]
    Inadmissible { rule: String, reason: String },

    #[error("unknown rule {0}")]
    UnknownRule(String),

    #[error("no match at {path:?}: expected {expected}, found {found}")]
    NoMatch { path: Vec<usize>, expected: String, found: String },

    #[error("tensor network too large: {0} open indices")]
    TooLarge(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
