use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("variable index 0 at position {position}; variables are numbered from x1")]
    ZeroVariable { position: usize },

    #[error("expression references x{index} but the declared arity is {declared}")]
    ArityTooSmall { index: usize, declared: usize },

    #[error("width mismatch: expected {expected}, got {actual}")]
    WidthMismatch { expected: usize, actual: usize },

    #[error("index {index} out of range for width {width}")]
    IndexOutOfRange { index: usize, width: usize },

    #[error("invalid bit width {0}; widths must lie in 1..=63")]
    InvalidWidth(usize),

    #[error("not reversible: inputs {first} and {second} both map to {output}")]
    NotReversible {
        first: String,
        second: String,
        output: String,
    },

    #[error("not a permutation matrix: column {column}: {reason}")]
    NotPermutation { column: usize, reason: String },

    #[error("not a permutation: {0}")]
    InvalidImage(String),

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid truth table: {0}")]
    InvalidTable(String),

    #[error("invalid Pauli word: {0}")]
    InvalidWord(String),
}

pub type Result<T> = std::result::Result<T, Error>;
