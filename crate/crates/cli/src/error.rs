use std::fmt;

use boolgate::Error;

pub const EXIT_IO: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_NOT_REVERSIBLE: u8 = 3;
pub const EXIT_NOT_PERMUTATION: u8 = 4;
pub const EXIT_DIMENSION_CAP: u8 = 5;
pub const EXIT_VERIFICATION: u8 = 6;

/// A failure with its process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(EXIT_PARSE, message)
    }

    pub fn io(context: &str, err: std::io::Error) -> Self {
        Self::new(EXIT_IO, format!("{context}: {err}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // keep diagnostics on one line
        f.write_str(&self.message.replace('\n', " "))
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotReversible { .. } => EXIT_NOT_REVERSIBLE,
            Error::NotPermutation { .. }
            | Error::InvalidImage(_)
            | Error::NotPowerOfTwo(_)
            | Error::NotSquare { .. } => EXIT_NOT_PERMUTATION,
            Error::Syntax { .. }
            | Error::ZeroVariable { .. }
            | Error::ArityTooSmall { .. }
            | Error::WidthMismatch { .. }
            | Error::IndexOutOfRange { .. }
            | Error::InvalidWidth(_)
            | Error::ShapeMismatch(_)
            | Error::InvalidTable(_)
            | Error::InvalidWord(_) => EXIT_PARSE,
        };
        CliError::new(code, e.to_string())
    }
}
