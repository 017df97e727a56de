use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by construction, evaluation, enumeration and parsing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("window has {got} symbols, a radius-{radius} rule needs {expected}")]
    WindowLength {
        radius: usize,
        expected: usize,
        got: usize,
    },

    #[error("symbol index {symbol} out of range for alphabet of size {size}")]
    SymbolRange { symbol: usize, size: usize },

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("domain mismatch: expected {expected}, got {got}")]
    DomainMismatch { expected: String, got: String },

    #[error("enumeration cap exceeded: {required} evaluations needed, cap is {cap}")]
    CapExceeded { required: u128, cap: u64 },

    #[error("no closed-form step for this distribution: {0}")]
    UnsupportedClosedForm(String),

    #[error("unknown rule `{0}`")]
    UnknownRule(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
