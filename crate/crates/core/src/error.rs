use thiserror::Error;

/// Errors raised by code construction, encoding and the experiment harness.
///
/// Decoding impasses are not errors: the decoders report them through
/// [`crate::decoder::DecodeOutcome::Failure`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("symbols are not a codeword (relative residual {residual:.3e})")]
    NotACodeword { residual: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameters(msg.into()))
}
