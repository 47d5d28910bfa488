//! Error taxonomy shared by the library and the CLI.
//!
//! Three families matter to callers: domain errors (bad parameter values or
//! math preconditions), parse/config errors (malformed input files or
//! overrides), and I/O errors. The CLI maps them onto distinct exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A numeric precondition was violated (nonpositive frequency, empty
    /// table, probability outside (0, 1), and so on).
    #[error("domain error: {0}")]
    Domain(String),

    /// Configuration or input data failed to parse or validate.
    #[error("config error: {0}")]
    Config(String),

    /// Vectors or matrices with inconsistent dimensions were combined.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn dimension(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    /// Process exit code the CLI uses for this error family.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Config(_) | Error::Dimension(_) => 1,
            Error::Io(_) => 3,
        }
    }
}
