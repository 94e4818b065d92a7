//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Operands live in polynomial rings with different variable counts.
    #[error("variable count mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    /// A structured input file failed to parse.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The operation requires a connected graph.
    #[error("graph is not connected")]
    Disconnected,

    /// A configured resource cap was exceeded. Never a wrong answer:
    /// callers must treat this as "no result".
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),

    /// Radical membership could not be decided within the configured
    /// power bound and the Rabinowitsch fallback was disabled.
    #[error(
        "indeterminate: no power up to {max_power} found and the Rabinowitsch check is disabled"
    )]
    Indeterminate { max_power: usize },

    /// The graph does not match the requested family pattern.
    #[error("family mismatch: {0}")]
    FamilyMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
