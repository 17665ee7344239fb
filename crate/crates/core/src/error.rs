use std::path::PathBuf;

use thiserror::Error;

/// Broad classification used by front ends to choose exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The caller supplied something malformed or violating a precondition.
    Input,
    /// The input is well formed but exceeds a configured size bound.
    Capability,
    /// A self-check failed; this indicates a bug, not bad input.
    Internal,
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a structure of size {size}")]
    VertexOutOfRange { vertex: usize, size: usize },

    #[error("{0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} of size {size} exceeds the supported bound {bound}")]
    TooLarge {
        what: &'static str,
        size: u64,
        bound: u64,
    },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {message}")]
    Parse { context: String, message: String },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::VertexOutOfRange { .. }
            | Error::InvalidInput(_)
            | Error::Precondition(_)
            | Error::Parse { .. } => ErrorKind::Input,
            Error::TooLarge { .. } | Error::Overflow(_) => ErrorKind::Capability,
            Error::Invariant(_) => ErrorKind::Internal,
            Error::Io { .. } => ErrorKind::Io,
        }
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
