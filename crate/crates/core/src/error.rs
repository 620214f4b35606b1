use std::fmt;

use thiserror::Error;

/// Physical-state invariant that a matrix failed to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateInvariant {
    Shape,
    Hermitian,
    UnitTrace,
    PositiveSemidefinite,
}

impl fmt::Display for StateInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            StateInvariant::Shape => "shape",
            StateInvariant::Hermitian => "hermitian",
            StateInvariant::UnitTrace => "unit trace",
            StateInvariant::PositiveSemidefinite => "positive semidefinite",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("invalid density matrix: {invariant} invariant violated ({detail})")]
    InvalidState {
        invariant: StateInvariant,
        detail: String,
    },

    #[error("failed to parse state: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
