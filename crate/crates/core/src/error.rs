use thiserror::Error;

use crate::spectrum::Obstruction;

/// Errors raised by the library.
///
/// A failed orbit check is normally returned as a value ([`Obstruction`]);
/// it becomes an [`Error::Obstruction`] only when an operation requires a
/// lattice to exist.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("no lattice exists: {0}")]
    Obstruction(Obstruction),

    #[error("conjugator residual {residual:e} exceeds tolerance {tolerance:e}")]
    Numerical { residual: f64, tolerance: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

impl From<Obstruction> for Error {
    fn from(o: Obstruction) -> Self {
        Error::Obstruction(o)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
