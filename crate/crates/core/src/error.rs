use thiserror::Error;

/// Errors raised by every operation in the crate.
///
/// The variants line up with the CLI exit-code contract: `Infeasible` is a
/// valid input without a solution, `Resource` is an enumeration guard that
/// tripped, everything else is a caller error or an internal bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("not a tree: {0}")]
    Structure(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("resource guard exceeded: {0}")]
    Resource(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn check_dims(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::Dimension { expected, actual })
    }
}
