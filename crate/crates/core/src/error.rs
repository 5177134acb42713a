use thiserror::Error;

/// Errors raised by the morphism constructors and composition operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch in {context}: expected {expected}, found {found}")]
    Arity {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("value {value} out of range (bound {bound}) in {context}")]
    OutOfRange {
        context: &'static str,
        value: usize,
        bound: usize,
    },
    #[error("operands are labelled by different groups")]
    GroupMismatch,
    #[error("family mismatch: expected {expected}, found {found}")]
    FamilyMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("rewriting exceeded its step bound ({0} steps)")]
    NonTermination(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_arity(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Arity {
            context,
            expected,
            found,
        })
    }
}
