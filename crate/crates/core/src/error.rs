use thiserror::Error;

/// Errors raised by the group-theoretic and linear-algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown group descriptor `{0}`")]
    UnknownGroup(String),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("malformed cycle notation: {0}")]
    MalformedCycles(String),
    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),
    #[error("size cap exceeded: {what} has size {size}, cap is {cap}")]
    CapExceeded { what: String, size: usize, cap: usize },
    #[error("group is not a direct product")]
    NotAProduct,
    #[error("invalid Goursat datum: {0}")]
    InvalidGoursat(String),
    #[error("groups do not match")]
    GroupMismatch,
    #[error("character table computation failed: {0}")]
    CharacterTable(String),
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("inconsistent algebra datum: {0}")]
    InconsistentAlgebra(String),
}

pub type Result<T> = std::result::Result<T, Error>;
