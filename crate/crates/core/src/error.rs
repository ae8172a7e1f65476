use thiserror::Error;

use crate::words::Label;

/// Errors raised by constructors, operations and parsers in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid label {name:?}: {reason}")]
    InvalidLabel { name: String, reason: &'static str },

    #[error("duplicate label `{0}`")]
    DuplicateLabel(Label),

    #[error("label `{0}` does not occur")]
    MissingLabel(Label),

    #[error("renaming is not a bijection: {0}")]
    NotBijective(String),

    #[error("a surface needs at least one boundary cycle")]
    NoCycles,

    #[error("genus must be nonnegative, got {0}")]
    NegativeGenus(i64),

    #[error("cannot glue label `{0}` to itself")]
    SelfPair(Label),

    #[error("malformed chord diagram: {0}")]
    Diagram(String),

    #[error("invalid move: {0}")]
    InvalidMove(String),

    #[error("morphism undefined: {0}")]
    Undefined(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// True for errors produced while reading text.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
