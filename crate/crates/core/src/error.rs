use thiserror::Error;

/// Errors raised by model construction, validation and the derived operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed structure at `{path}`: {reason}")]
    MalformedStructure { path: String, reason: String },

    #[error("structure declares no product")]
    MissingProduct,

    #[error("elements are not comparable: {0}")]
    NotComparable(String),

    #[error("element {0} is not idempotent")]
    NotIdempotent(String),

    #[error("the unit is not halvable in this model")]
    NoHalf,

    #[error("model `{0}` cannot be enumerated")]
    NotEnumerable(String),

    #[error("chain is not ascending at position {0}")]
    NotAscending(usize),

    #[error("size {size} exceeds the configured bound {bound}")]
    BoundExceeded { size: usize, bound: usize },

    #[error("invalid model selector `{selector}`: {reason}")]
    Selector { selector: String, reason: String },

    #[error("invalid element literal `{literal}` for model {model}")]
    ElementLiteral { literal: String, model: String },
}

impl Error {
    pub(crate) fn malformed(path: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::MalformedStructure {
            path: path.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
