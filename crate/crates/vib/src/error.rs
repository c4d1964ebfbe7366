use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("config error: {0}")]
    Config(String),

    /// A loss or derived quantity became non-finite. `term` names the
    /// offending component so divergence is attributable.
    #[error("numeric error in {term}: {detail}")]
    Numeric { term: String, detail: String },

    /// Malformed input file. `at` is a byte offset for binary formats and a
    /// 1-based line number for text formats.
    #[error("format error in {path} at {at}: {detail}")]
    Format {
        path: String,
        at: u64,
        detail: String,
    },

    #[error("value out of range: {0}")]
    Range(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn numeric(term: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Numeric {
            term: term.into(),
            detail: detail.into(),
        }
    }
}
