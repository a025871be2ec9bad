use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed lexicon line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },

    #[error("text contains no word tokens")]
    EmptyText,

    #[error("text has {tokens} tokens but at least {required} are needed")]
    TextTooShort { tokens: usize, required: usize },

    #[error("density requested over an empty span")]
    EmptySpan,

    #[error("calibration needs at least 2 usable novels, got {0}")]
    InsufficientCorpus(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit status for the CLI, loosely following `sysexits.h`.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 74,
            Error::MalformedLine { .. }
            | Error::EmptyText
            | Error::TextTooShort { .. }
            | Error::EmptySpan
            | Error::Json(_) => 65,
            Error::InsufficientCorpus(_) => 66,
            Error::InvalidConfig(_) => 64,
        }
    }
}
