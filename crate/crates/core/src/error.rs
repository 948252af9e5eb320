use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    M2 { line: usize, message: String },

    #[error("tree parse error at offset {offset}: {message}")]
    Tree { offset: usize, message: String },

    #[error("line {line}: tree leaves do not match the sentence tokens ({detail})")]
    Misaligned { line: usize, detail: String },

    #[error("line count mismatch: {left} has {left_lines} lines, {right} has {right_lines}")]
    LineCount {
        left: String,
        left_lines: usize,
        right: String,
        right_lines: usize,
    },

    #[error("target sides differ at line {line}")]
    TargetMismatch { line: usize },

    #[error("missing error types: {0}")]
    MissingTypes(String),

    #[error("cannot inflect `{token}`: {reason}")]
    Inflection { token: String, reason: String },

    #[error("unknown error type `{0}`")]
    UnknownErrorType(String),

    #[error("no confusion matrix for {0}")]
    MissingMatrix(String),

    #[error("invalid lexicon line {line}: {message}")]
    Lexicon { line: usize, message: String },

    #[error("{0}")]
    Bleu(String),

    #[error("{0}")]
    Format(String),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn file(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::File {
            path: path.into(),
            source,
        }
    }
}
