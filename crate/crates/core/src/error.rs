use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the diffusion-network pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("event {tweet_id} carries url {found:?}, expected {expected:?}")]
    UrlMismatch { tweet_id: String, expected: String, found: String },

    #[error("malformed event {tweet_id}: {reason}")]
    MalformedEvent { tweet_id: String, reason: String },

    #[error("{path}:{line}: {message}")]
    Format { path: String, line: usize, message: String },

    #[error("{path}:{line}: self-loop on node {node:?}")]
    SelfLoop { path: String, line: usize, node: String },

    #[error("network has no nodes")]
    EmptyGraph,

    #[error("empty sample")]
    EmptySample,

    #[error("labels contain a single class")]
    SingleClass,

    #[error("non-finite feature value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("k = {k} out of range for {train} training samples")]
    KOutOfRange { k: usize, train: usize },

    #[error("fold {fold}: {source}")]
    Fold {
        fold: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("class {class} has {count} samples, need at least {needed}")]
    ClassTooSmall { class: String, count: usize, needed: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unresolvable manifest entries: {}", .0.join(", "))]
    Unresolvable(Vec<String>),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
