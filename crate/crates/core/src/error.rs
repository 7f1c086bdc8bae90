use thiserror::Error;

/// Errors produced by landscape construction, search and the experiment harness.
#[derive(Debug, Error)]
pub enum NkError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("node index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("replication {replication}, k = {k}, algorithm {algorithm}: {source}")]
    Replication {
        replication: usize,
        k: usize,
        algorithm: String,
        #[source]
        source: Box<NkError>,
    },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = NkError> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> NkError {
    NkError::InvalidParameter(msg.into())
}
