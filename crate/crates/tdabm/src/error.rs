use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] tdabm_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{path}: unknown column `{column}` (available: {available})")]
    UnknownColumn {
        path: PathBuf,
        column: String,
        available: String,
    },
    #[error("column `{0}` is listed more than once among axes and outcome")]
    DuplicateColumn(String),
    #[error("{path}: line {line}, column `{column}`: `{value}` is not a finite number")]
    NonNumeric {
        path: PathBuf,
        line: u64,
        column: String,
        value: String,
    },
    #[error("{0}: no rows left after dropping rows with missing values")]
    EmptyAfterDrop(PathBuf),
    #[error("invalid graph document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid graph document: {0}")]
    Document(String),
    #[error("graph and table do not match: {0}")]
    Mismatch(String),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
