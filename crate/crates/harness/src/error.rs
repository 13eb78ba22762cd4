use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("schema error at `{path}` (line {line}, column {column}): {message}")]
    Schema { path: String, line: usize, column: usize, message: String },
    #[error("invalid instance field `{field}`: {message}")]
    Invariant { field: &'static str, message: String },
    #[error("unknown suite `{0}`; known suites: {known}", known = crate::suites::SUITE_NAMES.join(", "))]
    UnknownSuite(String),
    #[error("invalid suite config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] kdq_core::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
