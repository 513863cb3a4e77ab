use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    /// The experiment description is inconsistent or out of range.
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Code(#[from] rm_mwpc::Error),
    #[error("cannot write results: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type SimResult<T> = std::result::Result<T, SimError>;
