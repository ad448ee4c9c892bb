use thiserror::Error;

use crate::covers::CoverError;
use crate::tower::TowerError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant broken: {0}")]
    Invariant(String),
    #[error("invalid sampling config: {0}")]
    Config(String),
    #[error("sampler gave up after {attempts} attempts: {reason}")]
    RetriesExhausted { attempts: u32, reason: String },
    #[error("format error: {0}")]
    Format(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
