use thiserror::Error;

use crate::partition::Partition;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a supported prime (need a prime <= 251)")]
    InvalidPrime(u32),

    #[error("inconsistent linear system")]
    Inconsistent,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition {0} is not {1}-regular")]
    NotRegular(Partition, u32),

    #[error("partitions {0} and {1} have different sizes")]
    SizeMismatch(Partition, Partition),

    #[error("partition {partition} has more than {n} parts")]
    TooManyParts { partition: Partition, n: usize },

    #[error("hypotheses not met: {0}")]
    Hypotheses(String),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("size guard exceeded for {label}: {reason}")]
    Guard { label: String, reason: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("not a submodule: {0}")]
    NotStable(String),

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard { .. })
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
