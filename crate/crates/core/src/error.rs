use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {q} exceeds the table limit {limit}")]
    FieldTooLarge { q: u64, limit: u64 },
    #[error("{what} of size {size} exceeds the configured limit {limit}")]
    TooLarge {
        what: &'static str,
        size: String,
        limit: String,
    },
    #[error("expected a subspace of dimension {expected}, rows have rank {rank}")]
    RankDeficient { expected: usize, rank: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("duplicate subspace at index {0}")]
    Duplicate(usize),
    #[error("subspaces {0} and {1} intersect nontrivially")]
    NotDisjoint(usize, usize),
    #[error("incompatible sets: {0}")]
    Incompatible(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("inconsistent spectrum: {0}")]
    Inconsistent(String),
    #[error("malformed subspace-set file: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
