use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid modulus {0}")]
    InvalidModulus(String),

    #[error("degree n must be at least {min}, got {n}")]
    InvalidDegree { n: i64, min: i64 },

    #[error("element does not belong to the group: {0}")]
    NotInGroup(String),

    #[error("group is infinite")]
    InfiniteGroup,

    #[error("invalid presentation: {0}")]
    Presentation(String),

    #[error("invalid manifold data: {0}")]
    Manifold(String),

    #[error("unknown built-in manifold {0:?}")]
    UnknownManifold(String),

    #[error("angle tracking could not certify steps below a quarter turn with {samples} samples")]
    RefinementLimit { samples: usize },

    #[error("degenerate projection at sample {index} of {samples}")]
    DegenerateProjection { index: usize, samples: usize },

    #[error("invalid sample table: {0}")]
    SampleTable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid distribution: {0}")]
    Distribution(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
