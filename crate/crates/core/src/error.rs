use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid drawing: {0}")]
    InvalidDrawing(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("permutation {perm} is not separable: block {block} has neither a direct nor a skew split")]
    NotSeparable { perm: String, block: String },

    #[error("drawing is not guillotine")]
    NotGuillotine,

    #[error("drawing is not diagonal")]
    NotDiagonal,

    #[error("exhaustive generation limited to n <= {ceiling}, got n = {n}")]
    BoundExceeded { n: usize, ceiling: usize },

    #[error("unknown pattern set {0:?}")]
    UnknownRow(String),

    #[error("series error: {0}")]
    Series(String),

    #[error("fixed-point iteration for {system} is not contracting at step {step}")]
    NonContraction { system: String, step: usize },

    #[error("invalid generating-tree path: {0}")]
    InvalidPath(String),

    #[error("region decomposition failed: {0}")]
    RegionDecomposition(String),

    #[error("not a whirl: {0}")]
    NotAWhirl(String),

    #[error("oeis: {0}")]
    Oeis(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
