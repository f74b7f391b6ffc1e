use crate::index_set::IndexSet;

/// Crate-wide error type.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix rows do not form a square matrix")]
    NotSquare,

    #[error("matrix is not symmetric at ({i},{j}): difference {delta:e} exceeds 1e-12")]
    NotSymmetric { i: usize, j: usize, delta: f64 },

    #[error("off-diagonal entry ({i},{j}) = {value} is positive")]
    PositiveOffDiagonal { i: usize, j: usize, value: f64 },

    #[error("index {index} out of bounds for order {order}")]
    IndexOutOfBounds { index: usize, order: usize },

    #[error("index set may not be empty here")]
    EmptyIndexSet,

    #[error("{what} needs at least {min} indices, got {got}")]
    TooFewIndices {
        what: &'static str,
        min: usize,
        got: usize,
    },

    #[error("pivot {value:e} at index {index} is not positive; link is undefined")]
    PivotNotPositive { index: usize, value: f64 },

    #[error("principal submatrix on {set} is not positive definite")]
    NotPositiveDefinite { set: IndexSet },

    #[error("order {order} exceeds the subset-enumeration limit {limit}")]
    OrderLimit { order: usize, limit: usize },

    #[error("resolution must be at least 1")]
    BadResolution,

    #[error("face sampling would create about {points} graph nodes; lower the resolution")]
    SamplingTooLarge { points: u128 },

    #[error("{0} is not a cell of the nerve")]
    NotACell(IndexSet),

    #[error("no cell contains both supports {a} and {b}")]
    NoCommonCell { a: IndexSet, b: IndexSet },

    #[error("invalid nerve point: {0}")]
    InvalidPoint(String),

    #[error("cosine matrix is not positive definite; the group is infinite")]
    NotFinite,

    #[error("group enumeration exceeded {limit} elements")]
    GroupTooLarge { limit: usize },

    #[error("Davis poset enumeration exceeds the built-in size limits")]
    PosetTooLarge,

    #[error("io error: {0}")]
    Io(String),
}
