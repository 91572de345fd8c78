use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("element {value} does not belong to a field of order {order}")]
    ForeignElement { value: u64, order: u64 },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("line direction must be nonzero")]
    ZeroDirection,

    #[error("intersect called with identical lines")]
    IdenticalLines,

    #[error("duplicate line: index {second} equals index {first}")]
    DuplicateLine { first: usize, second: usize },

    #[error("the zero polynomial vanishes to infinite order")]
    ZeroPolynomial,

    #[error("not a p-th power: {0}")]
    NotPthPower(String),

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("weight allocation failed at joint {joint}: target {target}, total vanishing order {available}")]
    Allocation {
        joint: usize,
        target: u32,
        available: u32,
    },

    #[error("line {line} is not contained in hypersurface {surface}")]
    NotContained { line: usize, surface: usize },

    #[error("solver found no nonzero solution up to degree {0}")]
    Solver(u32),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
