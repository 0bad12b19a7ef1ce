use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("space: half-rank n must be at least 1, got {0}")]
    ZeroHalfRank(usize),

    #[error("space: operands live on different spaces (n = {left} vs n = {right})")]
    SpaceMismatch { left: usize, right: usize },

    #[error(
        "decomposition: tensor is not in the structure tensor space (residual {residual:.3e})"
    )]
    NotInFSpace { residual: f64 },

    #[error("decomposition: class index must be in 1..=12, got {0}")]
    InvalidClassIndex(usize),

    #[error("decomposition: rank tool supports 1 <= n <= {max}, got {n}")]
    UnsupportedRankDimension { n: usize, max: usize },

    #[error("paraunitary: group element is singular")]
    SingularElement,

    #[error("lie3: Jacobi identity violated (residual {residual:.3e})")]
    JacobiViolation { residual: f64 },

    #[error("lie3: degenerate parameters for family {family}: {reason}")]
    DegenerateParameters {
        family: &'static str,
        reason: String,
    },

    #[error("lie3: unknown family `{0}` (expected g5, g6, g10 or g12)")]
    UnknownFamily(String),

    #[error("matrix_groups: no closed-form branch matched ({0})")]
    NoBranch(String),

    #[error("input: {message} at line {line}, column {column}")]
    Syntax {
        message: String,
        line: usize,
        column: usize,
    },

    #[error("input: {0}")]
    Validation(String),

    #[error("input: {0}")]
    Io(String),
}
