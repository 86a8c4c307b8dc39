use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph has no non-loop edge")]
    NoEdges,

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("edge {{{0}, {1}}} is not present")]
    MissingEdge(usize, usize),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("labeling budget of {budget} exceeded ({required} labelings required)")]
    BudgetExceeded { budget: usize, required: u128 },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// Errors caused by the caller's input, as opposed to numerical breakdown.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::Numerical(_))
    }
}
