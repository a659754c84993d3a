use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The marked state has no weight outside the zero mode (it is the uniform state).
    #[error("degenerate marked state: all overlaps with non-zero Laplacian modes vanish")]
    DegenerateState,

    /// The marked state is orthogonal to the uniform initial state.
    #[error("marked state is orthogonal to the initial state (P_N = 0)")]
    OrthogonalState,

    #[error("graph is disconnected ({zero_modes} zero Laplacian eigenvalues)")]
    Disconnected { zero_modes: usize },

    #[error("secular function evaluated at a pole (mu = {0})")]
    Pole(f64),

    #[error("coincident vertices: a two-vertex state needs distinct vertices")]
    CoincidentVertices,

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
