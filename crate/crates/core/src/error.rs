use thiserror::Error;

/// Errors raised by the solvers, the relaxation engine and the transform machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch for {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("singular tridiagonal system: zero pivot at row {row}")]
    SingularSystem { row: usize },

    #[error("insufficient stencil: flux extraction needs at least {required} interior nodes, grid has {nx}")]
    InsufficientStencil { nx: usize, required: usize },

    #[error("grid alignment: {0}")]
    GridAlignment(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("iteration diverged: non-finite interface value at iteration {iteration}")]
    Divergence { iteration: usize },

    #[error("argument s = {re} + {im}i lies on the negative real axis")]
    Domain { re: f64, im: f64 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("Laplace inversion failed at t = {t}: non-finite transform value at contour node {node}")]
    InversionFailure { node: usize, t: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
