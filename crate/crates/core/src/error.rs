use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph must have at least one node")]
    EmptyGraph,

    #[error("self-loop on node {0}")]
    SelfLoop(usize),

    #[error("node label {label} out of range 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("edge list line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("inconsistent spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("classical propagation needs t >= 0, got {0}")]
    NegativeTime(f64),

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("degeneracy class {index} does not exist ({count} classes)")]
    InvalidClass { index: usize, count: usize },

    #[error("{what} value {value} at t={t} is outside [0,1] beyond tolerance")]
    ProbabilityOutOfRange { what: &'static str, t: f64, value: f64 },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("slope fit failed: {0}")]
    Fit(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
