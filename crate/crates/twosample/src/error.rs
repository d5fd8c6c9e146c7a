use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty sample")]
    EmptySample,

    #[error("sample contains a non-finite value in observation {row}")]
    NonFiniteValue { row: usize },

    #[error("ragged sample: observation {row} has {got} coordinates, expected {expected}")]
    RaggedSample {
        row: usize,
        expected: usize,
        got: usize,
    },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("operation requires univariate samples, got dimension {dim}")]
    NotUnivariate { dim: usize },

    #[error("quantile level out of range: {t} (need 0 < t <= 1)")]
    QuantileLevelOutOfRange { t: f64 },

    #[error("invalid step function: {reason}")]
    InvalidStepFunction { reason: String },

    #[error("order must satisfy p >= 1, got {p}")]
    InvalidOrder { p: f64 },

    #[error("regularization weight must be nonnegative and finite, got {lambda}")]
    InvalidRegularization { lambda: f64 },

    #[error("tolerance must be positive and finite, got {tol}")]
    InvalidTolerance { tol: f64 },

    #[error("cost matrix entries must be nonnegative and finite")]
    InvalidCostMatrix,

    #[error("transport plan infeasible: {reason}")]
    InfeasiblePlan { reason: String },

    #[error("transport solver failed to terminate (pivot budget exhausted)")]
    SolverStalled,

    #[error("kernel bandwidth must be positive and finite, got {gamma}")]
    InvalidBandwidth { gamma: f64 },

    #[error("insufficient resamples: {got} (need at least {min})")]
    InsufficientResamples { got: usize, min: usize },

    #[error("insufficient paths: {got} (need at least {min})")]
    InsufficientPaths { got: usize, min: usize },

    #[error("bridge grid too coarse: {got} (need at least {min})")]
    GridTooCoarse { got: usize, min: usize },

    #[error("asymptotic calibration unavailable for {kind}; use permutation")]
    AsymptoticUnavailable { kind: String },

    #[error("{path}:{line}: {reason}")]
    Parse {
        path: String,
        line: usize,
        reason: String,
    },

    #[error("failed to read {path}: {source}")]
    ReadFile {
        path: String,
        source: std::io::Error,
    },

    #[error("failed to write {path}: {source}")]
    WriteFile {
        path: String,
        source: std::io::Error,
    },

    #[error("exact LP budget exceeded: n = {n} (limit {limit}); use a smaller size grid")]
    LpBudgetExceeded { n: usize, limit: usize },

    #[error("need >= 3 grid points for slope, got {got}")]
    SlopeGridTooSmall { got: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
