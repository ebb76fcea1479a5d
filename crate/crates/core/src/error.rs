//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("invalid index {index} (series has {len} terms)")]
    InvalidIndex { index: usize, len: usize },

    #[error("pivot frequency must be positive (got {0})")]
    ZeroPivotFrequency(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("frequency selection violates 2|lambda_m - lambda_N| <= lambda_N at index {index} (lambda_m = {lambda_m}, lambda_n = {lambda_n})")]
    PivotConstraint {
        index: usize,
        lambda_m: f64,
        lambda_n: f64,
    },

    #[error("subset cardinality {0} exceeds the hard cap of 30")]
    SubsetTooLarge(usize),

    #[error("effective length T = {0} must exceed 1")]
    DegenerateLength(f64),

    #[error("quadrature did not converge: {0}")]
    QuadratureFailure(String),

    #[error("oracle limited to L <= {cap} and series <= {cap} terms (got L = {l}, terms = {terms})")]
    OracleTooLarge { cap: usize, l: usize, terms: usize },

    #[error("sieve bound {0} exceeds the cap of {1}")]
    BoundTooLarge(u64, u64),

    #[error("argument {0} exceeds the sieved bound {1}")]
    OutOfTableRange(f64, u64),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("lattice combination search too large: {0}")]
    SearchTooLarge(String),

    #[error("frequencies are rationally dependent within [-L, L]: delta = 0 (witness {0:?})")]
    RationalDependence(Vec<i64>),

    #[error("delta = {0} is numerically degenerate (below 1e-12); cannot certify")]
    DegenerateDelta(f64),

    #[error("scan budget exhausted: best Re F = {best} at x = {best_x}, needed {needed}")]
    ScanBudgetExhausted { best: f64, best_x: f64, needed: f64 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
