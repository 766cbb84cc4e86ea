use thiserror::Error;

use crate::geometry::Vector;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite coordinate in {0}")]
    NonFinite(&'static str),

    /// Rendered as `<field> <reason>`, e.g. `radius must be ≥ 0`.
    #[error("{field} {reason}")]
    InvalidSet { field: &'static str, reason: String },

    #[error(
        "ellipsoid secular equation unsolved after {iterations} iterations (residual {residual:e})"
    )]
    EllipsoidNewtonFailure { iterations: usize, residual: f64 },

    #[error("at least {min} sets required, got {found}")]
    TooFewSets { min: usize, found: usize },

    #[error("expected {expected} points, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("expected {expected} blocks, got {found}")]
    BlockCountMismatch { expected: usize, found: usize },

    #[error("invalid sweep order: {0}")]
    InvalidOrder(String),

    #[error("not converged after {iterations} iterations (residual {residual:e})")]
    NotConverged {
        iterations: usize,
        residual: f64,
        best: Vec<Vector>,
    },

    #[error("step size {gamma} outside ]0, {upper}[")]
    InvalidStepSize { gamma: f64, upper: f64 },

    #[error("relaxation parameter {lambda} at iteration {iteration} outside [0, {delta}]")]
    InvalidRelaxation {
        lambda: f64,
        delta: f64,
        iteration: usize,
    },

    #[error("invalid solver setting: {0}")]
    InvalidSetting(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("x and y are antipodal; the spiral plane is undetermined")]
    AntipodalAmbiguity,

    #[error("z must have unit norm (got {norm})")]
    InvalidUnitVector { norm: f64 },

    #[error("rho must exceed 1 (got {0})")]
    InvalidRho(f64),

    #[error("candidate `{label}` returned non-finite value {value}")]
    EvaluatorFailure { label: String, value: f64 },
}
