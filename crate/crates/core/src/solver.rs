//! Numerical settings shared by the iterative solvers.
//!
//! | setting        | default  |
//! |----------------|----------|
//! | `sweep_tol`    | 1e-12    |
//! | `cycle_tol`    | 1e-9     |
//! | `fixpoint_tol` | 1e-8     |
//! | `max_sweeps`   | 100000   |
//! | `max_iters`    | 100000   |
//! | `gamma`        | β        |
//! | `lambda`       | 1        |

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_SWEEP_TOL: f64 = 1e-12;
pub const DEFAULT_CYCLE_TOL: f64 = 1e-9;
pub const DEFAULT_FIXPOINT_TOL: f64 = 1e-8;
pub const DEFAULT_MAX_SWEEPS: usize = 100_000;
pub const DEFAULT_MAX_ITERS: usize = 100_000;

/// Relaxation parameters `λ_n` of the projected-gradient iteration.
#[derive(Clone)]
pub enum LambdaSchedule {
    Constant(f64),
    Custom(Arc<dyn Fn(usize) -> f64 + Send + Sync>),
}

impl LambdaSchedule {
    pub fn at(&self, n: usize) -> f64 {
        match self {
            LambdaSchedule::Constant(l) => *l,
            LambdaSchedule::Custom(f) => f(n),
        }
    }
}

impl Default for LambdaSchedule {
    fn default() -> Self {
        LambdaSchedule::Constant(1.0)
    }
}

impl fmt::Debug for LambdaSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaSchedule::Constant(l) => write!(f, "Constant({l})"),
            LambdaSchedule::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Step size; `None` selects `β`, the midpoint of `]0, 2β[`.
    pub gamma: Option<f64>,
    pub lambda: LambdaSchedule,
    pub sweep_tol: f64,
    pub cycle_tol: f64,
    pub fixpoint_tol: f64,
    pub max_sweeps: usize,
    pub max_iters: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            gamma: None,
            lambda: LambdaSchedule::default(),
            sweep_tol: DEFAULT_SWEEP_TOL,
            cycle_tol: DEFAULT_CYCLE_TOL,
            fixpoint_tol: DEFAULT_FIXPOINT_TOL,
            max_sweeps: DEFAULT_MAX_SWEEPS,
            max_iters: DEFAULT_MAX_ITERS,
        }
    }
}

impl SolverConfig {
    pub(crate) fn check_tolerances(&self) -> Result<()> {
        for (name, v) in [
            ("sweep_tol", self.sweep_tol),
            ("cycle_tol", self.cycle_tol),
            ("fixpoint_tol", self.fixpoint_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidSetting(format!("{name} must be > 0")));
            }
        }
        if self.max_sweeps == 0 || self.max_iters == 0 {
            return Err(Error::InvalidSetting("iteration caps must be ≥ 1".into()));
        }
        Ok(())
    }

    /// Step size for a gradient with Lipschitz constant `1/β`, checked
    /// against `]0, 2β[`.
    pub fn step_size(&self, beta: f64) -> Result<f64> {
        let gamma = self.gamma.unwrap_or(beta);
        if gamma.is_finite() && gamma > 0.0 && gamma < 2.0 * beta {
            Ok(gamma)
        } else {
            Err(Error::InvalidStepSize {
                gamma,
                upper: 2.0 * beta,
            })
        }
    }
}

/// Upper limit `δ = min{1, β/γ} + 1/2` for the relaxation parameters.
pub fn relaxation_limit(beta: f64, gamma: f64) -> f64 {
    (beta / gamma).min(1.0) + 0.5
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Converged,
    MaxIterations,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::Converged => "converged",
            StopReason::MaxIterations => "max_iterations",
        }
    }
}
