//! Projection methods over finite families of closed convex sets.
//!
//! The crate provides exact projectors onto a small catalog of convex sets,
//! the method of periodic (cyclic) projections together with cycle
//! extraction and verification, product-space projected-gradient and
//! parallel projection solvers, and numerical constructions showing that the
//! limit cycles of periodic projections admit no variational
//! characterization.

pub mod config;
pub mod error;
pub mod experiment;
pub mod geometry;
pub mod impossibility;
pub mod output;
pub mod product;
pub mod solver;
pub mod sweep;

pub use error::{Error, Result};
pub use geometry::{ConvexSet, Family, Vector};
pub use product::{ObjectiveKind, ProductPoint, SmoothObjective};
pub use solver::{LambdaSchedule, SolverConfig, StopReason};
pub use sweep::{Cycle, Trajectory};
