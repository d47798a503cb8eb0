//! Floating-point cross-checks: quadrature, finite differences, ODE
//! integration and implicit time stepping.

mod fd;
mod ode;
mod quadrature;
mod timestep;

use thiserror::Error;

use crate::expr::EvalError;
use crate::operator::OperatorError;

pub use fd::{convergence_order, fd_residual, write_csv, ConvergenceStudy, ConvergenceVerdict, Grid, ResidualReport};
pub use ode::{integrate_reduced_ode, OdeSolution};
pub use quadrature::{adaptive_quadrature, adaptive_simpson, QuadratureError, MAX_SUBINTERVALS};
pub use timestep::{discrete_norm, time_step_dissipative, FieldHistory, SOLVE_TOLERANCE};

#[derive(Debug, Error)]
pub enum NumericError {
    #[error("grid {nx}×{ny} is too small (need nx ≥ 9, ny ≥ 4)")]
    GridTooSmall { nx: usize, ny: usize },
    #[error("bad x range [{0}, {1}]")]
    BadRange(f64, f64),
    #[error("expression is not finite at x = {x}, y = {y}")]
    Domain { x: f64, y: f64 },
    #[error("a refinement study needs at least 3 grids, got {0}")]
    TooFewGrids(usize),
    #[error("grids must halve the spacing; found ratio {0}")]
    RefinementRatio(f64),
    #[error("field has {found} values, grid has {expected}")]
    FieldSize { expected: usize, found: usize },
    #[error("time step must be positive and finite, got {0}")]
    BadTimeStep(f64),
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("`{0}` must be nonzero")]
    ZeroParameter(&'static str),
    #[error("step size underflow at η = {0}")]
    StepUnderflow(f64),
    #[error("ODE integration failed: {0}")]
    Ode(String),
    #[error("linear solve stalled after {iterations} iterations at relative residual {residual:e}")]
    SolveFailed { iterations: usize, residual: f64 },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
