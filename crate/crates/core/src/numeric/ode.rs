//! Dormand–Prince integration of the reduced translation ODE
//! `ψ⁗ + (f‴ + f′f″)ψ′ + (2f″ + f′²)ψ″ + 2f′ψ‴ = −c1/a`.
//!
//! The four homogeneous basis solutions and one particular solution (for a
//! unit forcing) are integrated together on one step sequence, so the
//! sampled `ψ` is an exact linear combination of them.

use std::cell::Cell;

use ode_solvers::dop_shared::{IntegrationError, OutputType};
use ode_solvers::{Dopri5, SVector, System};
use serde::Serialize;

use super::NumericError;
use crate::expr::{Expr, F64Tape, Symbol};
use crate::operator::SurfaceOperator;

/// `ψ, ψ′, ψ″, ψ‴` sampled on `η`.
#[derive(Debug, Clone, Serialize)]
pub struct OdeSolution {
    pub eta: Vec<f64>,
    pub state: Vec<[f64; 4]>,
}

impl OdeSolution {
    pub fn psi(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.eta.iter().copied().zip(self.state.iter().map(|s| s[0]))
    }
}

/// Basis columns `Φ_0..Φ_3` then the particular solution, four entries each.
type Fundamental = SVector<f64, 20>;

struct Reduced {
    coef: [F64Tape; 3],
    failed: Cell<Option<f64>>,
}

impl System<f64, Fundamental> for &Reduced {
    fn system(&self, eta: f64, y: &Fundamental, dy: &mut Fundamental) {
        let mut c = [0.0; 3];
        for (v, tape) in c.iter_mut().zip(&self.coef) {
            *v = match tape.eval(&[eta]) {
                Ok(v) if v.is_finite() => v,
                _ => {
                    self.failed.set(Some(eta));
                    f64::NAN
                }
            };
        }
        for k in 0..5 {
            let o = 4 * k;
            let forcing = if k == 4 { -1.0 } else { 0.0 };
            dy[o] = y[o + 1];
            dy[o + 1] = y[o + 2];
            dy[o + 2] = y[o + 3];
            dy[o + 3] = forcing - c[0] * y[o + 1] - c[1] * y[o + 2] - c[2] * y[o + 3];
        }
    }
}

/// Integrates forward from `eta0` to `eta1 > eta0` with relative and absolute local error
/// `tol`, returning the state at `samples + 1` evenly spaced points.
#[allow(clippy::too_many_arguments)]
pub fn integrate_reduced_ode(
    f: &Expr,
    c1: f64,
    a: f64,
    initial: [f64; 4],
    eta0: f64,
    eta1: f64,
    samples: usize,
    tol: f64,
) -> Result<OdeSolution, NumericError> {
    if !(tol > 0.0) {
        return Err(NumericError::BadTolerance(tol));
    }
    if !(eta1 > eta0) {
        return Err(NumericError::BadRange(eta0, eta1));
    }
    if a == 0.0 {
        return Err(NumericError::ZeroParameter("a"));
    }
    let op = SurfaceOperator::new(f.clone())?;
    let x = [Symbol::new("x")];
    let (f1, f2, f3) = (op.df(1), op.df(2), op.df(3));
    let coef = [
        F64Tape::new(&(f3 + f1 * f2), &x)?,
        F64Tape::new(&(2 * f2 + f1.powi(2)), &x)?,
        F64Tape::new(&(2 * f1), &x)?,
    ];
    let sys = Reduced { coef, failed: Cell::new(None) };
    let dx = (eta1 - eta0) / samples.max(1) as f64;
    let mut start = Fundamental::zeros();
    for k in 0..4 {
        start[5 * k] = 1.0;
    }
    // Each output interval is its own run ending exactly on the sample, so
    // no value comes from the dense-output interpolant.
    let mut eta = vec![eta0];
    let mut ys = vec![start];
    let n = samples.max(1);
    for k in 0..n {
        let lo = eta[k];
        let hi = if k + 1 == n { eta1 } else { eta0 + (k + 1) as f64 * dx };
        let mut solver = Dopri5::from_param(
            &sys,
            lo,
            hi,
            hi - lo,
            ys[k],
            tol,
            tol,
            0.9,
            0.04,
            0.2,
            10.0,
            hi - lo,
            0.0,
            100_000,
            1000,
            OutputType::Sparse,
        );
        let result = solver.integrate();
        if let Some(eta) = sys.failed.get() {
            return Err(NumericError::Domain { x: eta, y: 0.0 });
        }
        match result {
            Ok(_) => {}
            Err(IntegrationError::StepSizeUnderflow { x }) => return Err(NumericError::StepUnderflow(x)),
            Err(e) => return Err(NumericError::Ode(e.to_string())),
        }
        let last = *solver.results().get().1.last().ok_or_else(|| NumericError::Ode("no accepted step".into()))?;
        eta.push(hi);
        ys.push(last);
    }
    let weights = [initial[0], initial[1], initial[2], initial[3], c1 / a];
    let state = ys
        .iter()
        .map(|v| {
            let mut s = [0.0; 4];
            for (m, out) in s.iter_mut().enumerate() {
                *out = weights.iter().enumerate().map(|(k, w)| w * v[4 * k + m]).sum();
            }
            s
        })
        .collect();
    Ok(OdeSolution { eta, state })
}
