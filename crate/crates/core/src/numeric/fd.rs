//! Finite-difference residuals of `u_t = L²u` for manufactured solutions.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::Serialize;

use super::NumericError;
use crate::expr::{differentiate, Expr, F64Tape, Symbol};
use crate::jet::JetCoordinate;
use crate::operator::SurfaceOperator;

/// Uniform grid `x0 = x_0 < … < x_{nx−1} = x1` times the periodic
/// `y_j = 2πj/ny`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub x0: f64,
    pub x1: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Grid {
    pub const MIN_NX: usize = 9;

    pub fn new(x0: f64, x1: f64, nx: usize, ny: usize) -> Result<Grid, NumericError> {
        if nx < Self::MIN_NX || ny < 4 {
            return Err(NumericError::GridTooSmall { nx, ny });
        }
        if !(x0.is_finite() && x1.is_finite() && x0 < x1) {
            return Err(NumericError::BadRange(x0, x1));
        }
        Ok(Grid { x0, x1, nx, ny })
    }

    /// Square `n × n` grid.
    pub fn square(x0: f64, x1: f64, n: usize) -> Result<Grid, NumericError> {
        Self::new(x0, x1, n, n)
    }

    pub fn hx(&self) -> f64 {
        (self.x1 - self.x0) / (self.nx - 1) as f64
    }

    pub fn hy(&self) -> f64 {
        TAU / self.ny as f64
    }

    pub fn x(&self, i: isize) -> f64 {
        self.x0 + i as f64 * self.hx()
    }

    pub fn y(&self, j: isize) -> f64 {
        j as f64 * self.hy()
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row-major index of node `(i, j)`.
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.ny + j
    }

    /// Samples a concrete `g(x, y)` at the nodes.
    pub fn sample(&self, g: &Expr) -> Result<Vec<f64>, NumericError> {
        let tape = F64Tape::new(g, &[Symbol::new("x"), Symbol::new("y")])?;
        (0..self.len())
            .map(|k| {
                let (x, y) = (self.x((k / self.ny) as isize), self.y((k % self.ny) as isize));
                eval_at(&tape, &[x, y], x, y)
            })
            .collect()
    }
}

/// Evaluates a tape, reporting any failure as a domain violation at `(x, y)`.
fn eval_at(tape: &F64Tape, inputs: &[f64], x: f64, y: f64) -> Result<f64, NumericError> {
    tape.eval(inputs).map_err(|_| NumericError::Domain { x, y }).and_then(|v| finite(v, x, y))
}

fn finite(v: f64, x: f64, y: f64) -> Result<f64, NumericError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(NumericError::Domain { x, y })
    }
}

/// Norms of `u_t − L²u` over the grid nodes at one time.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    pub grid: Grid,
    pub t: f64,
    pub max_norm: f64,
    /// `(hx hy Σ r²)^{1/2}`.
    pub l2_norm: f64,
    /// Bound on what rounding alone can produce through the stencils.
    pub rounding_floor: f64,
    /// Consistency order of every stencil used.
    pub stencil_order: u32,
}

impl ResidualReport {
    pub fn at_rounding_floor(&self) -> bool {
        self.max_norm <= self.rounding_floor
    }
}

/// Central differences on five samples `s[0..5]` at offsets −2..2.
fn d1(s: &[f64; 5], h: f64) -> f64 {
    (s[3] - s[1]) / (2.0 * h)
}

fn d2(s: &[f64; 5], h: f64) -> f64 {
    (s[3] - 2.0 * s[2] + s[1]) / (h * h)
}

fn d3(s: &[f64; 5], h: f64) -> f64 {
    (s[4] - 2.0 * s[3] + 2.0 * s[1] - s[0]) / (2.0 * h * h * h)
}

fn d4(s: &[f64; 5], h: f64) -> f64 {
    (s[4] - 4.0 * s[3] + 6.0 * s[2] - 4.0 * s[1] + s[0]) / (h * h * h * h)
}

/// Residual of `u_t = L²u` for a concrete `u(x, y, t)` on `f(x)`. Samples
/// outside the grid come from `u` itself (two ghost layers per side), and
/// `u_t` is differentiated exactly.
pub fn fd_residual(f: &Expr, u: &Expr, grid: &Grid, t: f64) -> Result<ResidualReport, NumericError> {
    let op = SurfaceOperator::new(f.clone())?;
    let vars = [Symbol::new("x"), Symbol::new("y"), Symbol::new("t")];
    let u_tape = F64Tape::new(u, &vars)?;
    let ut_tape = F64Tape::new(&differentiate(u, &vars[2]), &vars)?;
    let table = op.expanded_coefficients();
    let coef = |x: u8, y: u8| -> Result<F64Tape, NumericError> {
        let c = table.entries.get(&JetCoordinate { x, y, t: 0 }).cloned().unwrap_or_else(Expr::zero);
        Ok(F64Tape::new(&c, &vars[..1])?)
    };
    let jets = [(1, 0), (2, 0), (3, 0), (4, 0), (0, 2), (0, 4), (1, 2), (2, 2)];
    let tapes: Vec<F64Tape> = jets.iter().map(|&(a, b)| coef(a, b)).collect::<Result<_, _>>()?;
    let (hx, hy) = (grid.hx(), grid.hy());
    // Sum of |stencil weights| for each jet, in the order of `jets`.
    let weights = [1.0 / hx, 4.0 / hx.powi(2), 3.0 / hx.powi(3), 16.0 / hx.powi(4), 4.0 / hy.powi(2), 16.0 / hy.powi(4), 4.0 / (hx * hy * hy), 16.0 / (hx * hx * hy * hy)];

    let rows: Vec<(f64, f64, f64)> = (0..grid.nx)
        .into_par_iter()
        .map(|i| -> Result<(f64, f64, f64), NumericError> {
            let x = grid.x(i as isize);
            let c: Vec<f64> = tapes.iter().map(|tp| eval_at(tp, &[x], x, 0.0)).collect::<Result<_, _>>()?;
            let (mut max, mut sum, mut floor) = (0.0f64, 0.0, 0.0f64);
            for j in 0..grid.ny {
                let y = grid.y(j as isize);
                let mut s = [[0.0; 5]; 5];
                let mut umax = 0.0f64;
                for (p, row) in s.iter_mut().enumerate() {
                    for (q, v) in row.iter_mut().enumerate() {
                        let (dp, dq) = (p as isize - 2, q as isize - 2);
                        if dp != 0 && dq.abs() > 1 || dp.abs() > 1 && dq != 0 {
                            continue;
                        }
                        let (xs, ys) = (grid.x(i as isize + dp), grid.y(j as isize + dq));
                        *v = eval_at(&u_tape, &[xs, ys, t], xs, ys)?;
                        umax = umax.max(v.abs());
                    }
                }
                let col = |q: usize| [s[0][q], s[1][q], s[2][q], s[3][q], s[4][q]];
                let cx = col(2);
                let yy = |p: usize| d2(&s[p], hy);
                let dyy = [0.0, yy(1), yy(2), yy(3), 0.0];
                let derivs = [d1(&cx, hx), d2(&cx, hx), d3(&cx, hx), d4(&cx, hx), d2(&s[2], hy), d4(&s[2], hy), d1(&dyy, hx), d2(&dyy, hx)];
                let l2u: f64 = c.iter().zip(derivs).map(|(a, b)| a * b).sum();
                let ut = eval_at(&ut_tape, &[x, y, t], x, y)?;
                let r = ut - l2u;
                max = max.max(r.abs());
                sum += r * r;
                let bound: f64 = c.iter().zip(weights).map(|(a, w)| a.abs() * w).sum::<f64>() * umax + ut.abs();
                floor = floor.max(8.0 * f64::EPSILON * bound);
            }
            Ok((max, sum, floor))
        })
        .collect::<Result<_, _>>()?;
    let max_norm = rows.iter().map(|r| r.0).fold(0.0, f64::max);
    let l2_norm = (rows.iter().map(|r| r.1).sum::<f64>() * hx * hy).sqrt();
    let rounding_floor = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    Ok(ResidualReport { grid: *grid, t, max_norm, l2_norm, rounding_floor, stencil_order: 2 })
}

/// Verdict of a refinement study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConvergenceVerdict {
    /// Least-squares slope of `log ‖r‖∞` against `log h`.
    Order { order: f64 },
    /// Every residual sits below its rounding floor: the stencils are exact
    /// on this solution.
    Exact,
    /// Residuals grew under refinement somewhere above the floor.
    NonMonotone { order: f64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceStudy {
    pub reports: Vec<ResidualReport>,
    pub verdict: ConvergenceVerdict,
}

impl ConvergenceStudy {
    pub fn order(&self) -> Option<f64> {
        match self.verdict {
            ConvergenceVerdict::Order { order } => Some(order),
            _ => None,
        }
    }
}

/// Residuals on a refinement sequence with `hx` halving each time.
pub fn convergence_order(f: &Expr, u: &Expr, grids: &[Grid], t: f64) -> Result<ConvergenceStudy, NumericError> {
    if grids.len() < 3 {
        return Err(NumericError::TooFewGrids(grids.len()));
    }
    for w in grids.windows(2) {
        let ratio = w[0].hx() / w[1].hx();
        if (ratio - 2.0).abs() > 1e-9 {
            return Err(NumericError::RefinementRatio(ratio));
        }
    }
    let reports: Vec<ResidualReport> = grids.iter().map(|g| fd_residual(f, u, g, t)).collect::<Result<_, _>>()?;
    if reports.iter().all(ResidualReport::at_rounding_floor) {
        return Ok(ConvergenceStudy { reports, verdict: ConvergenceVerdict::Exact });
    }
    let pts: Vec<(f64, f64)> = reports.iter().map(|r| (r.grid.hx().ln(), r.max_norm.ln())).collect();
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let order = sxy / sxx;
    let monotone = reports.windows(2).all(|w| w[1].max_norm < w[0].max_norm || w[1].at_rounding_floor());
    let verdict = if monotone { ConvergenceVerdict::Order { order } } else { ConvergenceVerdict::NonMonotone { order } };
    Ok(ConvergenceStudy { reports, verdict })
}

/// Writes `x,y,value` rows for a nodal field.
pub fn write_csv(path: &std::path::Path, grid: &Grid, values: &[f64]) -> Result<(), NumericError> {
    if values.len() != grid.len() {
        return Err(NumericError::FieldSize { expected: grid.len(), found: values.len() });
    }
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["x", "y", "value"])?;
    for (k, v) in values.iter().enumerate() {
        let (i, j) = (k / grid.ny, k % grid.ny);
        w.serialize((grid.x(i as isize), grid.y(j as isize), v))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
