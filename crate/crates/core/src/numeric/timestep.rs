//! Backward Euler for the dissipative flow `u_t = −L²u` on a grid, with
//! even reflection across the `x` ends and periodic `y`.

use rayon::prelude::*;
use serde::Serialize;

use super::{Grid, NumericError};
use crate::expr::{Expr, F64Tape, Symbol};
use crate::operator::SurfaceOperator;

/// Relative residual at which the linear solves stop.
pub const SOLVE_TOLERANCE: f64 = 1e-10;
const MAX_ITERATIONS: usize = 5_000;

/// Sparse matrix by rows.
#[derive(Debug, Clone)]
struct Csr {
    rows: Vec<Vec<(usize, f64)>>,
}

impl Csr {
    fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.rows.par_iter().map(|r| r.iter().map(|&(k, a)| a * v[k]).sum()).collect()
    }

    fn entry(&self, r: usize, c: usize) -> f64 {
        self.rows[r].iter().filter(|e| e.0 == c).map(|e| e.1).sum()
    }
}

/// The discrete `L` with second-order central differences.
fn laplacian(f: &Expr, grid: &Grid) -> Result<Csr, NumericError> {
    let op = SurfaceOperator::new(f.clone())?;
    let x = [Symbol::new("x")];
    let f1 = F64Tape::new(op.df(1), &x)?;
    let e2 = F64Tape::new(op.weight2(), &x)?;
    let (hx, hy) = (grid.hx(), grid.hy());
    let (nx, ny) = (grid.nx, grid.ny);
    let reflect = |i: isize| -> usize {
        let last = nx as isize - 1;
        (if i < 0 { -i } else if i > last { 2 * last - i } else { i }) as usize
    };
    let mut rows = Vec::with_capacity(grid.len());
    for i in 0..nx {
        let xi = grid.x(i as isize);
        let (a, w) = (f1.eval(&[xi])?, e2.eval(&[xi])?);
        if !(a.is_finite() && w.is_finite()) {
            return Err(NumericError::Domain { x: xi, y: 0.0 });
        }
        let (ip, im) = (reflect(i as isize + 1), reflect(i as isize - 1));
        for j in 0..ny {
            let (jp, jm) = ((j + 1) % ny, (j + ny - 1) % ny);
            let mut row = vec![
                (grid.index(i, j), -2.0 / (hx * hx) - 2.0 * w / (hy * hy)),
                (grid.index(ip, j), 1.0 / (hx * hx) + a / (2.0 * hx)),
                (grid.index(im, j), 1.0 / (hx * hx) - a / (2.0 * hx)),
                (grid.index(i, jp), w / (hy * hy)),
                (grid.index(i, jm), w / (hy * hy)),
            ];
            row.sort_by_key(|e| e.0);
            row.dedup_by(|b, a| {
                if a.0 == b.0 {
                    a.1 += b.1;
                    true
                } else {
                    false
                }
            });
            rows.push(row);
        }
    }
    Ok(Csr { rows })
}

/// `(I + dt L²) v = rhs` by BiCGSTAB with a Jacobi preconditioner.
struct Implicit {
    l: Csr,
    dt: f64,
    inv_diag: Vec<f64>,
}

impl Implicit {
    fn new(l: Csr, dt: f64) -> Implicit {
        let n = l.rows.len();
        let inv_diag = (0..n)
            .map(|r| {
                let l2: f64 = l.rows[r].iter().map(|&(k, a)| a * l.entry(k, r)).sum();
                1.0 / (1.0 + dt * l2)
            })
            .collect();
        Implicit { l, dt, inv_diag }
    }

    fn apply(&self, v: &[f64]) -> Vec<f64> {
        let l2 = self.l.apply(&self.l.apply(v));
        v.iter().zip(l2).map(|(a, b)| a + self.dt * b).collect()
    }

    fn precondition(&self, v: &[f64]) -> Vec<f64> {
        v.iter().zip(&self.inv_diag).map(|(a, d)| a * d).collect()
    }

    fn solve(&self, rhs: &[f64], guess: &[f64]) -> Result<Vec<f64>, NumericError> {
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        let axpy = |y: &mut [f64], a: f64, x: &[f64]| y.iter_mut().zip(x).for_each(|(y, x)| *y += a * x);
        let bnorm = dot(rhs, rhs).sqrt();
        if bnorm == 0.0 {
            return Ok(vec![0.0; rhs.len()]);
        }
        let mut x = guess.to_vec();
        let ax = self.apply(&x);
        let mut r: Vec<f64> = rhs.iter().zip(ax).map(|(b, a)| b - a).collect();
        let r0 = r.clone();
        let (mut rho, mut alpha, mut omega) = (1.0, 1.0, 1.0);
        let mut v = vec![0.0; rhs.len()];
        let mut p = vec![0.0; rhs.len()];
        for it in 0..MAX_ITERATIONS {
            if dot(&r, &r).sqrt() <= SOLVE_TOLERANCE * bnorm {
                return Ok(x);
            }
            let rho_new = dot(&r0, &r);
            if rho_new == 0.0 || omega == 0.0 {
                return Err(NumericError::SolveFailed { iterations: it, residual: dot(&r, &r).sqrt() / bnorm });
            }
            let beta = (rho_new / rho) * (alpha / omega);
            rho = rho_new;
            for k in 0..p.len() {
                p[k] = r[k] + beta * (p[k] - omega * v[k]);
            }
            let ph = self.precondition(&p);
            v = self.apply(&ph);
            alpha = rho / dot(&r0, &v);
            let mut s = r.clone();
            axpy(&mut s, -alpha, &v);
            axpy(&mut x, alpha, &ph);
            if dot(&s, &s).sqrt() <= SOLVE_TOLERANCE * bnorm {
                return Ok(x);
            }
            let sh = self.precondition(&s);
            let t = self.apply(&sh);
            omega = dot(&t, &s) / dot(&t, &t);
            axpy(&mut x, omega, &sh);
            r = s;
            axpy(&mut r, -omega, &t);
        }
        let res = dot(&r, &r).sqrt() / bnorm;
        Err(NumericError::SolveFailed { iterations: MAX_ITERATIONS, residual: res })
    }
}

/// Field snapshots after each step, the initial field first.
#[derive(Debug, Clone, Serialize)]
pub struct FieldHistory {
    pub grid: Grid,
    pub dt: f64,
    pub fields: Vec<Vec<f64>>,
}

impl FieldHistory {
    /// Discrete 2-norms with trapezoid weights in `x`, one per snapshot.
    pub fn norms(&self) -> Vec<f64> {
        self.fields.iter().map(|u| discrete_norm(&self.grid, u)).collect()
    }
}

/// `(Σ w_i hx hy u²)^{1/2}` with `w = ½` on the two `x` ends.
pub fn discrete_norm(grid: &Grid, u: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..grid.nx {
        let w = if i == 0 || i == grid.nx - 1 { 0.5 } else { 1.0 };
        for j in 0..grid.ny {
            s += w * u[grid.index(i, j)].powi(2);
        }
    }
    (s * grid.hx() * grid.hy()).sqrt()
}

/// Advances `u0` by `steps` backward Euler steps of `u_t = −L²u`.
pub fn time_step_dissipative(f: &Expr, u0: &[f64], grid: &Grid, dt: f64, steps: usize) -> Result<FieldHistory, NumericError> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(NumericError::BadTimeStep(dt));
    }
    if u0.len() != grid.len() {
        return Err(NumericError::FieldSize { expected: grid.len(), found: u0.len() });
    }
    let system = Implicit::new(laplacian(f, grid)?, dt);
    let mut fields = vec![u0.to_vec()];
    for _ in 0..steps {
        let prev = fields.last().expect("initial field");
        let next = system.solve(prev, prev)?;
        fields.push(next);
    }
    Ok(FieldHistory { grid: *grid, dt, fields })
}
