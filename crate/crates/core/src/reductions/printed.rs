//! Reduced equations in their published form, kept for diffing only.

use super::{phi, psi, w, Equation};
use crate::expr::Expr;
use crate::operator::SurfaceOperator;

fn coefficients(op: &SurfaceOperator) -> (Expr, Expr, Expr, Expr, Expr) {
    let (f1, f2, f3) = (op.df(1), op.df(2), op.df(3));
    (f1.clone(), f3 + f1 * f2, 2 * f2 + f1.powi(2), op.weight2().clone(), op.weight4().clone())
}

/// `−φ_υ/a = φ_ηηηη + (f‴ + f′f″)φ_η + (2f″ + f′²)φ_ηη + 2f′φ_ηηη
///  − 2e^{−2f}(f″ − f′²)φ_υυ + e^{−4f}φ_υυυυ`.
pub fn translation_two_variable(op: &SurfaceOperator, a: &Expr) -> Equation {
    let (f1, c1, c2, e2, e4) = coefficients(op);
    let f2 = op.df(2);
    let rhs = phi(4, 0) + c1 * phi(1, 0) + c2 * phi(2, 0) + 2 * &f1 * phi(3, 0) - 2 * &e2 * (f2 - f1.powi(2)) * phi(0, 2)
        + e4 * phi(0, 4);
    Equation { lhs: -phi(0, 1) / a, rhs }
}

/// `ψ⁗ + (f‴ + f′f″)ψ′ + (2f″ + f′²)ψ″ + 2f′ψ‴ = −c1/a`.
pub fn translation_ode(op: &SurfaceOperator, a: &Expr) -> Equation {
    let (f1, c1, c2, _, _) = coefficients(op);
    Equation { lhs: psi(4) + c1 * psi(1) + c2 * psi(2) + 2 * f1 * psi(3), rhs: -Expr::sym("c1") / a }
}

/// The transformed equation for `u = exp(φ + (b/a)t)`.
pub fn scaling_transformed(op: &SurfaceOperator, a: &Expr, b: &Expr) -> Equation {
    let (f1, c1, c2, e2, e4) = coefficients(op);
    let f2 = op.df(2);
    let p = phi;
    let rhs = 2 * p(1, 0) * p(3, 0)
        + 2 * p(2, 0).powi(2)
        + p(4, 0)
        + c1 * p(1, 0)
        + c2 * (p(1, 0).powi(2) + p(2, 0))
        + 2 * &f1 * (2 * p(1, 0) * p(2, 0) + p(3, 0))
        - 2 * &e2 * (f2 - f1.powi(2)) * (p(0, 1).powi(2) + p(0, 2))
        - 2 * &f1 * &e2 * (2 * p(1, 0) * p(0, 1) * p(0, 2) + p(0, 3))
        + 2 * &e2 * (2 * p(2, 0) * p(0, 2) + 2 * p(1, 0).powi(2) * p(0, 2) + 2 * p(1, 0) * p(0, 3))
        + e4 * (2 * p(0, 1) * p(0, 3) + p(0, 4));
    Equation { lhs: b / a, rhs }
}

/// `φ_υ = φ_ηηηη + (f‴ + f′f″)φ_η + (2f″ + f′²)φ_ηη + 2f′φ_ηηη`.
pub fn two_dim_stage1(op: &SurfaceOperator) -> Equation {
    let (f1, c1, c2, _, _) = coefficients(op);
    Equation { lhs: phi(0, 1), rhs: phi(4, 0) + c1 * phi(1, 0) + c2 * phi(2, 0) + 2 * f1 * phi(3, 0) }
}

/// `b/a = w⁗ + 4w′w‴ + 3w′²w″ + w′⁴ + (f‴ + f′f″)w′ + (2f″ + f′²)(w″ + w′²)
///  + 2f′(w‴ + 3w′w″ + w′³)`.
pub fn two_dim_stage2(op: &SurfaceOperator, a: &Expr, b: &Expr) -> Equation {
    let (f1, c1, c2, _, _) = coefficients(op);
    let rhs = w(4) + 4 * w(1) * w(3) + 3 * w(1).powi(2) * w(2) + w(1).powi(4) + c1 * w(1) + c2 * (w(2) + w(1).powi(2))
        + 2 * f1 * (w(3) + 3 * w(1) * w(2) + w(1).powi(3));
    Equation { lhs: b / a, rhs }
}
