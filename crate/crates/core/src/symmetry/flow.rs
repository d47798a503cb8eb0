//! Closed-form one-parameter groups of the translation and scaling
//! generators.

use std::collections::HashMap;

use serde::Serialize;

use super::{Generator, SymmetryError};
use crate::expr::{substitute, Expr, Symbol};
use crate::geometry::FamilyKind;

/// The point map `(x, y, t, u) ↦ (x̃, ỹ, t̃, ũ)` at a fixed group parameter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Flow {
    pub x: Expr,
    pub y: Expr,
    pub t: Expr,
    pub u: Expr,
}

fn vars() -> [Symbol; 4] {
    ["x", "y", "t", "u"].map(Symbol::new)
}

impl Flow {
    fn identity() -> Flow {
        let [x, y, t, u] = vars().map(|s| Expr::symbol(&s));
        Flow { x, y, t, u }
    }

    pub fn components(&self) -> [&Expr; 4] {
        [&self.x, &self.y, &self.t, &self.u]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Flow) -> Flow {
        let map: HashMap<Symbol, Expr> = vars().into_iter().zip(other.components().map(Clone::clone)).collect();
        let [x, y, t, u] = self.components().map(|c| substitute(c, &map));
        Flow { x, y, t, u }
    }

    /// Evaluates the map at a point in double precision.
    pub fn apply(&self, p: [f64; 4]) -> Result<[f64; 4], SymmetryError> {
        let bind: HashMap<Symbol, f64> = vars().into_iter().zip(p).collect();
        let tape = crate::expr::Tape::with_roots(&self.components().map(Clone::clone));
        let v = tape.eval_f64(&bind).map_err(|e| SymmetryError::Flow(e.to_string()))?;
        Ok([v[0], v[1], v[2], v[3]])
    }
}

/// `exp(ε X)` for the generators with an elementary flow: X1, X2, X3, X4,
/// X5, X7, X8 and X11.
pub fn flow(g: &Generator, params: &std::collections::BTreeMap<String, Expr>, eps: &Expr) -> Result<Flow, SymmetryError> {
    let p = |n: &str| params.get(n).cloned().ok_or_else(|| SymmetryError::Flow(format!("missing parameter {n}")));
    let mut m = Flow::identity();
    let (x, y, t, u) = (m.x.clone(), m.y.clone(), m.t.clone(), m.u.clone());
    let quarter = eps / Expr::num(4);
    match (g.family, g.label.as_str()) {
        (_, "X1") => m.y = y + eps,
        (_, "X2") => m.t = t + eps,
        (_, "X3") => m.u = u * eps.exp(),
        (FamilyKind::PowerLaw, "X4") => {
            let a2 = p("a2")?;
            m.x = (x - &a2) * quarter.exp() + a2;
            m.y = y * (-(p("a3")? - 1) * &quarter).exp();
            m.t = t * eps.exp();
        }
        (FamilyKind::Cylinder, "X5") => m.x = x + eps,
        (FamilyKind::Cylinder, "X7") => {
            m.x = x * quarter.exp();
            m.y = y * quarter.exp();
            m.t = t * eps.exp();
        }
        (FamilyKind::Plane | FamilyKind::Cone, "X8") => {
            let b4 = p("b4")?;
            m.x = (x + &b4) * quarter.exp() - b4;
            m.t = t * eps.exp();
        }
        (FamilyKind::Tractoid, "X11") => {
            m.x = x - eps / p("b3")?;
            m.y = y * eps.exp();
        }
        _ => return Err(SymmetryError::NoClosedFlow(g.name.clone())),
    }
    Ok(m)
}

/// Image of the graph of `u = U(x, y, t)` under `exp(ε X)`, written again
/// as a function of `(x, y, t)`. The spatial part of every supported flow
/// is invertible through `exp(−ε X)` and `ũ` depends on `u` alone.
pub fn transform_solution(
    g: &Generator,
    params: &std::collections::BTreeMap<String, Expr>,
    eps: &Expr,
    solution: &Expr,
) -> Result<Expr, SymmetryError> {
    let forward = flow(g, params, eps)?;
    let back = flow(g, params, &-eps.clone())?;
    let [x, y, t, _] = vars();
    let pull: HashMap<Symbol, Expr> = [(x, back.x), (y, back.y), (t, back.t)].into_iter().collect();
    let pulled = substitute(solution, &pull);
    let lift: HashMap<Symbol, Expr> = [(Symbol::new("u"), pulled)].into_iter().collect();
    Ok(substitute(&forward.u, &lift))
}
