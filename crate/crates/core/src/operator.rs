//! The Laplace–Beltrami operator `L = f′ ∂x + ∂xx + e^{−2f} ∂yy` of the
//! metric `dx² + e^{2f(x)} dy²` and its square.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::expr::{add, differentiate, free_symbols, DomainHints, Expr, Symbol, ZeroCertificate, ZeroTester};
use crate::jet::{self, explicit_partial, jet_order, jets_in, profile_symbol, Direction, JetCoordinate, JetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("profile depends on `{0}`; it must be a function of x only")]
    ProfileNotInX(String),
    #[error("operand has jet order {order}; applying the operator would exceed the cap")]
    OrderTooHigh { order: u32 },
    #[error("expected a function of x, y, t but found jet variable `{0}`")]
    JetInFunction(String),
    #[error(transparent)]
    Jet(#[from] JetError),
}

/// `L` and `L²` for a fixed profile `f(x)`, with `f′ … f⁗` and the weights
/// `e^{−2f}`, `e^{−4f}` computed once.
#[derive(Debug, Clone)]
pub struct SurfaceOperator {
    derivs: Vec<Expr>,
    e2: Expr,
    e4: Expr,
}

impl SurfaceOperator {
    pub fn new(f: Expr) -> Result<Self, OperatorError> {
        for s in free_symbols(&f) {
            let n = s.name();
            if matches!(n, "y" | "t") || JetCoordinate::parse(n).is_some() {
                return Err(OperatorError::ProfileNotInX(n.to_string()));
            }
        }
        let mut derivs = vec![f.clone()];
        for k in 0..5 {
            derivs.push(explicit_partial(&derivs[k], Direction::X));
        }
        let e2 = (Expr::num(-2) * &f).exp();
        let e4 = (Expr::num(-4) * &f).exp();
        Ok(SurfaceOperator { derivs, e2, e4 })
    }

    /// Operator for an unspecified profile written through `f, f_x, f_xx, …`.
    pub fn generic() -> Self {
        Self::new(Expr::symbol(&profile_symbol(0))).expect("generic profile")
    }

    pub fn profile(&self) -> &Expr {
        &self.derivs[0]
    }

    /// `k`-th derivative of the profile, `k ≤ 5`.
    pub fn df(&self, k: usize) -> &Expr {
        &self.derivs[k]
    }

    /// `e^{−2f}`.
    pub fn weight2(&self) -> &Expr {
        &self.e2
    }

    /// `e^{−4f}`.
    pub fn weight4(&self) -> &Expr {
        &self.e4
    }

    /// `L F` with total derivatives; `F` may depend on jets up to order 3.
    pub fn laplace_apply(&self, f: &Expr) -> Result<Expr, OperatorError> {
        let order = jet_order(f);
        if order + 2 > jet::MAX_ORDER {
            return Err(OperatorError::OrderTooHigh { order });
        }
        let fx = jet::total_derivative(f, Direction::X)?;
        let fxx = jet::total_derivative(&fx, Direction::X)?;
        let fy = jet::total_derivative(f, Direction::Y)?;
        let fyy = jet::total_derivative(&fy, Direction::Y)?;
        Ok(add([&self.derivs[1] * fx, fxx, &self.e2 * fyy]))
    }

    /// `L² F = L(L F)`; `F` may depend on jets up to order 1.
    pub fn biharmonic_apply(&self, f: &Expr) -> Result<Expr, OperatorError> {
        self.laplace_apply(&self.laplace_apply(f)?)
    }

    /// `L g` for a plain function `g(x, y, t, u)` (with `u` an independent
    /// coordinate, not a jet).
    pub fn laplace_partial(&self, g: &Expr) -> Expr {
        let gx = explicit_partial(g, Direction::X);
        let gxx = explicit_partial(&gx, Direction::X);
        let gyy = explicit_partial(&explicit_partial(g, Direction::Y), Direction::Y);
        add([&self.derivs[1] * gx, gxx, &self.e2 * gyy])
    }

    pub fn biharmonic_partial(&self, g: &Expr) -> Expr {
        self.laplace_partial(&self.laplace_partial(g))
    }

    /// `∂t u − L² u` for a concrete `u(x, y, t)`.
    pub fn pde_residual(&self, u: &Expr) -> Result<Expr, OperatorError> {
        if let Some(j) = jets_in(u).into_iter().next() {
            return Err(OperatorError::JetInFunction(j.name()));
        }
        Ok(differentiate(u, &Symbol::new("t")) - self.biharmonic_partial(u))
    }

    /// Closed-form coefficients of `L² u` in the jets of `u`.
    pub fn expanded_coefficients(&self) -> CoefficientTable {
        let (f1, f2, f3) = (&self.derivs[1], &self.derivs[2], &self.derivs[3]);
        let e2 = &self.e2;
        let j = |x, y| JetCoordinate { x, y, t: 0 };
        let mut entries = BTreeMap::new();
        entries.insert(j(4, 0), Expr::one());
        entries.insert(j(3, 0), 2 * f1);
        entries.insert(j(2, 0), 2 * f2 + f1.powi(2));
        entries.insert(j(1, 0), f3 + f1 * f2);
        entries.insert(j(0, 4), self.e4.clone());
        entries.insert(j(2, 2), 2 * e2);
        entries.insert(j(1, 2), -2 * f1 * e2);
        entries.insert(j(0, 2), 2 * e2 * (f1.powi(2) - f2));
        CoefficientTable { entries }
    }

    /// Compares the closed-form table with the coefficients extracted from
    /// `L² u` itself, jet by jet.
    pub fn certify_coefficients(&self, tester: &ZeroTester, hints: &DomainHints) -> Result<Vec<CoefficientCheck>, OperatorError> {
        let lu = self.biharmonic_apply(&JetCoordinate::U.expr())?;
        let table = self.expanded_coefficients();
        let mut coords: Vec<JetCoordinate> = jets_in(&lu).into_iter().collect();
        coords.extend(table.entries.keys().copied());
        coords.sort();
        coords.dedup();
        Ok(coords
            .into_iter()
            .map(|j| {
                let derived = differentiate(&lu, &j.symbol());
                let closed = table.entries.get(&j).cloned().unwrap_or_else(Expr::zero);
                CoefficientCheck { jet: j, certificate: tester.check(&(derived - closed), hints) }
            })
            .collect())
    }
}

/// `L² u = Σ c_J u_J`.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    pub entries: BTreeMap<JetCoordinate, Expr>,
}

impl Serialize for CoefficientTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.entries.iter().map(|(j, c)| (j.name(), c.to_string())))
    }
}

impl CoefficientTable {
    /// `Σ c_J u_J` as an expression.
    pub fn contract(&self) -> Expr {
        add(self.entries.iter().map(|(j, c)| c * j.expr()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CoefficientCheck {
    pub jet: JetCoordinate,
    pub certificate: ZeroCertificate,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{is_zero, parse};

    #[test]
    fn generic_table_matches_operator() {
        let op = SurfaceOperator::generic();
        let checks = op.certify_coefficients(&ZeroTester::default(), &DomainHints::new()).unwrap();
        assert_eq!(checks.len(), 8);
        assert!(checks.iter().all(|c| c.certificate.is_zero()));
    }

    #[test]
    fn order_guard() {
        let op = SurfaceOperator::generic();
        assert!(op.laplace_apply(&parse("u_xxxx").unwrap()).is_err());
        assert!(op.biharmonic_apply(&parse("u_xx").unwrap()).is_err());
    }

    #[test]
    fn cylinder_exponential_eigenfunction() {
        let op = SurfaceOperator::new(parse("ln(2)").unwrap()).unwrap();
        let e = op.biharmonic_partial(&parse("exp(3*x)").unwrap()) - parse("81*exp(3*x)").unwrap();
        assert!(is_zero(&e, &DomainHints::new()).is_zero());
    }

    #[test]
    fn rejects_non_x_profile() {
        assert!(SurfaceOperator::new(parse("x*y").unwrap()).is_err());
    }
}
