//! The three exact solutions obtained from the translation reduction.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::ReductionError;
use crate::expr::{parse, substitute, substitute_symbol, DomainHints, Expr, Symbol, ZeroCertificate, ZeroTester};
use crate::operator::SurfaceOperator;

/// Surfaces carrying a published exact solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExampleSurface {
    /// `f = ln b4`.
    Cylinder,
    /// `f = x`.
    Pseudosphere,
    /// `f = ½ ln x`, `x > 0`.
    Paraboloid,
}

impl ExampleSurface {
    pub const ALL: [ExampleSurface; 3] = [ExampleSurface::Cylinder, ExampleSurface::Pseudosphere, ExampleSurface::Paraboloid];

    pub fn name(self) -> &'static str {
        match self {
            ExampleSurface::Cylinder => "cylinder",
            ExampleSurface::Pseudosphere => "pseudosphere",
            ExampleSurface::Paraboloid => "paraboloid",
        }
    }

    /// Accepts the surface name or the example number `1`, `2`, `3`.
    pub fn from_name(s: &str) -> Result<Self, ReductionError> {
        match s {
            "1" | "cylinder" => Ok(ExampleSurface::Cylinder),
            "2" | "pseudosphere" | "tractoid" => Ok(ExampleSurface::Pseudosphere),
            "3" | "paraboloid" => Ok(ExampleSurface::Paraboloid),
            _ => Err(ReductionError::UnknownExample(s.to_string())),
        }
    }

    pub fn profile(self) -> Expr {
        let text = match self {
            ExampleSurface::Cylinder => "ln(b4)",
            ExampleSurface::Pseudosphere => "x",
            ExampleSurface::Paraboloid => "ln(x)/2",
        };
        parse(text).expect("profile")
    }

    fn template(self) -> &'static str {
        match self {
            ExampleSurface::Cylinder => "c1*(y - t/a - x^4/(24*a)) + c2*x^3/6 + c3*x^2/2 + c4*x + c5",
            ExampleSurface::Pseudosphere => "c1*(y - t/a - x^2/(2*a)) + (c2*(x + 2) + c3)*exp(-x) + c4*x + c5",
            ExampleSurface::Paraboloid => "c1*(y - t/a - x^4/(42*a)) + c2*x^2/2 + 2*c3*x^(1/2) + 2*c4*x^(5/2)/5 + c5",
        }
    }

    /// Sampling ranges: `x` inside the surface's domain, constants and `a`
    /// away from zero.
    pub fn hints(self) -> DomainHints {
        let mut h = DomainHints::new().with("a", 0.5, 2.0).with("b4", 0.5, 1.5);
        match self {
            ExampleSurface::Paraboloid => h.set("x", 0.5, 2.0),
            _ => h.set("x", -1.0, 1.0),
        }
        h
    }
}

/// `u(x, y, t)` on one of the example surfaces.
#[derive(Debug, Clone, Serialize)]
pub struct ExactSolution {
    pub surface: ExampleSurface,
    #[serde(serialize_with = "super::as_text")]
    pub profile: Expr,
    #[serde(serialize_with = "super::as_text")]
    pub u: Expr,
}

impl ExactSolution {
    pub fn operator(&self) -> SurfaceOperator {
        SurfaceOperator::new(self.profile.clone()).expect("example profiles depend on x only")
    }

    /// `ψ(η) = u − c1(y − t/a)`, obtained as `u` at `y = t = 0`.
    pub fn psi(&self) -> Expr {
        let at0 = substitute_symbol(&self.u, &Symbol::new("y"), &Expr::zero());
        substitute_symbol(&at0, &Symbol::new("t"), &Expr::zero())
    }
}

/// The published solution with `c1 … c5`, `a` (and `b4` on the cylinder)
/// replaced by the given values; unset constants stay symbolic.
pub fn example_solution(surface: ExampleSurface, constants: &BTreeMap<String, Expr>) -> ExactSolution {
    let map: HashMap<Symbol, Expr> = constants.iter().map(|(k, v)| (Symbol::new(k), v.clone())).collect();
    let u = substitute(&parse(surface.template()).expect("template"), &map);
    let profile = substitute(&surface.profile(), &map);
    ExactSolution { surface, profile, u }
}

/// Certifies `u_t − L²u = 0`.
pub fn verify_example(sol: &ExactSolution, tester: &ZeroTester) -> Result<ZeroCertificate, ReductionError> {
    let residual = sol.operator().pde_residual(&sol.u)?;
    Ok(tester.check(&residual, &sol.surface.hints()))
}
