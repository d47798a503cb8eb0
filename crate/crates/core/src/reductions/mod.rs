//! Similarity reductions along the subalgebras `⟨X1 + aX2⟩`, `⟨aX2 + bX3⟩`
//! and `⟨X1, aX2 + bX3⟩`, and the exact solutions built from them.
//!
//! Every reduced equation is derived by substituting the invariant form
//! into `u_t = L²u` through [`SurfaceOperator`]. The published expansions
//! are kept only to be diffed against, term by term.

mod examples;
mod printed;

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::expr::{poly, substitute, substitute_symbol, DomainHints, Expr, Symbol, ZeroCertificate, ZeroTester};
use crate::jet::{jets_in, Direction, JetCoordinate, JetError};
use crate::operator::{OperatorError, SurfaceOperator};

pub use examples::{example_solution, verify_example, ExactSolution, ExampleSurface};

const EXPAND_BUDGET: usize = 200_000;

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("the subalgebra parameter `{0}` must be nonzero")]
    ZeroParameter(&'static str),
    #[error("expansion exceeded its budget of {0} terms")]
    Budget(usize),
    #[error("unknown example surface `{0}`")]
    UnknownExample(String),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

/// Which subalgebra is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subalgebra {
    /// `X1 + aX2`.
    Translation,
    /// `aX2 + bX3`.
    Scaling,
    /// `⟨X1, aX2 + bX3⟩`.
    TwoDim,
}

impl Subalgebra {
    pub fn name(self) -> &'static str {
        match self {
            Subalgebra::Translation => "translation",
            Subalgebra::Scaling => "scaling",
            Subalgebra::TwoDim => "two-dim",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "translation" => Some(Subalgebra::Translation),
            "scaling" => Some(Subalgebra::Scaling),
            "two-dim" | "two_dim" | "2d" => Some(Subalgebra::TwoDim),
            _ => None,
        }
    }
}

/// `φ_{η^i υ^j}`, the jets of a function of the two similarity variables.
pub fn phi(i: usize, j: usize) -> Expr {
    reduced_jet("φ", &[("η", i), ("υ", j)])
}

/// `ψ^{(i)}(η)`.
pub fn psi(i: usize) -> Expr {
    reduced_jet("ψ", &[("η", i)])
}

/// `w^{(i)}(r)`.
pub fn w(i: usize) -> Expr {
    reduced_jet("w", &[("r", i)])
}

fn reduced_jet(base: &str, vars: &[(&str, usize)]) -> Expr {
    let sub: String = vars.iter().map(|(v, n)| v.repeat(*n)).collect();
    if sub.is_empty() {
        Expr::sym(base)
    } else {
        Expr::sym(&format!("{base}_{sub}"))
    }
}

fn is_reduced_jet(s: &Symbol) -> bool {
    let n = s.name();
    ["φ", "ψ", "w"].iter().any(|b| n == *b || n.strip_prefix(b).is_some_and(|r| r.starts_with('_')))
}

/// An equation `lhs = rhs` in reduced variables.
#[derive(Debug, Clone, Serialize)]
pub struct Equation {
    #[serde(serialize_with = "as_text")]
    pub lhs: Expr,
    #[serde(serialize_with = "as_text")]
    pub rhs: Expr,
}

fn as_text<S: serde::Serializer>(e: &Expr, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_string())
}

impl Equation {
    /// `rhs − lhs`.
    pub fn residual(&self) -> Expr {
        &self.rhs - &self.lhs
    }
}

impl std::fmt::Display for Equation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// One monomial in the reduced jets whose coefficient differs between the
/// derived and the published equation.
#[derive(Debug, Clone, Serialize)]
pub struct TermDiff {
    pub monomial: String,
    #[serde(serialize_with = "as_text")]
    pub derived: Expr,
    #[serde(serialize_with = "as_text")]
    pub published: Expr,
    pub certificate: ZeroCertificate,
}

impl TermDiff {
    /// The term is absent from the published form.
    pub fn missing(&self) -> bool {
        self.published.is_zero_literal()
    }
}

/// Compares two equations monomial by monomial in the reduced jets.
pub fn term_diff(derived: &Equation, published: &Equation, tester: &ZeroTester, hints: &DomainHints) -> Result<Vec<TermDiff>, ReductionError> {
    let split = |e: &Equation| poly::coefficients(&e.residual(), is_reduced_jet, EXPAND_BUDGET).map_err(|b| ReductionError::Budget(b.0));
    let d = split(derived)?;
    let p = split(published)?;
    let mut keys: Vec<&poly::VarMonomial> = d.keys().chain(p.keys()).collect();
    keys.sort();
    keys.dedup();
    let mut out = Vec::new();
    for k in keys {
        let dc = d.get(k).cloned().unwrap_or_else(Expr::zero);
        let pc = p.get(k).cloned().unwrap_or_else(Expr::zero);
        let certificate = tester.check(&(&dc - &pc), hints);
        if !certificate.is_zero() {
            out.push(TermDiff { monomial: monomial_text(k), derived: dc, published: pc, certificate });
        }
    }
    Ok(out)
}

fn monomial_text(m: &poly::VarMonomial) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|(s, n)| if *n == 1 { s.name().to_string() } else { format!("{}^{n}", s.name()) })
        .collect::<Vec<_>>()
        .join("*")
}

/// A derived reduced equation with its published counterpart.
#[derive(Debug, Clone, Serialize)]
pub struct Stage {
    pub label: String,
    pub derived: Equation,
    pub published: Equation,
    pub diff: Vec<TermDiff>,
}

/// Outcome of one reduction.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionResult {
    pub subalgebra: Subalgebra,
    #[serde(serialize_with = "as_text")]
    pub a: Expr,
    #[serde(serialize_with = "as_text")]
    pub b: Expr,
    /// `(name, expression in x, y, t)` for each similarity variable.
    pub similarity_variables: Vec<(String, String)>,
    pub invariant_solution: String,
    pub stages: Vec<Stage>,
}

impl ReductionResult {
    pub fn stage(&self, label: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.label == label)
    }
}

/// Sampling ranges for the constants of the reductions.
pub fn reduction_hints(base: &DomainHints) -> DomainHints {
    let mut h = base.clone();
    for s in ["a", "b", "c1"] {
        h.set(s, 0.5, 2.0);
    }
    h
}

fn check_nonzero(a: &Expr, name: &'static str) -> Result<(), ReductionError> {
    if a.is_zero_literal() {
        Err(ReductionError::ZeroParameter(name))
    } else {
        Ok(())
    }
}

/// Rewrites every `u_J` through `map(J)`.
fn rewrite_jets(e: &Expr, map: impl Fn(JetCoordinate) -> Expr) -> Expr {
    let m: HashMap<Symbol, Expr> = jets_in(e).into_iter().map(|j| (j.symbol(), map(j))).collect();
    substitute(e, &m)
}

/// `L²u` written through the jets of `u`.
fn biharmonic_jets(op: &SurfaceOperator) -> Result<Expr, ReductionError> {
    Ok(op.biharmonic_apply(&JetCoordinate::U.expr())?)
}

/// `e^{−u} L² e^{u}` written through the jets of `u`.
fn exponential_symbol(op: &SurfaceOperator) -> Result<Expr, ReductionError> {
    let l2 = op.biharmonic_apply(&JetCoordinate::U.expr().exp())?;
    Ok(substitute_symbol(&l2, &JetCoordinate::U.symbol(), &Expr::zero()))
}

/// The translation-invariant form `u = φ(η, υ)`, `η = x`, `υ = y − t/a`,
/// its two-variable equation, and the ODE left by the ansatz
/// `φ = c1 υ + ψ(η)`.
pub fn reduce_translation_subalgebra(
    a: &Expr,
    op: &SurfaceOperator,
    tester: &ZeroTester,
    hints: &DomainHints,
) -> Result<ReductionResult, ReductionError> {
    check_nonzero(a, "a")?;
    let hints = reduction_hints(hints);
    let rhs = rewrite_jets(&biharmonic_jets(op)?, |c| phi(c.x as usize, c.y as usize));
    let two_var = Equation { lhs: -phi(0, 1) / a, rhs };
    let c1 = Expr::sym("c1");
    let ansatz = |e: &Expr| {
        let m: HashMap<Symbol, Expr> = crate::expr::free_symbols(e)
            .into_iter()
            .filter_map(|s| {
                let n = s.name().to_string();
                let sub = n.strip_prefix("φ_")?;
                let ups = sub.matches('υ').count();
                let eta = sub.matches('η').count();
                let v = match (eta, ups) {
                    (i, 0) => psi(i),
                    (0, 1) => c1.clone(),
                    _ => Expr::zero(),
                };
                Some((s, v))
            })
            .collect();
        substitute(e, &m)
    };
    let ode = Equation { lhs: ansatz(&two_var.rhs), rhs: ansatz(&two_var.lhs) };
    let published_two_var = printed::translation_two_variable(op, a);
    let published_ode = printed::translation_ode(op, a);
    let stages = vec![
        Stage {
            label: "two-variable".into(),
            diff: term_diff(&two_var, &published_two_var, tester, &hints)?,
            derived: two_var,
            published: published_two_var,
        },
        Stage { label: "ode".into(), diff: term_diff(&ode, &published_ode, tester, &hints)?, derived: ode, published: published_ode },
    ];
    Ok(ReductionResult {
        subalgebra: Subalgebra::Translation,
        a: a.clone(),
        b: Expr::zero(),
        similarity_variables: vec![("η".into(), "x".into()), ("υ".into(), format!("y - t/({a})"))],
        invariant_solution: "u = φ(η, υ), ansatz φ = c1 υ + ψ(η)".into(),
        stages,
    })
}

/// The scaling-invariant form `u = exp(φ(η, υ) + (b/a) t)`, `η = x`, `υ = y`.
pub fn reduce_scaling_subalgebra(
    a: &Expr,
    b: &Expr,
    op: &SurfaceOperator,
    tester: &ZeroTester,
    hints: &DomainHints,
) -> Result<ReductionResult, ReductionError> {
    check_nonzero(a, "a")?;
    let hints = reduction_hints(hints);
    let derived = Equation { lhs: b / a, rhs: rewrite_jets(&exponential_symbol(op)?, |c| phi(c.x as usize, c.y as usize)) };
    let published = printed::scaling_transformed(op, a, b);
    Ok(ReductionResult {
        subalgebra: Subalgebra::Scaling,
        a: a.clone(),
        b: b.clone(),
        similarity_variables: vec![("η".into(), "x".into()), ("υ".into(), "y".into())],
        invariant_solution: format!("u = exp(φ(η, υ) + ({b})/({a}) t)"),
        stages: vec![Stage {
            label: "transformed".into(),
            diff: term_diff(&derived, &published, tester, &hints)?,
            derived,
            published,
        }],
    })
}

/// Reduction by `X1` to `φ(η, υ)`, `η = x`, `υ = t`, followed by the
/// inherited `a∂υ + bφ∂φ` giving `φ = exp(w(r) + (b/a) υ)`, `r = η`.
pub fn reduce_two_dim(
    a: &Expr,
    b: &Expr,
    op: &SurfaceOperator,
    tester: &ZeroTester,
    hints: &DomainHints,
) -> Result<ReductionResult, ReductionError> {
    check_nonzero(a, "a")?;
    let hints = reduction_hints(hints);
    let y_free = |c: JetCoordinate, f: &dyn Fn(usize) -> Expr| if c.y == 0 { f(c.x as usize) } else { Expr::zero() };
    let stage1 = Equation { lhs: phi(0, 1), rhs: rewrite_jets(&biharmonic_jets(op)?, |c| y_free(c, &|i| phi(i, 0))) };
    let stage2 = Equation { lhs: b / a, rhs: rewrite_jets(&exponential_symbol(op)?, |c| y_free(c, &w)) };
    let p1 = printed::two_dim_stage1(op);
    let p2 = printed::two_dim_stage2(op, a, b);
    Ok(ReductionResult {
        subalgebra: Subalgebra::TwoDim,
        a: a.clone(),
        b: b.clone(),
        similarity_variables: vec![("η".into(), "x".into()), ("υ".into(), "t".into()), ("r".into(), "x".into())],
        invariant_solution: format!("u = φ(η, υ) = exp(w(r) + ({b})/({a}) υ)"),
        stages: vec![
            Stage { label: "stage-1".into(), diff: term_diff(&stage1, &p1, tester, &hints)?, derived: stage1, published: p1 },
            Stage { label: "stage-2".into(), diff: term_diff(&stage2, &p2, tester, &hints)?, derived: stage2, published: p2 },
        ],
    })
}

/// Evaluates a reduced equation on concrete functions: `φ` given in the
/// symbols `η, υ` (or `ψ`, `w` in `η`, `r`).
pub fn evaluate_on(eq: &Equation, name: &str, g: &Expr, vars: &[&str]) -> Expr {
    let derivs = |e: &Expr| {
        let mut map = HashMap::new();
        for s in crate::expr::free_symbols(e) {
            let n = s.name();
            let sub = if n == name {
                Some("")
            } else {
                n.strip_prefix(name).and_then(|r| r.strip_prefix('_'))
            };
            let Some(sub) = sub else { continue };
            let mut d = g.clone();
            for c in sub.chars() {
                let v = vars.iter().find(|v| v.starts_with(c)).expect("reduced variable");
                d = crate::expr::differentiate(&d, &Symbol::new(v));
            }
            map.insert(s.clone(), d);
        }
        map
    };
    let r = eq.residual();
    substitute(&r, &derivs(&r))
}

/// `ψ⁗ + (f‴ + f′f″)ψ′ + (2f″ + f′²)ψ″ + 2f′ψ‴ + c1/a` for a concrete
/// `ψ(x)`, the residual of the reduced ODE of the translation subalgebra.
pub fn translation_ode_residual(op: &SurfaceOperator, psi_x: &Expr, c1: &Expr, a: &Expr) -> Expr {
    let mut d = vec![psi_x.clone()];
    for k in 0..4 {
        d.push(crate::jet::explicit_partial(&d[k], Direction::X));
    }
    let (f1, f2, f3) = (op.df(1), op.df(2), op.df(3));
    &d[4] + (f3 + f1 * f2) * &d[1] + (2 * f2 + f1.powi(2)) * &d[2] + 2 * f1 * &d[3] + c1 / a
}

/// Coefficients of a residual grouped by reduced-jet monomials; used by
/// reports.
pub fn grouped_terms(eq: &Equation) -> Result<BTreeMap<String, Expr>, ReductionError> {
    Ok(poly::coefficients(&eq.residual(), is_reduced_jet, EXPAND_BUDGET)
        .map_err(|b| ReductionError::Budget(b.0))?
        .into_iter()
        .map(|(k, v)| (monomial_text(&k), v))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_jet_names() {
        assert_eq!(phi(2, 1).to_string(), "φ_ηηυ");
        assert_eq!(psi(0).to_string(), "ψ");
        assert!(is_reduced_jet(w(3).as_symbol().unwrap()));
        assert!(!is_reduced_jet(&Symbol::new("wx")));
    }

    #[test]
    fn zero_parameter_is_rejected() {
        let op = SurfaceOperator::generic();
        let r = reduce_translation_subalgebra(&Expr::zero(), &op, &ZeroTester::default(), &DomainHints::new());
        assert!(matches!(r, Err(ReductionError::ZeroParameter("a"))));
    }
}
