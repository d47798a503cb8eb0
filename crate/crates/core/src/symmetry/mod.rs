//! Lie point symmetries of `u_t = L²u`: catalogs, the invariance
//! condition, determining equations, brackets and flows.

mod catalog;
mod determining;
mod flow;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::expr::{DomainHints, Expr, ZeroCertificate, ZeroTester};
use crate::geometry::{FamilyKind, GeometryError, SurfaceFamily};
use crate::jet::{restrict_to_solutions, JetCoordinate, JetError, PointSymmetryCandidate, Prolongation};
use crate::operator::{OperatorError, SurfaceOperator};

pub use catalog::{catalog_generators, extra_generators, minimal_generators, resolve_generator, Generator, SolutionWitness};
pub use determining::{determining_residuals, determining_system, DeterminingReport, EquationVerdict, Transcription};
pub use flow::{flow, transform_solution, Flow};

#[derive(Debug, Error)]
pub enum SymmetryError {
    #[error("`{name}` is not a generator of {family}")]
    UnknownGenerator { name: String, family: FamilyKind },
    #[error("`{name}` belongs to another family than {family}")]
    ScopeMismatch { name: String, family: FamilyKind },
    #[error("no closed-form flow is implemented for {0}")]
    NoClosedFlow(String),
    #[error("flow: {0}")]
    Flow(String),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// `X^[4](u_t − L²u)` on solutions, i.e. with every `t` derivative replaced
/// through `u_t = L²u`. It vanishes identically exactly when `X` is a
/// symmetry.
pub fn invariance_expression(x: &PointSymmetryCandidate, op: &SurfaceOperator) -> Result<Expr, SymmetryError> {
    let rhs = op.biharmonic_apply(&JetCoordinate::U.expr())?;
    let eq = JetCoordinate { x: 0, y: 0, t: 1 }.expr() - &rhs;
    let applied = Prolongation::new(x).apply(&eq)?;
    Ok(restrict_to_solutions(&applied, &rhs)?)
}

/// Certifies the invariance condition with spatial jets sampled as free
/// symbols and `x` inside the family's domain.
pub fn invariance_residual(
    x: &PointSymmetryCandidate,
    op: &SurfaceOperator,
    tester: &ZeroTester,
    hints: &DomainHints,
) -> Result<ZeroCertificate, SymmetryError> {
    Ok(tester.check(&invariance_expression(x, op)?, hints))
}

/// `[X, Y]` with components `X(η_Y) − Y(η_X)`.
pub fn commutator(a: &PointSymmetryCandidate, b: &PointSymmetryCandidate) -> PointSymmetryCandidate {
    let [ax, ay, at, au] = a.components();
    let [bx, by, bt, bu] = b.components();
    let c = |p: &Expr, q: &Expr| a.apply_to_function(q) - b.apply_to_function(p);
    PointSymmetryCandidate::new(c(ax, bx), c(ay, by), c(at, bt), c(au, bu)).expect("brackets of point fields stay point fields")
}

/// `α X + β Y`.
pub fn combine(alpha: &Expr, a: &PointSymmetryCandidate, beta: &Expr, b: &PointSymmetryCandidate) -> PointSymmetryCandidate {
    let [ax, ay, at, au] = a.components();
    let [bx, by, bt, bu] = b.components();
    let c = |p: &Expr, q: &Expr| alpha * p + beta * q;
    PointSymmetryCandidate::new(c(ax, bx), c(ay, by), c(at, bt), c(au, bu)).expect("linear combination of point fields")
}

/// Certifies every component of a field to be zero.
pub fn certify_zero_field(x: &PointSymmetryCandidate, tester: &ZeroTester, hints: &DomainHints) -> ZeroCertificate {
    let mut certs: Vec<ZeroCertificate> = x.components().iter().map(|c| tester.check(c, hints)).collect();
    let worst = certs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    certs.swap_remove(worst)
}

/// Pushes `solution` through `exp(ε X)` and certifies that the image still
/// solves the equation.
pub fn verify_flow_maps_solution(
    g: &Generator,
    family: &SurfaceFamily,
    eps: &Expr,
    solution: &Expr,
    tester: &ZeroTester,
    hints: &DomainHints,
) -> Result<(Expr, ZeroCertificate), SymmetryError> {
    let op = SurfaceOperator::new(family.profile().clone())?;
    let image = transform_solution(g, family.params(), eps, solution)?;
    let cert = tester.check(&op.pde_residual(&image)?, hints);
    Ok((image, cert))
}

/// Verdicts for one generator.
#[derive(Debug, Clone, Serialize)]
pub struct GeneratorReport {
    pub generator: String,
    pub field: String,
    pub invariance: ZeroCertificate,
    pub determining_published: DeterminingReport,
    pub determining_corrected: DeterminingReport,
}

impl GeneratorReport {
    pub fn invariant(&self) -> bool {
        self.invariance.is_zero()
    }
}

/// Checks one generator against the profile of `family`.
pub fn verify_generator(g: &Generator, family: &SurfaceFamily, tester: &ZeroTester) -> Result<GeneratorReport, SymmetryError> {
    let op = SurfaceOperator::new(family.profile().clone())?;
    let hints = family.hints();
    Ok(GeneratorReport {
        generator: g.name.clone(),
        field: g.field.to_string(),
        invariance: invariance_residual(&g.field, &op, tester, &hints)?,
        determining_published: determining_residuals(&g.field, &op, Transcription::Published, tester, &hints),
        determining_corrected: determining_residuals(&g.field, &op, Transcription::Corrected, tester, &hints),
    })
}

/// Checks every generator of the family in parallel.
pub fn verify_family(family: &SurfaceFamily, tester: &ZeroTester) -> Result<Vec<GeneratorReport>, SymmetryError> {
    catalog_generators(family).par_iter().map(|g| verify_generator(g, family, tester)).collect()
}
