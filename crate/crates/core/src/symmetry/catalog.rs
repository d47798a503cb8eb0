//! Generator lists per surface family.

use serde::Serialize;

use super::SymmetryError;
use crate::expr::{DomainHints, Expr, ZeroCertificate, ZeroTester};
use crate::geometry::{FamilyKind, SurfaceFamily};
use crate::jet::PointSymmetryCandidate;
use crate::operator::SurfaceOperator;

/// A cataloged infinitesimal generator. `name` is family-scoped, e.g.
/// `cylinder.X6`; `label` is the bare `X6`.
#[derive(Debug, Clone, Serialize)]
pub struct Generator {
    pub name: String,
    pub label: String,
    pub family: FamilyKind,
    pub field: PointSymmetryCandidate,
}

impl Generator {
    pub fn new(family: FamilyKind, label: &str, xi: Expr, phi: Expr, tau: Expr, zeta: Expr) -> Generator {
        let field = PointSymmetryCandidate::new(xi, phi, tau, zeta).expect("generator components are free of jets");
        Generator { name: format!("{}.{label}", family.name()), label: label.to_string(), family, field }
    }

    /// True for the four generators every profile admits.
    pub fn is_minimal(&self) -> bool {
        matches!(self.label.as_str(), "X1" | "X2" | "X3" | "Xu")
    }
}

/// A solution `𝒢(x, y, t)` of the equation, used for `X_u = 𝒢 ∂u`.
#[derive(Debug, Clone, Serialize)]
pub struct SolutionWitness {
    pub g: Expr,
}

impl Default for SolutionWitness {
    fn default() -> Self {
        SolutionWitness { g: Expr::one() }
    }
}

impl SolutionWitness {
    pub fn new(g: Expr) -> SolutionWitness {
        SolutionWitness { g }
    }

    /// Certifies that `𝒢` solves the equation for the given operator.
    pub fn certify(&self, op: &SurfaceOperator, tester: &ZeroTester, hints: &DomainHints) -> Result<ZeroCertificate, SymmetryError> {
        Ok(tester.check(&op.pde_residual(&self.g)?, hints))
    }
}

/// `X1 = ∂y`, `X2 = ∂t`, `X3 = u∂u` and `Xu = 𝒢∂u`.
pub fn minimal_generators(family: FamilyKind, witness: &SolutionWitness) -> Vec<Generator> {
    let (z, one) = (Expr::zero(), Expr::one());
    vec![
        Generator::new(family, "X1", z.clone(), one.clone(), z.clone(), z.clone()),
        Generator::new(family, "X2", z.clone(), z.clone(), one, z.clone()),
        Generator::new(family, "X3", z.clone(), z.clone(), z.clone(), Expr::sym("u")),
        Generator::new(family, "Xu", z.clone(), z.clone(), z, witness.g.clone()),
    ]
}

/// The generators beyond the minimal algebra, in their published form.
pub fn extra_generators(family: &SurfaceFamily) -> Vec<Generator> {
    let kind = family.kind();
    let p = |n: &str| family.param(n).cloned().expect("family parameter");
    let (x, y, t) = (Expr::sym("x"), Expr::sym("y"), Expr::sym("t"));
    let z = Expr::zero;
    let g = |label: &str, xi: Expr, phi: Expr, tau: Expr| Generator::new(kind, label, xi, phi, tau, z());
    let quarter = Expr::frac(1, 4);
    match kind {
        FamilyKind::Arbitrary => vec![],
        FamilyKind::PowerLaw => vec![g(
            "X4",
            (&x - p("a2")) * &quarter,
            -((p("a3") - 1) * &quarter) * &y,
            t.clone(),
        )],
        FamilyKind::Cylinder => vec![
            g("X5", Expr::one(), z(), z()),
            g("X6", -p("b4").powi(2) * &y, x.clone(), z()),
            g("X7", &x * &quarter, &y * &quarter, t.clone()),
        ],
        FamilyKind::Plane | FamilyKind::Cone => {
            let l = if kind == FamilyKind::Cone { p("l") } else { Expr::one() };
            let r = &x + p("b4");
            let ly = &l * &y;
            vec![
                g("X8", &r * &quarter, z(), t.clone()),
                g("X9", -(&l * ly.cos()), ly.sin() / &r, z()),
                g("X10", &l * ly.sin(), ly.cos() / &r, z()),
            ]
        }
        FamilyKind::Tractoid => {
            let (b3, e2c) = (p("b3"), (2 * p("C")).exp());
            vec![
                g("X11", -b3.recip(), y.clone(), z()),
                g(
                    "X12",
                    2 * &b3 * &e2c * &y,
                    (-2 * &b3 * &x).exp() - b3.powi(2) * &e2c * y.powi(2),
                    z(),
                ),
            ]
        }
        FamilyKind::ConicSinh => {
            let (a7, b7) = (p("a7"), p("b7"));
            let s = &a7 * &y / &b7;
            let c = (&x / &b7).coth();
            vec![
                g("X12", -(&a7 * s.cos()), &c * s.sin(), z()),
                g("X14", &a7 * s.sin(), &c * s.cos(), z()),
            ]
        }
        FamilyKind::HyperboloidCosh => {
            let (a7, b7) = (p("a7"), p("b7"));
            let e = (&a7 * &y / &b7).exp();
            let em = (-(&a7 * &y) / &b7).exp();
            let th = (&x / &b7).tanh();
            vec![
                g("X14", -(&a7 * &e), &th * &e, z()),
                g("X15", &a7 * &em, &th * &em, z()),
            ]
        }
        FamilyKind::CosFamily => {
            let (a5, b6) = (p("a5"), p("b6"));
            let s = &a5 * &y / &b6;
            let tn = (&x / &b6).tan();
            vec![
                g("X16", &a5 * s.cos(), &tn * s.sin(), z()),
                g("X17", -(&a5 * s.sin()), &tn * s.cos(), z()),
            ]
        }
    }
}

/// Minimal algebra (with `𝒢 ≡ 1`) followed by the family's extras.
pub fn catalog_generators(family: &SurfaceFamily) -> Vec<Generator> {
    let mut out = minimal_generators(family.kind(), &SolutionWitness::default());
    out.extend(extra_generators(family));
    out
}

/// Looks up `X6` or `cylinder.X6` in the family's catalog. A name scoped to
/// another family is an error.
pub fn resolve_generator(family: &SurfaceFamily, name: &str) -> Result<Generator, SymmetryError> {
    let label = match name.split_once('.') {
        Some((scope, label)) => {
            if FamilyKind::from_name(scope) != Some(family.kind()) {
                return Err(SymmetryError::ScopeMismatch { name: name.to_string(), family: family.kind() });
            }
            label
        }
        None => name,
    };
    catalog_generators(family)
        .into_iter()
        .find(|g| g.label == label)
        .ok_or_else(|| SymmetryError::UnknownGenerator { name: name.to_string(), family: family.kind() })
}
