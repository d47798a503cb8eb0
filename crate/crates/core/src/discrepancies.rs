//! Published-form diff report: places where a directly derived expression and
//! its published form disagree. Every entry carries the certificate of
//! `derived − published`, so a listed conflict is itself a verified claim.

use serde::Serialize;
use thiserror::Error;

use crate::expr::{differentiate, DomainHints, Expr, Symbol, ZeroCertificate, ZeroTester};
use crate::geometry::{FamilyKind, GeometryError, SurfaceFamily};
use crate::operator::SurfaceOperator;
use crate::reductions::{
    reduce_scaling_subalgebra, reduce_translation_subalgebra, reduce_two_dim, ReductionError, ReductionResult,
};
use crate::symmetry::{verify_family, GeneratorReport, SymmetryError};

#[derive(Debug, Error)]
pub enum DiscrepancyError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Topic {
    Curvature,
    Invariance,
    DeterminingEquations,
    Reduction,
}

#[derive(Debug, Clone, Serialize)]
pub struct Discrepancy {
    pub topic: Topic,
    /// What is being compared, e.g. `tractoid curvature` or `plane.X9 e11`.
    pub subject: String,
    pub derived: String,
    pub published: String,
    /// Certificate of `derived − published`; nonzero for a real conflict.
    pub certificate: ZeroCertificate,
    pub note: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct DiscrepancyReport {
    pub entries: Vec<Discrepancy>,
}

impl DiscrepancyReport {
    pub fn by_topic(&self, topic: Topic) -> impl Iterator<Item = &Discrepancy> {
        self.entries.iter().filter(move |d| d.topic == topic)
    }

    pub fn subjects(&self, topic: Topic) -> Vec<&str> {
        self.by_topic(topic).map(|d| d.subject.as_str()).collect()
    }
}

fn entry(topic: Topic, subject: String, derived: Expr, published: Expr, tester: &ZeroTester, hints: &DomainHints, note: &str) -> Option<Discrepancy> {
    let certificate = tester.check(&(&derived - &published), hints);
    (!certificate.is_zero()).then(|| Discrepancy {
        topic,
        subject,
        derived: derived.to_string(),
        published: published.to_string(),
        certificate,
        note: note.to_string(),
    })
}

/// Curvature formulas printed for the general surface, the power law and
/// the cos family, each compared with `K = −w″/w` on symbolic parameters.
pub fn curvature_discrepancies(tester: &ZeroTester) -> Result<Vec<Discrepancy>, DiscrepancyError> {
    let x = Symbol::new("x");
    let mut out = Vec::new();

    // General form printed with w′ in the denominator, tested on the tractoid
    // whose constant −β₃² the same text also states.
    let tractoid = SurfaceFamily::symbolic(FamilyKind::Tractoid)?;
    let w = tractoid.warp();
    let (w1, w2) = (differentiate(&w, &x), differentiate(&differentiate(&w, &x), &x));
    out.extend(entry(
        Topic::Curvature,
        "general curvature formula (tractoid)".into(),
        tractoid.curvature(),
        -(w2 / w1),
        tester,
        &tractoid.hints(),
        "published general form divides by w′; only −w″/w reproduces the stated constant −β₃²",
    ));

    let power = SurfaceFamily::symbolic(FamilyKind::PowerLaw)?;
    let p = |n: &str| power.param(n).cloned().expect("power_law parameter");
    out.extend(entry(
        Topic::Curvature,
        "power_law curvature".into(),
        power.curvature(),
        p("a3") * (p("a3") - 1) / (Expr::sym("x") - p("a2")).powi(2),
        tester,
        &power.hints(),
        "published sign is opposite; the curvature is negative for α₃ < 0 or α₃ > 1",
    ));

    let cos = SurfaceFamily::symbolic(FamilyKind::CosFamily)?;
    out.extend(entry(
        Topic::Curvature,
        "cos_family curvature".into(),
        cos.curvature(),
        cos.param("b6").cloned().expect("cos_family parameter").powi(2),
        tester,
        &cos.hints(),
        "published value is β₆²; direct computation gives β₆⁻², the sphere of radius β₆",
    ));
    Ok(out)
}

/// Conflicts surfaced by one family's generator reports: invariance
/// failures, and published determining equations that fail while the
/// invariance condition holds.
pub fn symmetry_discrepancies(reports: &[GeneratorReport]) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    for r in reports {
        if !r.invariant() {
            out.push(Discrepancy {
                topic: Topic::Invariance,
                subject: r.generator.clone(),
                derived: "invariance residual".into(),
                published: r.field.clone(),
                certificate: r.invariance.clone(),
                note: "published generator does not satisfy the invariance condition".into(),
            });
            continue;
        }
        for eq in r.determining_published.equations.iter().filter(|e| !e.is_zero()) {
            let (derived, published, note) = match eq.label.as_str() {
                "e11" => ("ξ coefficient −(f_x f_xx + f_xxx)", "ξ coefficient f_x f_xx − f_xxx", "sign slip in the published e11"),
                "e13" => ("includes e^{−4f} φ_yyyy", "no φ_yyyy term", "term missing from the published e13"),
                _ => ("zero", "nonzero", "published equation fails for an invariant generator"),
            };
            out.push(Discrepancy {
                topic: Topic::DeterminingEquations,
                subject: format!("{} {}", r.generator, eq.label),
                derived: derived.into(),
                published: published.into(),
                certificate: eq.certificate.clone(),
                note: note.into(),
            });
        }
    }
    out
}

fn reduction_entries(r: &ReductionResult) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    for stage in &r.stages {
        for d in &stage.diff {
            out.push(Discrepancy {
                topic: Topic::Reduction,
                subject: format!("{} {} {}", r.subalgebra.name(), stage.label, d.monomial),
                derived: d.derived.to_string(),
                published: d.published.to_string(),
                certificate: d.certificate.clone(),
                note: if d.missing() { "term absent from the published form".into() } else { "coefficient differs".into() },
            });
        }
    }
    out
}

/// Term diffs of all three reductions for a generic profile `f(x)` and
/// symbolic `a`, `b`.
pub fn reduction_discrepancies(tester: &ZeroTester) -> Result<Vec<Discrepancy>, DiscrepancyError> {
    let op = SurfaceOperator::generic();
    let hints = DomainHints::new();
    let (a, b) = (Expr::sym("a"), Expr::sym("b"));
    let mut out = reduction_entries(&reduce_translation_subalgebra(&a, &op, tester, &hints)?);
    out.extend(reduction_entries(&reduce_scaling_subalgebra(&a, &b, &op, tester, &hints)?));
    out.extend(reduction_entries(&reduce_two_dim(&a, &b, &op, tester, &hints)?));
    Ok(out)
}

/// The full report over every family at its default parameters.
pub fn collect(tester: &ZeroTester) -> Result<DiscrepancyReport, DiscrepancyError> {
    let mut entries = curvature_discrepancies(tester)?;
    for kind in FamilyKind::CONCRETE {
        let family = SurfaceFamily::with_defaults(kind)?;
        entries.extend(symmetry_discrepancies(&verify_family(&family, tester)?));
    }
    entries.extend(reduction_discrepancies(tester)?);
    Ok(DiscrepancyReport { entries })
}
