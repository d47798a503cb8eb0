//! The determining equations e1–e14 for `u_t = L²u`.

use serde::Serialize;

use crate::expr::{differentiate, DomainHints, Expr, Symbol, ZeroCertificate, ZeroTester};
use crate::jet::{explicit_partial, Direction, PointSymmetryCandidate};
use crate::operator::SurfaceOperator;

/// Which transcription of the system to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Transcription {
    /// Symbol for symbol as published.
    Published,
    /// Published form with the ξ coefficient of e11 taken as
    /// `−(f_x f_xx + f_xxx)` and the missing `e^{−4f} φ_yyyy` restored in e13,
    /// both as produced by the invariance condition.
    Corrected,
}

/// Partial derivative of a generator component; `vars` lists the variables,
/// e.g. `"uxy"`.
fn d(g: &Expr, vars: &str) -> Expr {
    let mut out = g.clone();
    for c in vars.chars() {
        out = match c {
            'x' => explicit_partial(&out, Direction::X),
            'y' => explicit_partial(&out, Direction::Y),
            't' => explicit_partial(&out, Direction::T),
            'u' => differentiate(&out, &Symbol::new("u")),
            _ => unreachable!("unknown variable {c}"),
        };
    }
    out
}

/// Residuals of e1–e14; e1 has six components, the others one each.
pub fn determining_system(x: &PointSymmetryCandidate, op: &SurfaceOperator, which: Transcription) -> Vec<(String, Vec<Expr>)> {
    let (xi, ph, ta, ze) = (&x.xi, &x.phi, &x.tau, &x.zeta);
    let (fx, fxx, fxxx, fxxxx) = (op.df(1), op.df(2), op.df(3), op.df(4));
    let (e, e4) = (op.weight2(), op.weight4());
    let fx2 = fx.powi(2);
    let mut eqs: Vec<Vec<Expr>> = Vec::with_capacity(14);
    eqs.push(vec![d(ta, "u"), d(ta, "x"), d(ta, "y"), d(xi, "u"), d(ph, "u"), d(ze, "uu")]);
    eqs.push(vec![4 * d(xi, "x") - d(ta, "t")]);
    eqs.push(vec![d(ph, "x") + d(xi, "y") * e]);
    eqs.push(vec![4 * d(ph, "y") + 4 * xi * fx - d(ta, "t")]);
    eqs.push(vec![2 * d(ze, "ux") - 3 * d(xi, "xx") + xi * fxx + fx * d(xi, "x") - d(xi, "yy") * e]);
    eqs.push(vec![2 * d(ze, "uy") * e - fx * d(ph, "x") + d(ph, "xx") + 3 * d(ph, "yy") * e]);
    eqs.push(vec![
        -5 * e * fx * d(xi, "y") + 3 * d(ph, "xx") + e * d(ph, "yy") - 2 * e * d(ze, "uy") + 4 * e * d(xi, "xy"),
    ]);
    eqs.push(vec![
        d(xi, "xx") - 2 * d(ze, "ux") + 3 * e * d(xi, "yy") + 3 * d(xi, "x") * fx + (fxx - 2 * &fx2) * xi + 4 * d(ph, "xy")
            - 2 * fx * d(ph, "y"),
    ]);
    eqs.push(vec![d(ze, "t") - op.biharmonic_partial(ze)]);
    eqs.push(vec![
        2 * fx * d(ze, "uy") * e - fx * d(ph, "yy") * e + e * (&fx2 - 4 * fxx) * d(xi, "y") + 3 * fx * d(ph, "xx")
            - 2 * fx * d(xi, "xy") * e
            + 2 * d(xi, "xxy") * e
            - 4 * d(ze, "uxy") * e
            + 2 * d(ph, "xyy") * e
            + 2 * d(ph, "xxx")
            + 2 * e4 * d(xi, "yyy"),
    ]);
    let e11_xi = match which {
        Transcription::Published => fx * fxx - fxxx,
        Transcription::Corrected => -(fx * fxx + fxxx),
    };
    eqs.push(vec![
        e11_xi * xi + 2 * d(xi, "xxx") - 3 * fx * d(ze, "ux") + 3 * fx * d(xi, "xx") - (&fx2 + 2 * fxx) * d(xi, "x")
            - fx * d(xi, "yy") * e
            - 3 * d(ze, "uxx")
            - d(ze, "uyy") * e
            + 2 * d(xi, "xyy") * e,
    ]);
    eqs.push(vec![
        2 * d(ph, "yyy") * e - 3 * d(ze, "uyy") * e - d(ze, "uxx") + 2 * d(ph, "xxy")
            + (fxxx + 2 * fx.powi(3) - 4 * fxx * fx) * xi
            + 4 * (fxx - &fx2) * d(xi, "x")
            - 2 * fx * d(ph, "xy")
            + fx * d(ze, "ux")
            + 2 * (&fx2 - fxx) * d(ph, "y"),
    ]);
    let mut e13 = 2 * e * (&fx2 - fxx) * d(ph, "yy") - 4 * d(ze, "uxxy") * e + 2 * d(ph, "xxyy") * e + 4 * fx * d(ze, "uxy") * e
        + 4 * e * (fxx - &fx2) * d(ze, "uy")
        - 4 * d(ze, "uyyy") * e4
        + (2 * fxx + &fx2) * d(ph, "xx")
        + d(ph, "xxxx")
        + 2 * fx * d(ph, "xxx")
        - d(ph, "t")
        - 2 * fx * d(ph, "xyy") * e
        + (fxxx + fxx * fx) * d(ph, "x");
    if which == Transcription::Corrected {
        e13 = e13 + e4 * d(ph, "yyyy");
    }
    eqs.push(vec![e13]);
    eqs.push(vec![
        2 * (2 * fxx + &fx2) * d(ze, "ux") + 4 * d(ze, "uxxx") + d(xi, "t") + 2 * e * (2 * d(ze, "uxyy") - fx * d(ze, "uyy"))
            + 6 * fx * d(ze, "uxx")
            + 4 * (fxxx + fxx * fx) * d(xi, "x")
            + (fxxx * fx + fxxxx + fxx.powi(2)) * xi
            - op.biharmonic_partial(xi),
    ]);
    eqs.into_iter().enumerate().map(|(i, v)| (format!("e{}", i + 1), v)).collect()
}

/// Verdict for one determining equation.
#[derive(Debug, Clone, Serialize)]
pub struct EquationVerdict {
    pub label: String,
    /// The least favourable certificate over the equation's components.
    pub certificate: ZeroCertificate,
}

impl EquationVerdict {
    pub fn is_zero(&self) -> bool {
        self.certificate.is_zero()
    }
}

/// Verdicts for e1–e14 of one generator.
#[derive(Debug, Clone, Serialize)]
pub struct DeterminingReport {
    pub transcription: Transcription,
    pub equations: Vec<EquationVerdict>,
}

impl DeterminingReport {
    pub fn all_zero(&self) -> bool {
        self.equations.iter().all(EquationVerdict::is_zero)
    }

    /// Labels of the equations that did not certify zero.
    pub fn failing(&self) -> Vec<&str> {
        self.equations.iter().filter(|e| !e.is_zero()).map(|e| e.label.as_str()).collect()
    }
}

pub fn determining_residuals(
    x: &PointSymmetryCandidate,
    op: &SurfaceOperator,
    which: Transcription,
    tester: &ZeroTester,
    hints: &DomainHints,
) -> DeterminingReport {
    let equations = determining_system(x, op, which)
        .into_iter()
        .map(|(label, comps)| {
            let mut certs: Vec<ZeroCertificate> = comps.iter().map(|c| tester.check(c, hints)).collect();
            let worst = certs.iter().position(|c| !c.is_zero()).unwrap_or(0);
            EquationVerdict { label, certificate: certs.swap_remove(worst) }
        })
        .collect();
    DeterminingReport { transcription: which, equations }
}
