//! Surface families: profile functions, parameters, curvature and domains.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::GeometryError;
use crate::expr::{differentiate, free_symbols, parse, DomainHints, Expr, F64Tape, Rational, Symbol, ZeroCertificate, ZeroTester};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Arbitrary,
    PowerLaw,
    Cylinder,
    Plane,
    Cone,
    Tractoid,
    ConicSinh,
    HyperboloidCosh,
    CosFamily,
}

impl FamilyKind {
    /// The eight families with a closed-form profile.
    pub const CONCRETE: [FamilyKind; 8] = [
        FamilyKind::PowerLaw,
        FamilyKind::Cylinder,
        FamilyKind::Plane,
        FamilyKind::Cone,
        FamilyKind::Tractoid,
        FamilyKind::ConicSinh,
        FamilyKind::HyperboloidCosh,
        FamilyKind::CosFamily,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Arbitrary => "arbitrary",
            FamilyKind::PowerLaw => "power_law",
            FamilyKind::Cylinder => "cylinder",
            FamilyKind::Plane => "plane",
            FamilyKind::Cone => "cone",
            FamilyKind::Tractoid => "tractoid",
            FamilyKind::ConicSinh => "conic_sinh",
            FamilyKind::HyperboloidCosh => "hyperboloid_cosh",
            FamilyKind::CosFamily => "cos_family",
        }
    }

    pub fn from_name(name: &str) -> Option<FamilyKind> {
        let k = match name {
            "arbitrary" => FamilyKind::Arbitrary,
            "power_law" => FamilyKind::PowerLaw,
            "cylinder" => FamilyKind::Cylinder,
            "plane" => FamilyKind::Plane,
            "cone" => FamilyKind::Cone,
            "tractoid" | "pseudosphere" => FamilyKind::Tractoid,
            "conic_sinh" => FamilyKind::ConicSinh,
            "hyperboloid_cosh" => FamilyKind::HyperboloidCosh,
            "cos_family" | "sphere" => FamilyKind::CosFamily,
            _ => return None,
        };
        Some(k)
    }

    /// Parameter names in ASCII form (`a2` for α₂, `b5` for β₅).
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            FamilyKind::Arbitrary => &[],
            FamilyKind::PowerLaw => &["a2", "a3", "b5"],
            FamilyKind::Cylinder | FamilyKind::Plane => &["b4"],
            FamilyKind::Cone => &["l", "b4"],
            FamilyKind::Tractoid => &["b3", "C"],
            FamilyKind::ConicSinh | FamilyKind::HyperboloidCosh => &["a7", "b7", "a8"],
            FamilyKind::CosFamily => &["a5", "b6", "a6"],
        }
    }

    /// One admissible parameter set per family, used by the catalog checks.
    pub fn default_params(self) -> Vec<(&'static str, Rational)> {
        let r = |p: i64, q: i64| Rational::new(p.into(), q.into());
        match self {
            FamilyKind::Arbitrary => vec![],
            FamilyKind::PowerLaw => vec![("a2", r(0, 1)), ("a3", r(1, 2)), ("b5", r(1, 1))],
            FamilyKind::Cylinder | FamilyKind::Plane => vec![("b4", r(1, 1))],
            FamilyKind::Cone => vec![("l", r(1, 2)), ("b4", r(1, 1))],
            FamilyKind::Tractoid => vec![("b3", r(1, 1)), ("C", r(0, 1))],
            FamilyKind::ConicSinh | FamilyKind::HyperboloidCosh => vec![("a7", r(1, 2)), ("b7", r(1, 1)), ("a8", r(0, 1))],
            FamilyKind::CosFamily => vec![("a5", r(1, 1)), ("b6", r(1, 1)), ("a6", r(0, 1))],
        }
    }

    /// Sampling boxes for the parameters when they are left symbolic.
    fn symbolic_range(name: &str) -> (f64, f64) {
        match name {
            "a2" => (-1.0, -0.5),
            "a3" => (1.2, 2.0),
            "a6" => (0.0, 0.3),
            "a8" => (0.5, 1.0),
            "C" => (-0.5, 0.5),
            "l" => (0.3, 0.9),
            _ => (0.5, 1.5),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Shape of a `cos_family` surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CosSubtype {
    Sphere,
    Spindle,
    Bulge,
}

impl CosSubtype {
    pub fn name(self) -> &'static str {
        match self {
            CosSubtype::Sphere => "sphere",
            CosSubtype::Spindle => "spindle",
            CosSubtype::Bulge => "bulge",
        }
    }
}

/// An interval of the real line; `None` bounds are infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn reals() -> Interval {
        Interval { lo: None, hi: None, lo_closed: false, hi_closed: false }
    }

    pub fn closed(lo: f64, hi: f64) -> Interval {
        Interval { lo: Some(lo), hi: Some(hi), lo_closed: true, hi_closed: true }
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = match self.lo {
            None => true,
            Some(a) => x > a || (self.lo_closed && x == a),
        };
        let below = match self.hi {
            None => true,
            Some(b) => x < b || (self.hi_closed && x == b),
        };
        above && below && x.is_finite()
    }

    /// Closure membership with a relative slack of `10⁻¹²`.
    pub fn contains_closure(&self, x: f64) -> bool {
        let slack = |a: f64| 1e-12 * (1.0 + a.abs());
        self.lo.map_or(true, |a| x >= a - slack(a)) && self.hi.map_or(true, |b| x <= b + slack(b)) && x.is_finite()
    }

    /// Interior 90% of a bounded interval; a half-line is cut to length 2
    /// first and the whole line to `[−1, 1]`.
    pub fn window(&self) -> (f64, f64) {
        let (a, b) = self.finite_part();
        let pad = 0.05 * (b - a);
        (a + pad, b - pad)
    }

    /// Bounded piece used for meshing: the interval itself when bounded,
    /// otherwise a length-2 piece anchored at the finite end.
    pub fn finite_part(&self) -> (f64, f64) {
        match (self.lo, self.hi) {
            (Some(a), Some(b)) => (a, b),
            (Some(a), None) => (a, a + 2.0),
            (None, Some(b)) => (b - 2.0, b),
            (None, None) => (-1.0, 1.0),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lo {
            Some(a) => write!(f, "{}{a}", if self.lo_closed { "[" } else { "(" })?,
            None => f.write_str("(-inf")?,
        }
        f.write_str(", ")?;
        match self.hi {
            Some(b) => write!(f, "{b}{}", if self.hi_closed { "]" } else { ")" }),
            None => f.write_str("inf)"),
        }
    }
}

/// A surface of revolution `dx² + e^{2f(x)} dy²`, either one of the
/// classified families or an arbitrary profile.
#[derive(Debug, Clone)]
pub struct SurfaceFamily {
    kind: FamilyKind,
    params: BTreeMap<String, Expr>,
    f: Expr,
    origin: Option<f64>,
}

/// Normalizes `α2`/`β5`-style names to `a2`/`b5`.
pub fn canonical_param_name(name: &str) -> String {
    name.trim().replace('α', "a").replace('β', "b")
}

/// Parses `"a2=0, a3=1/2, b5=1"` (Greek names accepted).
pub fn parse_params(text: &str) -> Result<BTreeMap<String, Rational>, GeometryError> {
    let mut out = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| GeometryError::BadParameter(item.to_string()))?;
        let value = parse(v.trim()).map_err(|e| GeometryError::BadParameter(format!("{item}: {e}")))?;
        let r = value.as_rational().cloned().ok_or_else(|| GeometryError::BadParameter(format!("{item}: not a number")))?;
        out.insert(canonical_param_name(k), r);
    }
    Ok(out)
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl SurfaceFamily {
    /// A family with concrete parameters. Missing parameters take the
    /// defaults of [`FamilyKind::default_params`]; `a4` optionally fixes the
    /// lower limit of the profile quadrature.
    pub fn new(kind: FamilyKind, params: &BTreeMap<String, Rational>) -> Result<SurfaceFamily, GeometryError> {
        if kind == FamilyKind::Arbitrary {
            return Err(GeometryError::NeedsProfile);
        }
        let names = kind.param_names();
        for k in params.keys() {
            if !names.contains(&k.as_str()) && k != "a4" {
                return Err(GeometryError::UnknownParameter { family: kind, name: k.clone() });
            }
        }
        let mut values: BTreeMap<String, Rational> = kind.default_params().into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        for (k, v) in params {
            if k != "a4" {
                values.insert(k.clone(), v.clone());
            }
        }
        validate(kind, &values)?;
        let exprs = values.into_iter().map(|(k, v)| (k, Expr::rational(v))).collect();
        let mut s = SurfaceFamily::build(kind, exprs);
        s.origin = params.get("a4").map(to_f64);
        Ok(s)
    }

    /// The family with its default parameter set.
    pub fn with_defaults(kind: FamilyKind) -> Result<SurfaceFamily, GeometryError> {
        SurfaceFamily::new(kind, &BTreeMap::new())
    }

    /// The family with every parameter kept as a free symbol.
    pub fn symbolic(kind: FamilyKind) -> Result<SurfaceFamily, GeometryError> {
        if kind == FamilyKind::Arbitrary {
            return Err(GeometryError::NeedsProfile);
        }
        let params = kind.param_names().iter().map(|n| (n.to_string(), Expr::sym(n))).collect();
        Ok(SurfaceFamily::build(kind, params))
    }

    /// An arbitrary profile `f(x)`.
    pub fn arbitrary(f: Expr) -> Result<SurfaceFamily, GeometryError> {
        if let Some(s) = free_symbols(&f).into_iter().find(|s| s.name() != "x") {
            return Err(GeometryError::ProfileNotInX(s.name().to_string()));
        }
        Ok(SurfaceFamily { kind: FamilyKind::Arbitrary, params: BTreeMap::new(), f, origin: None })
    }

    fn build(kind: FamilyKind, params: BTreeMap<String, Expr>) -> SurfaceFamily {
        let p = |n: &str| params[n].clone();
        let x = Expr::sym("x");
        let f = match kind {
            FamilyKind::Arbitrary => unreachable!(),
            FamilyKind::PowerLaw => p("b5").ln() + p("a3") * (&x - p("a2")).ln(),
            FamilyKind::Cylinder => p("b4").ln(),
            FamilyKind::Plane => (&x + p("b4")).ln(),
            FamilyKind::Cone => (p("l") * (&x + p("b4"))).ln(),
            FamilyKind::Tractoid => p("b3") * &x + p("C"),
            FamilyKind::ConicSinh => (p("a7") * (&x / p("b7") + p("a8")).sinh()).ln(),
            FamilyKind::HyperboloidCosh => (p("a7") * (&x / p("b7") + p("a8")).cosh()).ln(),
            FamilyKind::CosFamily => (p("a5") * (&x / p("b6") + p("a6")).cos()).ln(),
        };
        SurfaceFamily { kind, params, f, origin: None }
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn params(&self) -> &BTreeMap<String, Expr> {
        &self.params
    }

    /// Parameter `name` as an expression (a number or a free symbol).
    pub fn param(&self, name: &str) -> Option<&Expr> {
        self.params.get(name)
    }

    fn value(&self, name: &str) -> Result<f64, GeometryError> {
        self.params
            .get(name)
            .and_then(|e| e.as_rational())
            .map(to_f64)
            .ok_or_else(|| GeometryError::SymbolicParameter(name.to_string()))
    }

    /// True when every parameter is a number.
    pub fn is_numeric(&self) -> bool {
        self.params.values().all(|e| e.as_rational().is_some())
    }

    /// The profile `f(x)`.
    pub fn profile(&self) -> &Expr {
        &self.f
    }

    /// The warping function `w = e^f`.
    pub fn warp(&self) -> Expr {
        self.f.exp()
    }

    fn x() -> Symbol {
        Symbol::new("x")
    }

    fn df(&self, k: usize) -> Expr {
        let mut d = self.f.clone();
        for _ in 0..k {
            d = differentiate(&d, &Self::x());
        }
        d
    }

    /// Gaussian curvature `K = −w″/w`, written as `−(f″ + f′²)`.
    pub fn curvature(&self) -> Expr {
        -(self.df(2) + self.df(1).powi(2))
    }

    /// The closed form the curvature should take for this family.
    pub fn expected_curvature(&self) -> Option<Expr> {
        let p = |n: &str| self.params[n].clone();
        let x = Expr::sym("x");
        Some(match self.kind {
            FamilyKind::Arbitrary => return None,
            FamilyKind::PowerLaw => -(p("a3") * (p("a3") - 1)) / (x - p("a2")).powi(2),
            FamilyKind::Cylinder | FamilyKind::Plane | FamilyKind::Cone => Expr::zero(),
            FamilyKind::Tractoid => -p("b3").powi(2),
            FamilyKind::ConicSinh | FamilyKind::HyperboloidCosh => -p("b7").powi(-2),
            FamilyKind::CosFamily => p("b6").powi(-2),
        })
    }

    /// The curvature when it does not depend on `x`.
    pub fn curvature_constant(&self) -> Option<Expr> {
        self.expected_curvature().filter(|k| !free_symbols(k).contains(&Self::x()))
    }

    /// Certifies `curvature() − expected_curvature()` is zero.
    pub fn certify_curvature(&self, tester: &ZeroTester) -> Option<ZeroCertificate> {
        let expected = self.expected_curvature()?;
        Some(tester.check(&(self.curvature() - expected), &self.hints()))
    }

    /// Numeric curvature at `x`.
    pub fn curvature_at(&self, x: f64) -> Result<f64, GeometryError> {
        self.eval_at(&self.curvature(), x)
    }

    fn eval_at(&self, e: &Expr, x: f64) -> Result<f64, GeometryError> {
        let tape = F64Tape::new(e, &[Self::x()])?;
        Ok(tape.eval(&[x])?)
    }

    /// `√(1 − w′²)`, the integrand of the unit-speed reconstruction of `v`.
    pub fn unit_speed_integrand(&self) -> Expr {
        let w1 = differentiate(&self.warp(), &Self::x());
        (Expr::one() - w1.powi(2)).sqrt()
    }

    /// The governing ODE of the family with its profile substituted.
    pub fn classification_ode(&self) -> Option<Expr> {
        let (f1, f2, f3) = (self.df(1), self.df(2), self.df(3));
        let p = |n: &str| self.params[n].clone();
        Some(match self.kind {
            FamilyKind::Arbitrary => return None,
            FamilyKind::PowerLaw => &f3 * &f1 - 2 * f2.powi(2),
            FamilyKind::Cylinder | FamilyKind::Plane | FamilyKind::Cone => f2 + f1.powi(2),
            FamilyKind::Tractoid => f3 + 2 * f1 * f2,
            FamilyKind::ConicSinh | FamilyKind::HyperboloidCosh => f2 + f1.powi(2) - p("b7").powi(-2),
            FamilyKind::CosFamily => f2 + f1.powi(2) + p("b6").powi(-2),
        })
    }

    pub fn classification_residual(&self, tester: &ZeroTester) -> Result<ZeroCertificate, GeometryError> {
        let ode = self.classification_ode().ok_or(GeometryError::NeedsFamily)?;
        Ok(tester.check(&ode, &self.hints()))
    }

    pub fn cos_subtype(&self) -> Option<CosSubtype> {
        if self.kind != FamilyKind::CosFamily {
            return None;
        }
        let (a5, b6) = (self.params["a5"].as_rational()?, self.params["b6"].as_rational()?);
        Some(match a5.cmp(b6) {
            std::cmp::Ordering::Equal => CosSubtype::Sphere,
            std::cmp::Ordering::Less => CosSubtype::Spindle,
            std::cmp::Ordering::Greater => CosSubtype::Bulge,
        })
    }

    /// Largest interval on which `|w′| ≤ 1` (for the families that need it,
    /// together with `w > 0`).
    pub fn valid_domain(&self) -> Result<Interval, GeometryError> {
        let v = |n: &str| self.value(n);
        let half_open = |lo: Option<f64>, hi: Option<f64>| Interval { lo, hi, lo_closed: false, hi_closed: false };
        let d = match self.kind {
            FamilyKind::Arbitrary => return Err(GeometryError::NeedsFamily),
            FamilyKind::Cylinder => Interval::reals(),
            FamilyKind::Plane => half_open(Some(-v("b4")?), None),
            FamilyKind::Cone => {
                if v("l")? > 1.0 {
                    return Err(GeometryError::EmptyDomain(self.kind));
                }
                half_open(Some(-v("b4")?), None)
            }
            FamilyKind::PowerLaw => {
                let (a2, a3, b5) = (v("a2")?, v("a3")?, v("b5")?);
                let r = (1.0 / (b5 * b5 * a3 * a3)).powf(1.0 / (2.0 * a3 - 2.0));
                if a3 > 1.0 {
                    Interval { lo: Some(a2), hi: Some(a2 + r), lo_closed: false, hi_closed: true }
                } else {
                    Interval { lo: Some(a2 + r), hi: None, lo_closed: true, hi_closed: false }
                }
            }
            FamilyKind::Tractoid => {
                let (b3, c) = (v("b3")?, v("C")?);
                let edge = (-b3.abs().ln() - c) / b3;
                if b3 > 0.0 {
                    Interval { lo: None, hi: Some(edge), lo_closed: false, hi_closed: true }
                } else {
                    Interval { lo: Some(edge), hi: None, lo_closed: true, hi_closed: false }
                }
            }
            FamilyKind::ConicSinh => {
                let (a7, b7, a8) = (v("a7")?, v("b7")?, v("a8")?);
                if a7 >= b7 {
                    return Err(GeometryError::EmptyDomain(self.kind));
                }
                let top = (b7 / a7).acosh();
                Interval { lo: Some(-a8 * b7), hi: Some(b7 * (top - a8)), lo_closed: false, hi_closed: true }
            }
            FamilyKind::HyperboloidCosh => {
                let (a7, b7, a8) = (v("a7")?, v("b7")?, v("a8")?);
                let s = (b7 / a7).asinh();
                Interval::closed(b7 * (-s - a8), b7 * (s - a8))
            }
            FamilyKind::CosFamily => {
                let (a5, b6, a6) = (v("a5")?, v("b6")?, v("a6")?);
                match self.cos_subtype().expect("numeric cos family") {
                    CosSubtype::Sphere => Interval::closed(b6 * (-FRAC_PI_2 - a6), b6 * (FRAC_PI_2 - a6)),
                    CosSubtype::Spindle => Interval::reals(),
                    CosSubtype::Bulge => {
                        let s = (b6 / a5).asin();
                        Interval::closed(b6 * (-s - a6), b6 * (s - a6))
                    }
                }
            }
        };
        Ok(d)
    }

    /// Interval on which the profile itself is defined and the unit-speed
    /// condition holds. It differs from [`valid_domain`](Self::valid_domain)
    /// only for the spindle, whose profile lives on the arch `|s| < π/2`.
    pub fn profile_domain(&self) -> Result<Interval, GeometryError> {
        if self.cos_subtype() == Some(CosSubtype::Spindle) {
            let (b6, a6) = (self.value("b6")?, self.value("a6")?);
            return Ok(Interval { lo: Some(b6 * (-FRAC_PI_2 - a6)), hi: Some(b6 * (FRAC_PI_2 - a6)), lo_closed: false, hi_closed: false });
        }
        self.valid_domain()
    }

    /// Interior window used for random sampling of `x`.
    pub fn sampling_window(&self) -> Result<(f64, f64), GeometryError> {
        Ok(self.profile_domain()?.window())
    }

    /// Lower limit `α₄` of the profile quadrature. Defaults: the centre of
    /// symmetry for the `cosh` and `cos` families, `0` for the cylinder,
    /// otherwise the finite end of the domain.
    pub fn quadrature_origin(&self) -> Result<f64, GeometryError> {
        if let Some(o) = self.origin {
            return Ok(o);
        }
        let d = self.profile_domain()?;
        Ok(match self.kind {
            FamilyKind::HyperboloidCosh | FamilyKind::CosFamily => {
                let (a, b) = d.finite_part();
                0.5 * (a + b)
            }
            _ => match (d.lo, d.hi) {
                (Some(a), _) => a,
                (None, Some(b)) => b,
                (None, None) => 0.0,
            },
        })
    }

    /// Sampling boxes for zero tests: `x` over the sampling window for
    /// numeric families, fixed boxes for symbolic parameters.
    pub fn hints(&self) -> DomainHints {
        let mut h = DomainHints::new();
        for (name, e) in &self.params {
            if e.as_symbol().is_some() {
                let (lo, hi) = FamilyKind::symbolic_range(name);
                h.set(name, lo, hi);
            }
        }
        match self.sampling_window() {
            Ok((lo, hi)) => h.set("x", lo, hi),
            Err(_) => h.set("x", 0.1, 0.5),
        }
        h
    }

    pub fn info(&self, tester: &ZeroTester) -> SurfaceInfo {
        let certified = self.certify_curvature(tester).is_some_and(|c| c.is_zero());
        let expected = self.expected_curvature().filter(|_| certified);
        let curvature_expression = expected.clone().unwrap_or_else(|| self.curvature()).to_string();
        let curvature_constant = expected.filter(|k| !free_symbols(k).contains(&Self::x())).map(|k| k.to_string());
        SurfaceInfo {
            family: self.kind,
            subtype: self.cos_subtype(),
            parameters: self.params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            profile: self.f.to_string(),
            domain: self.valid_domain().ok(),
            curvature_expression,
            curvature_constant,
        }
    }
}

fn validate(kind: FamilyKind, v: &BTreeMap<String, Rational>) -> Result<(), GeometryError> {
    let bad = |msg: &str| Err(GeometryError::Constraint { family: kind, message: msg.to_string() });
    let pos = |n: &str| v[n].is_positive();
    match kind {
        FamilyKind::PowerLaw => {
            let a3 = &v["a3"];
            if a3.is_zero() || *a3 == Rational::from_integer(1.into()) {
                return bad("a3 must differ from 0 and 1");
            }
            if !pos("b5") {
                return bad("b5 must be positive");
            }
        }
        FamilyKind::Cylinder if !pos("b4") => return bad("b4 must be positive"),
        FamilyKind::Cone if !pos("l") => return bad("l must be positive"),
        FamilyKind::Tractoid if v["b3"].is_zero() => return bad("b3 must be nonzero"),
        FamilyKind::ConicSinh | FamilyKind::HyperboloidCosh if !(pos("a7") && pos("b7")) => {
            return bad("a7 and b7 must be positive");
        }
        FamilyKind::CosFamily => {
            if !(pos("a5") && pos("b6")) {
                return bad("a5 and b6 must be positive");
            }
            if v["a6"].is_negative() {
                return bad("a6 must be non-negative");
            }
        }
        _ => {}
    }
    Ok(())
}

/// JSON summary of one surface.
#[derive(Debug, Clone, Serialize)]
pub struct SurfaceInfo {
    pub family: FamilyKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subtype: Option<CosSubtype>,
    pub parameters: BTreeMap<String, String>,
    pub profile: String,
    pub domain: Option<Interval>,
    pub curvature_expression: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature_constant: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_accept_greek_names() {
        let p = parse_params("α2=0, α3=0.5,β5=1").unwrap();
        assert_eq!(p["a3"], Rational::new(1.into(), 2.into()));
        assert!(parse_params("a2").is_err());
    }

    #[test]
    fn constraints_are_enforced() {
        let p = parse_params("a3=1").unwrap();
        assert!(SurfaceFamily::new(FamilyKind::PowerLaw, &p).is_err());
        let p = parse_params("zz=1").unwrap();
        assert!(SurfaceFamily::new(FamilyKind::Cylinder, &p).is_err());
    }

    #[test]
    fn sphere_domain() {
        let s = SurfaceFamily::with_defaults(FamilyKind::CosFamily).unwrap();
        let d = s.valid_domain().unwrap();
        assert!((d.lo.unwrap() + FRAC_PI_2).abs() < 1e-15 && (d.hi.unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(s.cos_subtype(), Some(CosSubtype::Sphere));
    }

    #[test]
    fn power_law_domain_below_one() {
        let s = SurfaceFamily::with_defaults(FamilyKind::PowerLaw).unwrap();
        let d = s.valid_domain().unwrap();
        assert_eq!(d.lo, Some(0.25));
        assert_eq!(d.hi, None);
    }

    #[test]
    fn interval_display() {
        let d = Interval { lo: Some(0.0), hi: None, lo_closed: false, hi_closed: false };
        assert_eq!(d.to_string(), "(0, inf)");
    }
}
