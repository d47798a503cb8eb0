//! Unit-speed profile curves `(v(x), w(x))` and coordinate patches.

use super::{GeometryError, Interval, SurfaceFamily};
use crate::expr::{differentiate, F64Tape, Symbol};
use crate::numeric::adaptive_simpson;

/// Default absolute tolerance of the profile quadrature.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Distance kept from a domain boundary where the integrand is singular.
const EDGE_SHRINK: f64 = 1e-12;

/// The generating curve of a surface, with `v` reconstructed from
/// `v′ = √(1 − w′²)`.
#[derive(Debug, Clone)]
pub struct ProfileCurve {
    w: F64Tape,
    w1: F64Tape,
    domain: Interval,
    origin: f64,
    tol: f64,
}

impl ProfileCurve {
    pub fn new(family: &SurfaceFamily, tol: f64) -> Result<ProfileCurve, GeometryError> {
        if !(tol > 0.0) {
            return Err(GeometryError::BadTolerance(tol));
        }
        let x = Symbol::new("x");
        let w = family.warp();
        let w1 = differentiate(&w, &x);
        Ok(ProfileCurve {
            w: F64Tape::new(&w, std::slice::from_ref(&x))?,
            w1: F64Tape::new(&w1, std::slice::from_ref(&x))?,
            domain: family.profile_domain()?,
            origin: family.quadrature_origin()?,
            tol,
        })
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    /// Lower quadrature limit `α₄`.
    pub fn origin(&self) -> f64 {
        self.origin
    }

    fn check(&self, x: f64) -> Result<f64, GeometryError> {
        if !self.domain.contains_closure(x) {
            return Err(GeometryError::OutsideDomain { x, domain: self.domain });
        }
        Ok(x)
    }

    /// Evaluates a tape, stepping slightly inside the domain when the
    /// boundary itself is singular.
    fn eval(&self, tape: &F64Tape, x: f64) -> Result<f64, GeometryError> {
        match tape.eval(&[x]) {
            Ok(v) => Ok(v),
            Err(e) => {
                let width = {
                    let (a, b) = self.domain.finite_part();
                    (b - a).max(1.0)
                };
                let step = EDGE_SHRINK * width;
                let inward = match (self.domain.lo, self.domain.hi) {
                    (Some(a), _) if (x - a).abs() <= step => x + step,
                    (_, Some(b)) if (x - b).abs() <= step => x - step,
                    _ => return Err(e.into()),
                };
                Ok(tape.eval(&[inward])?)
            }
        }
    }

    pub fn w(&self, x: f64) -> Result<f64, GeometryError> {
        self.eval(&self.w, self.check(x)?)
    }

    pub fn w_prime(&self, x: f64) -> Result<f64, GeometryError> {
        self.eval(&self.w1, self.check(x)?)
    }

    /// `√(1 − w′²)`, clamped at zero against rounding at the domain edge.
    pub fn integrand(&self, x: f64) -> Result<f64, GeometryError> {
        let d = self.w_prime(x)?;
        Ok((1.0 - d * d).max(0.0).sqrt())
    }

    /// `v(x) = ∫_{α₄}^{x} √(1 − w′(s)²) ds`.
    pub fn v(&self, x: f64) -> Result<f64, GeometryError> {
        self.check(x)?;
        self.integral(self.origin, x, self.tol)
    }

    fn integral(&self, a: f64, b: f64, tol: f64) -> Result<f64, GeometryError> {
        Ok(adaptive_simpson(|s| self.integrand(s).unwrap_or(f64::NAN), a, b, tol)?)
    }

    /// `v′(x)` by differencing the quadrature: Richardson-extrapolated
    /// central quotients of `∫_{x−h}^{x+h}`.
    pub fn v_prime_by_differencing(&self, x: f64, h: f64) -> Result<f64, GeometryError> {
        self.check(x - h)?;
        self.check(x + h)?;
        let quotient = |h: f64| -> Result<f64, GeometryError> { Ok(self.integral(x - h, x + h, 1e-13 * h)? / (2.0 * h)) };
        let (coarse, fine) = (quotient(h)?, quotient(0.5 * h)?);
        Ok((4.0 * fine - coarse) / 3.0)
    }

    /// The embedding `(v(x), w(x) cos y, w(x) sin y)`.
    pub fn coordinate_patch(&self, x: f64, y: f64) -> Result<[f64; 3], GeometryError> {
        let (v, w) = (self.v(x)?, self.w(x)?);
        Ok([v, w * y.cos(), w * y.sin()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::FamilyKind;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn sphere_profile_is_sine() {
        let s = SurfaceFamily::with_defaults(FamilyKind::CosFamily).unwrap();
        let c = ProfileCurve::new(&s, 1e-12).unwrap();
        assert!((c.v(FRAC_PI_4).unwrap() - 0.5f64.sqrt()).abs() < 1e-10);
        let p = c.coordinate_patch(0.0, 0.0).unwrap();
        assert!(p[0].abs() < 1e-15 && (p[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn plane_profile_is_flat() {
        let s = SurfaceFamily::with_defaults(FamilyKind::Plane).unwrap();
        let c = ProfileCurve::new(&s, 1e-10).unwrap();
        assert_eq!(c.v(3.0).unwrap(), 0.0);
    }

    #[test]
    fn outside_domain_is_rejected() {
        let s = SurfaceFamily::with_defaults(FamilyKind::PowerLaw).unwrap();
        let c = ProfileCurve::new(&s, 1e-10).unwrap();
        assert!(c.v(0.1).is_err());
        assert!(c.v(1.0).unwrap() > 0.0);
    }
}
