//! Adaptive Simpson quadrature.

use thiserror::Error;

use crate::expr::{EvalError, Expr, F64Tape, Symbol};

/// Hard cap on the number of subintervals visited by one integration.
pub const MAX_SUBINTERVALS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("subdivision cap exceeded after {intervals} subintervals near x = {near}")]
    CapExceeded { intervals: usize, near: f64 },
    #[error("integrand is not finite at x = {0}")]
    NonFinite(f64),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

struct Piece {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// `∫_lo^hi g` with an absolute error target `tol`. Intervals are bisected
/// until the two-panel and one-panel estimates agree to `15·tol` (the local
/// tolerance halves with each split, but never drops below rounding level of
/// the first estimate); the result carries the Richardson correction.
pub fn adaptive_simpson(g: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64, QuadratureError> {
    if !(tol > 0.0) {
        return Err(QuadratureError::BadTolerance(tol));
    }
    if lo == hi {
        return Ok(0.0);
    }
    if hi < lo {
        return adaptive_simpson(g, hi, lo, tol).map(|v| -v);
    }
    let eval = |x: f64| {
        let v = g(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(QuadratureError::NonFinite(x))
        }
    };
    let (fa, fb) = (eval(lo)?, eval(hi)?);
    let m = 0.5 * (lo + hi);
    let fm = eval(m)?;
    let whole = simpson(lo, hi, fa, fm, fb);
    let floor = f64::EPSILON * whole.abs();
    let mut stack = vec![Piece { a: lo, b: hi, fa, fm, fb, whole, tol }];
    let mut total = 0.0;
    let mut compensation = 0.0;
    let mut visited = 0usize;
    let min_width = 4.0 * f64::EPSILON * (hi - lo).max(hi.abs().max(lo.abs()));
    while let Some(p) = stack.pop() {
        visited += 1;
        if visited > MAX_SUBINTERVALS {
            return Err(QuadratureError::CapExceeded { intervals: visited - 1, near: 0.5 * (p.a + p.b) });
        }
        let m = 0.5 * (p.a + p.b);
        let (lm, rm) = (0.5 * (p.a + m), 0.5 * (m + p.b));
        if p.b - p.a < min_width {
            // Panels narrower than rounding resolution: not resolvable here.
            return Err(QuadratureError::CapExceeded { intervals: visited, near: m });
        }
        let (flm, frm) = (eval(lm)?, eval(rm)?);
        let left = simpson(p.a, m, p.fa, flm, p.fm);
        let right = simpson(m, p.b, p.fm, frm, p.fb);
        let delta = left + right - p.whole;
        if delta.abs() <= 15.0 * p.tol.max(floor) {
            // Kahan summation keeps many tiny panels from losing digits.
            let y = left + right + delta / 15.0 - compensation;
            let t = total + y;
            compensation = (t - total) - y;
            total = t;
        } else {
            let tol = 0.5 * p.tol;
            stack.push(Piece { a: m, b: p.b, fa: p.fm, fm: frm, fb: p.fb, whole: right, tol });
            stack.push(Piece { a: p.a, b: m, fa: p.fa, fm: flm, fb: p.fm, whole: left, tol });
        }
    }
    Ok(total)
}

/// `∫_lo^hi e d(sym)` for an expression in one variable. An endpoint where
/// `e` cannot be evaluated is moved `10⁻¹²·(hi − lo)` inward.
pub fn adaptive_quadrature(e: &Expr, sym: &Symbol, lo: f64, hi: f64, tol: f64) -> Result<f64, QuadratureError> {
    let tape = F64Tape::new(e, std::slice::from_ref(sym))?;
    let nudge = 1e-12 * (hi - lo);
    let at = |x: f64, inward: f64| match tape.eval(&[x]) {
        Ok(v) => Ok(v),
        Err(_) => tape.eval(&[x + inward]),
    };
    // Probe the endpoints once so real evaluation errors surface as such.
    at(lo, nudge)?;
    at(hi, -nudge)?;
    adaptive_simpson(
        |x| {
            let r = if x == lo {
                at(x, nudge)
            } else if x == hi {
                at(x, -nudge)
            } else {
                tape.eval(&[x])
            };
            r.unwrap_or(f64::NAN)
        },
        lo,
        hi,
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn closed_forms() {
        let s = Symbol::new("s");
        assert_eq!(adaptive_quadrature(&parse("1").unwrap(), &s, 0.0, 1.0, 1e-10).unwrap(), 1.0);
        let v = adaptive_quadrature(&parse("cos(s)").unwrap(), &s, 0.0, std::f64::consts::FRAC_PI_4, 1e-10).unwrap();
        assert!((v - 0.5f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn divergent_integral_hits_cap() {
        let s = Symbol::new("s");
        let r = adaptive_quadrature(&parse("1/s").unwrap(), &s, 0.0, 1.0, 1e-10);
        assert!(matches!(r, Err(QuadratureError::CapExceeded { .. })), "{r:?}");
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let v = adaptive_simpson(|x| x * x, 1.0, 0.0, 1e-12).unwrap();
        assert!((v + 1.0 / 3.0).abs() < 1e-12);
    }
}
