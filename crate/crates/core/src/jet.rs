//! Jet space of the dependent variable `u(x, y, t)` up to order five, total
//! derivatives and prolongation of point-symmetry candidates.
//!
//! Jet coordinates are plain symbols: `u`, `u_x`, `u_xxyy`, `u_xt`, with the
//! derivative letters always in the order `x`, `y`, `t`. A generic profile
//! `f(x)` may appear through the symbols `f`, `f_x`, `f_xx`, …; total
//! `x`-derivatives differentiate through them.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::expr::{add, differentiate, free_symbols, substitute, Expr, Symbol};

pub const MAX_ORDER: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("jet order {0} exceeds the cap of {MAX_ORDER}")]
    OrderExceeded(u32),
    #[error("expression depends on jet variable `{0}` where a plain function was expected")]
    UnexpectedJet(String),
    #[error("right-hand side contains the time derivative `{0}`")]
    TimeDerivativeInRhs(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Direction {
    X,
    Y,
    T,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::X, Direction::Y, Direction::T];

    pub fn symbol(self) -> Symbol {
        Symbol::new(self.letter())
    }

    pub fn letter(self) -> &'static str {
        match self {
            Direction::X => "x",
            Direction::Y => "y",
            Direction::T => "t",
        }
    }
}

/// Multi-index of a partial derivative of `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct JetCoordinate {
    pub x: u8,
    pub y: u8,
    pub t: u8,
}

impl JetCoordinate {
    pub const U: JetCoordinate = JetCoordinate { x: 0, y: 0, t: 0 };

    pub fn new(x: u8, y: u8, t: u8) -> Result<Self, JetError> {
        let j = JetCoordinate { x, y, t };
        if j.order() > MAX_ORDER {
            return Err(JetError::OrderExceeded(j.order()));
        }
        Ok(j)
    }

    pub fn order(&self) -> u32 {
        (self.x + self.y + self.t) as u32
    }

    pub fn count(&self, d: Direction) -> u8 {
        match d {
            Direction::X => self.x,
            Direction::Y => self.y,
            Direction::T => self.t,
        }
    }

    pub fn name(&self) -> String {
        if self.order() == 0 {
            return "u".into();
        }
        format!("u_{}{}{}", "x".repeat(self.x as usize), "y".repeat(self.y as usize), "t".repeat(self.t as usize))
    }

    pub fn symbol(&self) -> Symbol {
        Symbol::new(&self.name())
    }

    pub fn expr(&self) -> Expr {
        Expr::sym(&self.name())
    }

    /// Inverse of [`JetCoordinate::name`]; `None` for anything else.
    pub fn parse(name: &str) -> Option<Self> {
        if name == "u" {
            return Some(Self::U);
        }
        let rest = name.strip_prefix("u_")?;
        let x = rest.bytes().take_while(|&b| b == b'x').count();
        let y = rest[x..].bytes().take_while(|&b| b == b'y').count();
        let t = rest[x + y..].bytes().take_while(|&b| b == b't').count();
        if x + y + t != rest.len() || rest.is_empty() || x + y + t > MAX_ORDER as usize {
            return None;
        }
        Some(JetCoordinate { x: x as u8, y: y as u8, t: t as u8 })
    }

    pub fn shifted(&self, d: Direction) -> Result<Self, JetError> {
        let mut j = *self;
        match d {
            Direction::X => j.x += 1,
            Direction::Y => j.y += 1,
            Direction::T => j.t += 1,
        }
        if j.order() > MAX_ORDER {
            return Err(JetError::OrderExceeded(j.order()));
        }
        Ok(j)
    }

    fn lowered(&self, d: Direction) -> Self {
        let mut j = *self;
        match d {
            Direction::X => j.x -= 1,
            Direction::Y => j.y -= 1,
            Direction::T => j.t -= 1,
        }
        j
    }

    /// All coordinates of order at most `order`.
    pub fn up_to(order: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for n in 0..=order {
            for x in 0..=n {
                for y in 0..=(n - x) {
                    out.push(JetCoordinate { x: x as u8, y: y as u8, t: (n - x - y) as u8 });
                }
            }
        }
        out
    }
}

impl fmt::Display for JetCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Symbol of the `k`-th derivative of the generic profile: `f`, `f_x`, …
pub fn profile_symbol(k: usize) -> Symbol {
    if k == 0 {
        Symbol::new("f")
    } else {
        Symbol::new(&format!("f_{}", "x".repeat(k)))
    }
}

fn profile_order(name: &str) -> Option<usize> {
    if name == "f" {
        return Some(0);
    }
    let rest = name.strip_prefix("f_")?;
    (!rest.is_empty() && rest.bytes().all(|b| b == b'x')).then_some(rest.len())
}

/// Jet coordinates occurring in `e`.
pub fn jets_in(e: &Expr) -> BTreeSet<JetCoordinate> {
    free_symbols(e).iter().filter_map(|s| JetCoordinate::parse(s.name())).collect()
}

/// Highest jet order in `e` (0 if only `u` or no jet occurs).
pub fn jet_order(e: &Expr) -> u32 {
    jets_in(e).iter().map(|j| j.order()).max().unwrap_or(0)
}

/// Partial derivative treating jet symbols as independent of `x, y, t`,
/// but following the generic profile through `f_x, f_xx, …` for `x`.
pub fn explicit_partial(e: &Expr, d: Direction) -> Expr {
    let mut terms = vec![differentiate(e, &d.symbol())];
    if d == Direction::X {
        for s in free_symbols(e) {
            if let Some(k) = profile_order(s.name()) {
                terms.push(Expr::symbol(&profile_symbol(k + 1)) * differentiate(e, &s));
            }
        }
    }
    add(terms)
}

/// Total derivative `D_d e`, chaining through every jet of `u` and through
/// the generic profile.
pub fn total_derivative(e: &Expr, d: Direction) -> Result<Expr, JetError> {
    let mut terms = vec![explicit_partial(e, d)];
    for s in free_symbols(e) {
        if let Some(j) = JetCoordinate::parse(s.name()) {
            let de = differentiate(e, &s);
            if !de.is_zero_literal() {
                terms.push(j.shifted(d)?.expr() * de);
            }
        }
    }
    Ok(add(terms))
}

/// `D_J e` for a multi-index `J`.
pub fn total_derivative_multi(e: &Expr, j: JetCoordinate) -> Result<Expr, JetError> {
    let mut out = e.clone();
    for (d, n) in [(Direction::X, j.x), (Direction::Y, j.y), (Direction::T, j.t)] {
        for _ in 0..n {
            out = total_derivative(&out, d)?;
        }
    }
    Ok(out)
}

/// Infinitesimal point transformation
/// `X = ξ ∂x + φ ∂y + τ ∂t + ζ ∂u` with components depending on `x, y, t, u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointSymmetryCandidate {
    pub xi: Expr,
    pub phi: Expr,
    pub tau: Expr,
    pub zeta: Expr,
}

impl PointSymmetryCandidate {
    pub fn new(xi: Expr, phi: Expr, tau: Expr, zeta: Expr) -> Result<Self, JetError> {
        for c in [&xi, &phi, &tau, &zeta] {
            if let Some(j) = jets_in(c).into_iter().find(|j| j.order() > 0) {
                return Err(JetError::UnexpectedJet(j.name()));
            }
        }
        Ok(PointSymmetryCandidate { xi, phi, tau, zeta })
    }

    pub fn components(&self) -> [&Expr; 4] {
        [&self.xi, &self.phi, &self.tau, &self.zeta]
    }

    /// Characteristic `Q = ζ − ξ u_x − φ u_y − τ u_t`.
    pub fn characteristic(&self) -> Expr {
        let j = |x, y, t| JetCoordinate { x, y, t }.expr();
        &self.zeta - &self.xi * j(1, 0, 0) - &self.phi * j(0, 1, 0) - &self.tau * j(0, 0, 1)
    }

    /// Applies the unprolonged field to a function of `x, y, t, u`.
    pub fn apply_to_function(&self, g: &Expr) -> Expr {
        add([
            &self.xi * explicit_partial(g, Direction::X),
            &self.phi * differentiate(g, &Symbol::new("y")),
            &self.tau * differentiate(g, &Symbol::new("t")),
            &self.zeta * differentiate(g, &Symbol::new("u")),
        ])
    }
}

impl fmt::Display for PointSymmetryCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (c, v) in [(&self.xi, "x"), (&self.phi, "y"), (&self.tau, "t"), (&self.zeta, "u")] {
            if !c.is_zero_literal() {
                parts.push(format!("({c})*d_{v}"));
            }
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Prolongation coefficients of one candidate, with `D_J Q` cached.
pub struct Prolongation<'a> {
    candidate: &'a PointSymmetryCandidate,
    dq: HashMap<JetCoordinate, Expr>,
}

impl<'a> Prolongation<'a> {
    pub fn new(candidate: &'a PointSymmetryCandidate) -> Self {
        let mut dq = HashMap::new();
        dq.insert(JetCoordinate::U, candidate.characteristic());
        Prolongation { candidate, dq }
    }

    fn derived_characteristic(&mut self, j: JetCoordinate) -> Result<Expr, JetError> {
        if let Some(e) = self.dq.get(&j) {
            return Ok(e.clone());
        }
        let d = [Direction::T, Direction::Y, Direction::X].into_iter().find(|d| j.count(*d) > 0).unwrap();
        let parent = self.derived_characteristic(j.lowered(d))?;
        let e = total_derivative(&parent, d)?;
        self.dq.insert(j, e.clone());
        Ok(e)
    }

    /// `η^J = D_J Q + ξ u_{J+x} + φ u_{J+y} + τ u_{J+t}`.
    pub fn coefficient(&mut self, j: JetCoordinate) -> Result<Expr, JetError> {
        if j.order() >= MAX_ORDER {
            return Err(JetError::OrderExceeded(j.order() + 1));
        }
        let c = self.candidate;
        Ok(add([
            self.derived_characteristic(j)?,
            &c.xi * j.shifted(Direction::X)?.expr(),
            &c.phi * j.shifted(Direction::Y)?.expr(),
            &c.tau * j.shifted(Direction::T)?.expr(),
        ]))
    }

    /// `X^[n] F` for `F` depending on `x, y, t` and jets of `u`.
    pub fn apply(&mut self, f: &Expr) -> Result<Expr, JetError> {
        let c = self.candidate;
        let mut terms = vec![
            &c.xi * explicit_partial(f, Direction::X),
            &c.phi * explicit_partial(f, Direction::Y),
            &c.tau * explicit_partial(f, Direction::T),
        ];
        for j in jets_in(f) {
            let df = differentiate(f, &j.symbol());
            if df.is_zero_literal() {
                continue;
            }
            let eta = if j == JetCoordinate::U { c.zeta.clone() } else { self.coefficient(j)? };
            terms.push(eta * df);
        }
        Ok(add(terms))
    }
}

/// `η^J` for a single multi-index.
pub fn prolongation_coefficient(x: &PointSymmetryCandidate, j: JetCoordinate) -> Result<Expr, JetError> {
    Prolongation::new(x).coefficient(j)
}

/// Applies the prolongation of `x` to `f`.
pub fn apply_prolonged(x: &PointSymmetryCandidate, f: &Expr) -> Result<Expr, JetError> {
    Prolongation::new(x).apply(f)
}

/// Replaces every jet containing a `t` derivative using `u_t = rhs`,
/// differentiating `rhs` as often as needed, until no time derivative is left.
pub fn restrict_to_solutions(e: &Expr, rhs: &Expr) -> Result<Expr, JetError> {
    if let Some(j) = jets_in(rhs).into_iter().find(|j| j.t > 0) {
        return Err(JetError::TimeDerivativeInRhs(j.name()));
    }
    let mut cache: HashMap<JetCoordinate, Expr> = HashMap::new();
    let mut out = e.clone();
    loop {
        let timed: Vec<JetCoordinate> = jets_in(&out).into_iter().filter(|j| j.t > 0).collect();
        if timed.is_empty() {
            return Ok(out);
        }
        let mut map = HashMap::new();
        for j in timed {
            let spatial = JetCoordinate { x: j.x, y: j.y, t: j.t - 1 };
            let value = match cache.get(&spatial) {
                Some(v) => v.clone(),
                None => {
                    let v = total_derivative_multi(rhs, spatial)?;
                    if jet_order(&v) > MAX_ORDER {
                        return Err(JetError::OrderExceeded(jet_order(&v)));
                    }
                    cache.insert(spatial, v.clone());
                    v
                }
            };
            map.insert(j.symbol(), value);
        }
        out = substitute(&out, &map);
    }
}

/// Replaces each jet `u_J` by `∂_J g` for a concrete function `g(x, y, t)`.
pub fn substitute_function(e: &Expr, g: &Expr) -> Expr {
    let mut map = HashMap::new();
    for j in jets_in(e) {
        let mut d = g.clone();
        for (dir, n) in [(Direction::X, j.x), (Direction::Y, j.y), (Direction::T, j.t)] {
            for _ in 0..n {
                d = explicit_partial(&d, dir);
            }
        }
        map.insert(j.symbol(), d);
    }
    substitute(e, &map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn names_roundtrip() {
        for j in JetCoordinate::up_to(5) {
            assert_eq!(JetCoordinate::parse(&j.name()), Some(j));
        }
        assert_eq!(JetCoordinate::up_to(5).len(), 56);
        assert!(JetCoordinate::parse("u_yx").is_none());
        assert!(JetCoordinate::parse("u_xxxxxx").is_none());
        assert!(JetCoordinate::parse("ux").is_none());
    }

    #[test]
    fn total_x_derivative_of_product() {
        let e = parse("u*u_x").unwrap();
        let d = total_derivative(&e, Direction::X).unwrap();
        assert_eq!(d, parse("u_x^2 + u*u_xx").unwrap());
    }

    #[test]
    fn order_cap_is_enforced() {
        let e = parse("u_xxxxx").unwrap();
        assert_eq!(total_derivative(&e, Direction::X), Err(JetError::OrderExceeded(6)));
    }

    #[test]
    fn generic_profile_chain_rule() {
        let e = parse("exp(-2*f)*u_yy").unwrap();
        let d = total_derivative(&e, Direction::X).unwrap();
        assert_eq!(d, parse("-2*f_x*exp(-2*f)*u_yy + exp(-2*f)*u_xyy").unwrap());
    }

    #[test]
    fn time_translation_prolongation_vanishes() {
        let x = PointSymmetryCandidate::new(Expr::zero(), Expr::zero(), Expr::one(), Expr::zero()).unwrap();
        for j in JetCoordinate::up_to(4) {
            assert!(prolongation_coefficient(&x, j).unwrap().is_zero_literal());
        }
    }

    #[test]
    fn restriction_replaces_time_derivatives() {
        let e = parse("u_t + u_xt").unwrap();
        let r = restrict_to_solutions(&e, &parse("u_xx").unwrap()).unwrap();
        assert_eq!(r, parse("u_xx + u_xxx").unwrap());
    }
}
