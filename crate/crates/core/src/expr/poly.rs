//! Expansion and rational normal forms.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::simplify::{add, mul, pow};
use super::{Expr, Func, Kind, Rational, Symbol};

/// Raised when an expansion would exceed its term budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("expansion exceeded {0} terms")]
pub struct BudgetExceeded(pub usize);

/// Fully distributes products and positive integer powers over sums.
/// Function arguments are left untouched.
pub fn expand(e: &Expr, budget: usize) -> Result<Expr, BudgetExceeded> {
    let mut memo = HashMap::new();
    expand_in(e, budget, &mut memo)
}

fn terms_of(e: &Expr) -> Vec<Expr> {
    match e.kind() {
        Kind::Add(ts) => ts.clone(),
        _ => vec![e.clone()],
    }
}

fn expand_in(e: &Expr, budget: usize, memo: &mut HashMap<*const (), Expr>) -> Result<Expr, BudgetExceeded> {
    if let Some(v) = memo.get(&e.ptr()) {
        return Ok(v.clone());
    }
    let r = match e.kind() {
        Kind::Num(_) | Kind::Sym(_) | Kind::Fun(..) => e.clone(),
        Kind::Add(ts) => {
            let parts = ts.iter().map(|t| expand_in(t, budget, memo)).collect::<Result<Vec<_>, _>>()?;
            add(parts)
        }
        Kind::Mul(fs) => {
            let mut acc = vec![Expr::one()];
            for f in fs {
                let ex = expand_in(f, budget, memo)?;
                acc = distribute(&acc, &terms_of(&ex), budget)?;
            }
            add(acc)
        }
        Kind::Pow(b, q) => {
            let eb = expand_in(b, budget, memo)?;
            match q.to_u32() {
                Some(n) if q.is_integer() && matches!(eb.kind(), Kind::Add(_)) => {
                    let bt = terms_of(&eb);
                    let mut acc = vec![Expr::one()];
                    for _ in 0..n {
                        acc = distribute(&acc, &bt, budget)?;
                    }
                    add(acc)
                }
                _ => pow(eb, q.clone()),
            }
        }
    };
    memo.insert(e.ptr(), r.clone());
    Ok(r)
}

fn distribute(a: &[Expr], b: &[Expr], budget: usize) -> Result<Vec<Expr>, BudgetExceeded> {
    if a.len() * b.len() > budget {
        return Err(BudgetExceeded(budget));
    }
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(mul([x.clone(), y.clone()]));
        }
    }
    // Collect like terms early so repeated products stay small.
    Ok(terms_of(&add(out)))
}

/// Monomial in a chosen set of variables, as sorted `(symbol, power)` pairs.
pub type VarMonomial = Vec<(Symbol, u32)>;

/// Expands `e` and groups it by monomials in the variables selected by
/// `is_var`. Coefficients are free of those variables unless a variable
/// occurs non-polynomially (inside a function or with a non-natural power),
/// in which case the whole factor stays in the coefficient.
pub fn coefficients(
    e: &Expr,
    is_var: impl Fn(&Symbol) -> bool,
    budget: usize,
) -> Result<BTreeMap<VarMonomial, Expr>, BudgetExceeded> {
    let ex = expand(e, budget)?;
    let mut groups: BTreeMap<VarMonomial, Vec<Expr>> = BTreeMap::new();
    for t in terms_of(&ex) {
        let factors = match t.kind() {
            Kind::Mul(fs) => fs.clone(),
            _ => vec![t.clone()],
        };
        let mut key: VarMonomial = Vec::new();
        let mut rest = Vec::new();
        for f in factors {
            match f.kind() {
                Kind::Sym(s) if is_var(s) => key.push((s.clone(), 1)),
                Kind::Pow(b, q) => match (b.kind(), q.to_u32()) {
                    (Kind::Sym(s), Some(n)) if is_var(s) && q.is_integer() => key.push((s.clone(), n)),
                    _ => rest.push(f.clone()),
                },
                _ => rest.push(f.clone()),
            }
        }
        key.sort();
        groups.entry(key).or_default().push(mul(rest));
    }
    Ok(groups
        .into_iter()
        .map(|(k, v)| (k, add(v)))
        .filter(|(_, v)| !v.is_zero_literal())
        .collect())
}

/// Monomial over arbitrary atoms with rational exponents; exponentials are
/// merged into a single `exp(arg)` factor.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Mono {
    atoms: Vec<(Expr, Rational)>,
    exp_arg: Option<Expr>,
}

impl Mono {
    fn one() -> Mono {
        Mono { atoms: vec![], exp_arg: None }
    }

    fn atom(e: Expr, q: Rational) -> Mono {
        Mono { atoms: vec![(e, q)], exp_arg: None }
    }

    fn times(&self, o: &Mono) -> Mono {
        let mut merged: BTreeMap<Expr, Rational> = BTreeMap::new();
        for (a, q) in self.atoms.iter().chain(o.atoms.iter()) {
            *merged.entry(a.clone()).or_insert_with(Rational::zero) += q;
        }
        let exp_arg = match (&self.exp_arg, &o.exp_arg) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (Some(a), Some(b)) => Some(add([a.clone(), b.clone()])).filter(|s| !s.is_zero_literal()),
        };
        Mono { atoms: merged.into_iter().filter(|(_, q)| !q.is_zero()).collect(), exp_arg }
    }
}

#[derive(Clone, PartialEq, Debug)]
struct Poly(BTreeMap<Mono, Rational>);

impl Poly {
    fn constant(c: Rational) -> Poly {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(Mono::one(), c);
        }
        Poly(m)
    }

    fn mono(m: Mono) -> Poly {
        let mut t = BTreeMap::new();
        t.insert(m, Rational::one());
        Poly(t)
    }

    fn plus(&self, o: &Poly) -> Poly {
        let mut t = self.0.clone();
        for (m, c) in &o.0 {
            let e = t.entry(m.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                t.remove(m);
            }
        }
        Poly(t)
    }

    fn times(&self, o: &Poly, budget: usize) -> Result<Poly, BudgetExceeded> {
        if self.0.len() * o.0.len() > budget {
            return Err(BudgetExceeded(budget));
        }
        let mut t: BTreeMap<Mono, Rational> = BTreeMap::new();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &o.0 {
                *t.entry(m1.times(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        t.retain(|_, c| !c.is_zero());
        Ok(Poly(t))
    }

    fn power(&self, n: u32, budget: usize) -> Result<Poly, BudgetExceeded> {
        let mut acc = Poly::constant(Rational::one());
        for _ in 0..n {
            acc = acc.times(self, budget)?;
        }
        Ok(acc)
    }
}

type Frac = (Poly, Poly);

fn to_frac(e: &Expr, budget: usize, memo: &mut HashMap<*const (), Frac>) -> Result<Frac, BudgetExceeded> {
    if let Some(v) = memo.get(&e.ptr()) {
        return Ok(v.clone());
    }
    let one = || Poly::constant(Rational::one());
    let r: Frac = match e.kind() {
        Kind::Num(c) => (Poly::constant(c.clone()), one()),
        Kind::Sym(_) => (Poly::mono(Mono::atom(e.clone(), Rational::one())), one()),
        Kind::Add(ts) => {
            let mut acc = (Poly::constant(Rational::zero()), one());
            for t in ts {
                let (n, d) = to_frac(t, budget, memo)?;
                acc = if d == acc.1 {
                    (acc.0.plus(&n), d)
                } else {
                    (acc.0.times(&d, budget)?.plus(&n.times(&acc.1, budget)?), acc.1.times(&d, budget)?)
                };
            }
            acc
        }
        Kind::Mul(fs) => {
            let mut acc = (one(), one());
            for f in fs {
                let (n, d) = to_frac(f, budget, memo)?;
                acc = (acc.0.times(&n, budget)?, acc.1.times(&d, budget)?);
            }
            acc
        }
        Kind::Pow(b, q) => {
            if q.is_integer() {
                let (n, d) = to_frac(b, budget, memo)?;
                let k = q.abs().to_u32().ok_or(BudgetExceeded(budget))?;
                let (n, d) = (n.power(k, budget)?, d.power(k, budget)?);
                if q.is_negative() {
                    (d, n)
                } else {
                    (n, d)
                }
            } else if q.is_negative() {
                (one(), Poly::mono(Mono::atom(b.clone(), -q)))
            } else {
                (Poly::mono(Mono::atom(b.clone(), q.clone())), one())
            }
        }
        Kind::Fun(Func::Exp, a) => (Poly::mono(Mono { atoms: vec![], exp_arg: Some(a.clone()) }), one()),
        Kind::Fun(Func::Tanh, a) => (Poly::mono(Mono::atom(a.sinh(), Rational::one())), Poly::mono(Mono::atom(a.cosh(), Rational::one()))),
        Kind::Fun(Func::Coth, a) => (Poly::mono(Mono::atom(a.cosh(), Rational::one())), Poly::mono(Mono::atom(a.sinh(), Rational::one()))),
        Kind::Fun(..) => (Poly::mono(Mono::atom(e.clone(), Rational::one())), one()),
    };
    memo.insert(e.ptr(), r.clone());
    Ok(r)
}

/// Rewrites even powers of `cosh`/`cos` through `sinh`/`sin`.
fn pythagorean(p: &Poly, budget: usize) -> Result<Poly, BudgetExceeded> {
    let mut out = Poly::constant(Rational::zero());
    for (m, c) in &p.0 {
        let mut term = Poly::constant(c.clone());
        let mut rest = Mono { atoms: vec![], exp_arg: m.exp_arg.clone() };
        for (a, q) in &m.atoms {
            let swap = match a.kind() {
                Kind::Fun(Func::Cosh, x) => Some((x.sinh(), 1)),
                Kind::Fun(Func::Cos, x) => Some((x.sin(), -1)),
                _ => None,
            };
            match (swap, q.to_u32()) {
                (Some((s, sign)), Some(k)) if q.is_integer() && k >= 2 => {
                    let sq = Poly::mono(Mono::atom(s, Rational::from_integer(2.into())));
                    let base = Poly::constant(Rational::one()).plus(&sq.times(&Poly::constant(Rational::from_integer(sign.into())), budget)?);
                    term = term.times(&base.power(k / 2, budget)?, budget)?;
                    if k % 2 == 1 {
                        rest = rest.times(&Mono::atom(a.clone(), Rational::one()));
                    }
                }
                _ => rest = rest.times(&Mono::atom(a.clone(), q.clone())),
            }
        }
        out = out.plus(&term.times(&Poly::mono(rest), budget)?);
    }
    Ok(out)
}

/// Decides whether `e` is identically zero by bringing it to a single
/// fraction and expanding the numerator. `Ok(false)` only means no
/// cancellation was found.
pub fn symbolic_zero(e: &Expr, budget: usize) -> Result<bool, BudgetExceeded> {
    let mut memo = HashMap::new();
    let (n, _) = to_frac(e, budget, &mut memo)?;
    Ok(pythagorean(&n, budget)?.0.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn expands_binomials() {
        let e = parse("(x + y)^2 - x^2 - y^2").unwrap();
        assert_eq!(expand(&e, 100).unwrap(), parse("2*x*y").unwrap());
    }

    #[test]
    fn groups_by_selected_variables() {
        let e = parse("a*u*v + b*u*v + c*u^2 + d").unwrap();
        let c = coefficients(&e, |s| s.name() == "u" || s.name() == "v", 100).unwrap();
        assert_eq!(c.len(), 3);
        let uv = vec![(Symbol::new("u"), 1), (Symbol::new("v"), 1)];
        assert_eq!(c[&uv], parse("a + b").unwrap());
    }

    #[test]
    fn rational_identities() {
        for s in [
            "1/(x+1) + 1/(x-1) - 2*x/(x^2-1)",
            "tanh(x) - sinh(x)/cosh(x)",
            "cosh(x)^2 - sinh(x)^2 - 1",
            "1 - tanh(x)^2 - 1/cosh(x)^2",
            "sin(x)^2 + cos(x)^2 - 1",
            "exp(x)*exp(-x) - 1",
            "x^(1/2)*x^(1/2) - x",
        ] {
            assert!(symbolic_zero(&parse(s).unwrap(), 10_000).unwrap(), "{s}");
        }
        assert!(!symbolic_zero(&parse("x - y").unwrap(), 100).unwrap());
    }
}
