use std::collections::HashMap;

use super::simplify::{add, mul, pow};
use super::{Expr, Func, Kind, Rational, Symbol};
use num_traits::One;

/// Exact partial derivative with respect to `s`, memoized over shared
/// subexpressions.
pub fn differentiate(e: &Expr, s: &Symbol) -> Expr {
    let mut memo = HashMap::new();
    d(e, s, &mut memo)
}

fn d(e: &Expr, s: &Symbol, memo: &mut HashMap<*const (), Expr>) -> Expr {
    if !e.may_contain(s) {
        return Expr::zero();
    }
    if let Some(v) = memo.get(&e.ptr()) {
        return v.clone();
    }
    let r = match e.kind() {
        Kind::Num(_) => Expr::zero(),
        Kind::Sym(t) => {
            if t == s {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Kind::Add(ts) => add(ts.iter().map(|t| d(t, s, memo))),
        Kind::Mul(fs) => {
            let mut terms = Vec::new();
            for i in 0..fs.len() {
                let di = d(&fs[i], s, memo);
                if di.is_zero_literal() {
                    continue;
                }
                let mut g = fs.clone();
                g[i] = di;
                terms.push(mul(g));
            }
            add(terms)
        }
        Kind::Pow(b, q) => {
            let db = d(b, s, memo);
            if db.is_zero_literal() {
                Expr::zero()
            } else {
                mul([Expr::rational(q.clone()), pow(b.clone(), q - Rational::one()), db])
            }
        }
        Kind::Fun(f, a) => {
            let da = d(a, s, memo);
            if da.is_zero_literal() {
                Expr::zero()
            } else {
                let outer = match f {
                    Func::Exp => e.clone(),
                    Func::Ln => a.recip(),
                    Func::Sin => a.cos(),
                    Func::Cos => -a.sin(),
                    Func::Sinh => a.cosh(),
                    Func::Cosh => a.sinh(),
                    Func::Tanh => 1 - e.powi(2),
                    Func::Coth => 1 - e.powi(2),
                };
                mul([outer, da])
            }
        }
    };
    memo.insert(e.ptr(), r.clone());
    r
}
