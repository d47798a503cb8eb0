use std::collections::{BTreeSet, HashMap, HashSet};

use super::simplify::{add, apply, mul, pow};
use super::{Expr, Kind, Symbol};

/// Rebuilds a compound node from new children through the smart constructors.
pub(crate) fn rebuild(e: &Expr, children: Vec<Expr>) -> Expr {
    match e.kind() {
        Kind::Add(_) => add(children),
        Kind::Mul(_) => mul(children),
        Kind::Pow(_, q) => pow(children.into_iter().next().unwrap(), q.clone()),
        Kind::Fun(f, _) => apply(*f, children.into_iter().next().unwrap()),
        _ => e.clone(),
    }
}

pub(crate) fn children(e: &Expr) -> Vec<Expr> {
    match e.kind() {
        Kind::Add(c) | Kind::Mul(c) => c.clone(),
        Kind::Pow(b, _) => vec![b.clone()],
        Kind::Fun(_, a) => vec![a.clone()],
        _ => vec![],
    }
}

/// Simultaneous substitution of symbols by expressions.
pub fn substitute(e: &Expr, map: &HashMap<Symbol, Expr>) -> Expr {
    if map.is_empty() {
        return e.clone();
    }
    let mut memo = HashMap::new();
    go(e, map, &mut memo)
}

/// Substitutes a single symbol.
pub fn substitute_symbol(e: &Expr, s: &Symbol, v: &Expr) -> Expr {
    let mut map = HashMap::new();
    map.insert(s.clone(), v.clone());
    substitute(e, &map)
}

fn go(e: &Expr, map: &HashMap<Symbol, Expr>, memo: &mut HashMap<*const (), Expr>) -> Expr {
    if !map.keys().any(|s| e.may_contain(s)) {
        return e.clone();
    }
    if let Some(v) = memo.get(&e.ptr()) {
        return v.clone();
    }
    let r = match e.kind() {
        Kind::Sym(s) => map.get(s).cloned().unwrap_or_else(|| e.clone()),
        Kind::Num(_) => e.clone(),
        _ => {
            let kids = children(e).iter().map(|c| go(c, map, memo)).collect();
            rebuild(e, kids)
        }
    };
    memo.insert(e.ptr(), r.clone());
    r
}

/// All symbols occurring in the expression.
pub fn free_symbols(e: &Expr) -> BTreeSet<Symbol> {
    let mut out = BTreeSet::new();
    let mut seen = HashSet::new();
    let mut stack = vec![e.clone()];
    while let Some(n) = stack.pop() {
        if !seen.insert(n.ptr()) {
            continue;
        }
        match n.kind() {
            Kind::Sym(s) => {
                out.insert(s.clone());
            }
            _ => stack.extend(children(&n)),
        }
    }
    out
}
