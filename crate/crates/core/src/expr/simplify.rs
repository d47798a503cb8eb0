//! Normalizing smart constructors.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Expr, Func, Kind, Rational};

/// Normalized sum.
pub fn add<I: IntoIterator<Item = Expr>>(terms: I) -> Expr {
    let mut constant = Rational::zero();
    let mut collected: BTreeMap<Vec<Expr>, Rational> = BTreeMap::new();
    let mut absorb = |t: &Expr, constant: &mut Rational| match t.kind() {
        Kind::Num(r) => *constant += r,
        _ => {
            let (c, key) = t.split_coefficient();
            *collected.entry(key).or_insert_with(Rational::zero) += c;
        }
    };
    for t in terms {
        match t.kind() {
            Kind::Add(ts) => ts.iter().for_each(|s| absorb(s, &mut constant)),
            _ => absorb(&t, &mut constant),
        }
    }
    let mut out: Vec<Expr> = Vec::with_capacity(collected.len() + 1);
    for (key, c) in collected {
        if c.is_zero() {
            continue;
        }
        out.push(term_from(c, key));
    }
    if !constant.is_zero() {
        out.push(Expr::rational(constant));
    }
    match out.len() {
        0 => Expr::zero(),
        1 => out.pop().unwrap(),
        _ => Expr::raw(Kind::Add(out)),
    }
}

fn term_from(c: Rational, mut key: Vec<Expr>) -> Expr {
    if c.is_one() {
        if key.len() == 1 {
            return key.pop().unwrap();
        }
        return Expr::raw(Kind::Mul(key));
    }
    if key.len() == 1 && matches!(key[0].kind(), Kind::Add(_)) {
        return mul([Expr::rational(c), key.pop().unwrap()]);
    }
    let mut fs = Vec::with_capacity(key.len() + 1);
    fs.push(Expr::rational(c));
    fs.extend(key);
    Expr::raw(Kind::Mul(fs))
}

/// Normalized product.
pub fn mul<I: IntoIterator<Item = Expr>>(factors: I) -> Expr {
    let mut coef = Rational::one();
    let mut bases: BTreeMap<Expr, Rational> = BTreeMap::new();
    let mut exps: Vec<Expr> = Vec::new();
    let mut stack: Vec<Expr> = factors.into_iter().collect();
    while let Some(f) = stack.pop() {
        match f.kind() {
            Kind::Num(r) => {
                if r.is_zero() {
                    return Expr::zero();
                }
                coef *= r;
            }
            Kind::Mul(fs) => stack.extend(fs.iter().cloned()),
            Kind::Pow(b, e) => *bases.entry(b.clone()).or_insert_with(Rational::zero) += e,
            Kind::Fun(Func::Exp, _) => exps.push(f.clone()),
            _ => *bases.entry(f.clone()).or_insert_with(Rational::zero) += Rational::one(),
        }
    }
    if exps.len() >= 2 {
        let args = exps.iter().map(|e| match e.kind() {
            Kind::Fun(_, a) => a.clone(),
            _ => unreachable!(),
        });
        let merged = apply(Func::Exp, add(args));
        let mut rest: Vec<Expr> = bases.into_iter().map(|(b, e)| pow(b, e)).collect();
        rest.push(Expr::rational(coef));
        rest.push(merged);
        return mul(rest);
    }
    let mut out: Vec<Expr> = Vec::with_capacity(bases.len() + 1);
    let mut reshaped = false;
    for (b, e) in bases {
        if e.is_zero() {
            continue;
        }
        let numeric_base = matches!(b.kind(), Kind::Num(_));
        let p = pow(b.clone(), e.clone());
        match p.kind() {
            Kind::Num(v) => coef *= v,
            Kind::Mul(fs) => {
                reshaped |= !numeric_base;
                for g in fs {
                    match g.kind() {
                        Kind::Num(v) => coef *= v,
                        _ => out.push(g.clone()),
                    }
                }
            }
            Kind::Pow(pb, pe) if *pb == b && *pe == e => out.push(p),
            _ if e.is_one() && p == b => out.push(p),
            _ => {
                reshaped = true;
                out.push(p);
            }
        }
    }
    out.extend(exps);
    if coef.is_zero() {
        return Expr::zero();
    }
    if reshaped {
        out.push(Expr::rational(coef));
        return mul(out);
    }
    out.sort();
    match out.len() {
        0 => Expr::rational(coef),
        1 if coef.is_one() => out.pop().unwrap(),
        1 if matches!(out[0].kind(), Kind::Add(_)) => {
            let Kind::Add(ts) = out[0].kind() else { unreachable!() };
            add(ts.iter().map(|t| mul([Expr::rational(coef.clone()), t.clone()])))
        }
        _ => {
            if !coef.is_one() {
                out.insert(0, Expr::rational(coef));
            }
            Expr::raw(Kind::Mul(out))
        }
    }
}

/// Normalized power with rational exponent.
pub fn pow(base: Expr, q: Rational) -> Expr {
    if q.is_zero() {
        return Expr::one();
    }
    if q.is_one() {
        return base;
    }
    match base.kind() {
        Kind::Num(n) => num_pow(n, &q),
        Kind::Pow(b, p) => {
            // (b^p)^q = b^(pq) unless p is an integer and q is not, where |b|
            // would be needed.
            if q.is_integer() || !p.is_integer() {
                pow(b.clone(), p * &q)
            } else {
                Expr::raw(Kind::Pow(base.clone(), q))
            }
        }
        Kind::Mul(fs) => {
            if q.is_integer() {
                return mul(fs.iter().map(|f| pow(f.clone(), q.clone())));
            }
            match fs[0].kind() {
                Kind::Num(c) if c.is_positive() => {
                    let rest = if fs.len() == 2 { fs[1].clone() } else { Expr::raw(Kind::Mul(fs[1..].to_vec())) };
                    mul([num_pow(c, &q), pow(rest, q)])
                }
                _ => Expr::raw(Kind::Pow(base.clone(), q)),
            }
        }
        Kind::Fun(Func::Exp, a) => apply(Func::Exp, mul([Expr::rational(q), a.clone()])),
        _ => Expr::raw(Kind::Pow(base.clone(), q)),
    }
}

fn rpow_int(r: &Rational, n: &BigInt) -> Option<Rational> {
    let k = n.abs().to_u32()?;
    let v = Rational::new(r.numer().pow(k), r.denom().pow(k));
    if n.is_negative() {
        if v.is_zero() {
            None
        } else {
            Some(v.recip())
        }
    } else {
        Some(v)
    }
}

fn exact_root(r: &Rational, d: u32) -> Option<Rational> {
    let n = r.numer().nth_root(d);
    let m = r.denom().nth_root(d);
    if n.pow(d) == *r.numer() && m.pow(d) == *r.denom() {
        Some(Rational::new(n, m))
    } else {
        None
    }
}

fn num_pow(n: &Rational, q: &Rational) -> Expr {
    let raw = || Expr::raw(Kind::Pow(Expr::rational(n.clone()), q.clone()));
    if n.is_zero() {
        return if q.is_positive() { Expr::zero() } else { raw() };
    }
    if q.is_integer() {
        return match rpow_int(n, q.numer()) {
            Some(v) => Expr::rational(v),
            None => raw(),
        };
    }
    let Some(d) = q.denom().to_u32() else { return raw() };
    if n.is_negative() {
        if d % 2 == 0 {
            return raw();
        }
        let sign = if q.numer().is_odd() { -1 } else { 1 };
        return mul([Expr::num(sign), num_pow(&-n, q)]);
    }
    let k = q.floor();
    let frac = q - &k;
    let Some(whole) = rpow_int(n, k.numer()) else { return raw() };
    if let Some(root) = exact_root(n, d) {
        if let Some(v) = rpow_int(&root, frac.numer()) {
            return Expr::rational(whole * v);
        }
    }
    let p = Expr::raw(Kind::Pow(Expr::rational(n.clone()), frac));
    if whole.is_one() {
        p
    } else {
        Expr::raw(Kind::Mul(vec![Expr::rational(whole), p]))
    }
}

fn negate(e: &Expr) -> Expr {
    mul([Expr::num(-1), e.clone()])
}

fn ln_term(t: &Expr) -> Option<(Rational, Expr)> {
    match t.kind() {
        Kind::Fun(Func::Ln, z) => Some((Rational::one(), z.clone())),
        Kind::Mul(fs) if fs.len() == 2 => match (fs[0].kind(), fs[1].kind()) {
            (Kind::Num(c), Kind::Fun(Func::Ln, z)) => Some((c.clone(), z.clone())),
            _ => None,
        },
        _ => None,
    }
}

/// Normalized function application.
pub fn apply(func: Func, arg: Expr) -> Expr {
    let raw = |a: Expr| Expr::raw(Kind::Fun(func, a));
    match func {
        Func::Exp => {
            if arg.is_zero_literal() {
                return Expr::one();
            }
            if let Some((c, z)) = ln_term(&arg) {
                return pow(z, c);
            }
            if let Kind::Add(ts) = arg.kind() {
                let (logs, rest): (Vec<_>, Vec<_>) = ts.iter().partition(|t| ln_term(t).is_some());
                if !logs.is_empty() {
                    let mut fs: Vec<Expr> = logs
                        .iter()
                        .map(|t| {
                            let (c, z) = ln_term(t).unwrap();
                            pow(z, c)
                        })
                        .collect();
                    fs.push(apply(Func::Exp, add(rest.into_iter().cloned())));
                    return mul(fs);
                }
            }
            raw(arg)
        }
        Func::Ln => {
            if arg.is_one_literal() {
                return Expr::zero();
            }
            match arg.kind() {
                Kind::Fun(Func::Exp, z) => z.clone(),
                Kind::Pow(z, q) if !q.is_integer() || q.numer().is_odd() => {
                    mul([Expr::rational(q.clone()), apply(Func::Ln, z.clone())])
                }
                Kind::Mul(fs) => match fs[0].kind() {
                    Kind::Num(c) if c.is_positive() => {
                        let rest = if fs.len() == 2 { fs[1].clone() } else { Expr::raw(Kind::Mul(fs[1..].to_vec())) };
                        add([apply(Func::Ln, fs[0].clone()), apply(Func::Ln, rest)])
                    }
                    _ => raw(arg),
                },
                _ => raw(arg),
            }
        }
        Func::Sin | Func::Sinh | Func::Tanh | Func::Coth => {
            if arg.is_zero_literal() && func != Func::Coth {
                return Expr::zero();
            }
            if arg.has_negative_sign() {
                return negate(&apply(func, negate(&arg)));
            }
            raw(arg)
        }
        Func::Cos | Func::Cosh => {
            if arg.is_zero_literal() {
                return Expr::one();
            }
            if arg.has_negative_sign() {
                return apply(func, negate(&arg));
            }
            raw(arg)
        }
    }
}
