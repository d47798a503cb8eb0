use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{Expr, Kind, Rational};

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl serde::Serialize for Expr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&render(self))
    }
}

fn render(e: &Expr) -> String {
    match e.kind() {
        Kind::Num(r) => r.to_string(),
        Kind::Sym(s) => s.name().to_string(),
        Kind::Add(ts) => {
            let mut out = render(&ts[0]);
            for t in &ts[1..] {
                if t.has_negative_sign() {
                    out.push_str(" - ");
                    out.push_str(&render(&-t));
                } else {
                    out.push_str(" + ");
                    out.push_str(&render(t));
                }
            }
            out
        }
        Kind::Mul(fs) => render_product(fs),
        Kind::Pow(b, q) => {
            if shows_as_quotient(b, q) {
                format!("1/{}", render_power(b, &-q))
            } else {
                render_power(b, q)
            }
        }
        Kind::Fun(func, a) => format!("{}({})", func.name(), render(a)),
    }
}

/// Negative powers print as quotients except on numeric bases, where the
/// parser would fold `1/0^q` differently from `0^(-q)`.
fn shows_as_quotient(b: &Expr, q: &Rational) -> bool {
    q.is_negative() && !b.is_number()
}

fn render_power(b: &Expr, q: &Rational) -> String {
    let base = match b.kind() {
        Kind::Sym(_) | Kind::Fun(..) => render(b),
        Kind::Num(r) if r.is_integer() && !r.is_negative() => render(b),
        _ => format!("({})", render(b)),
    };
    if q.is_one() {
        return base;
    }
    if q.is_integer() && !q.is_negative() {
        format!("{base}^{q}")
    } else {
        format!("{base}^({q})")
    }
}

fn factor_string(e: &Expr) -> String {
    match e.kind() {
        Kind::Add(_) => format!("({})", render(e)),
        Kind::Pow(b, q) if shows_as_quotient(b, q) => format!("1/{}", render_power(b, &-q)),
        _ => render(e),
    }
}

/// `s` is one parenthesized group such as `(x + 1)`.
fn single_group(s: &str) -> bool {
    if !s.starts_with('(') {
        return false;
    }
    let mut depth = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return i == s.len() - 1;
                }
            }
            _ => {}
        }
    }
    false
}

fn render_product(fs: &[Expr]) -> String {
    let (coef, rest) = match fs[0].kind() {
        Kind::Num(r) => (r.clone(), &fs[1..]),
        _ => (Rational::one(), fs),
    };
    let mut num: Vec<String> = Vec::new();
    let mut den: Vec<String> = Vec::new();
    let numer = coef.numer().abs();
    if numer != BigInt::one() {
        num.push(numer.to_string());
    }
    for f in rest {
        match f.kind() {
            Kind::Pow(b, q) if shows_as_quotient(b, q) => {
                let s = render_power(b, &-q);
                den.push(if matches!(b.kind(), Kind::Mul(_)) && (-q).is_one() { format!("({s})") } else { s });
            }
            _ => num.push(factor_string(f)),
        }
    }
    let sign = if coef.is_negative() { "-" } else { "" };
    let mut top = if num.is_empty() { "1".to_string() } else { num.join("*") };
    // The coefficient's denominator stays a separate divisor: `2*(x + y)`
    // would parse back as the expanded `2*x + 2*y`.
    if !coef.denom().is_one() {
        if den.is_empty() {
            den.push(coef.denom().to_string());
        } else {
            top = format!("{top}/{}", coef.denom());
        }
    }
    match den.len() {
        0 => format!("{sign}{top}"),
        1 if !den[0].contains(['*', '/', ' ']) || single_group(&den[0]) => format!("{sign}{top}/{}", den[0]),
        _ => format!("{sign}{top}/({})", den.join("*")),
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::parse;

    fn roundtrip(s: &str) {
        let e = parse(s).unwrap();
        let again = parse(&e.to_string()).unwrap();
        assert_eq!(e, again, "{s} printed as {e}");
    }

    #[test]
    fn prints_parseable_text() {
        for s in [
            "x^2 - 3*x/(4*y)",
            "-x",
            "(x + 1)^(1/2)*exp(-2*x)",
            "1/(x*y)",
            "sin(x)/cos(x)",
            "2^(1/2)*x",
            "-(x + y)^(-3)",
            "coth(x/2)*tanh(y)",
            "x^(-1/2) + 3/4",
        ] {
            roundtrip(s);
        }
    }
}
