use num_bigint::BigInt;
use thiserror::Error;

use super::simplify::{add, apply, mul, pow};
use super::{rat, Expr, Func, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedCharacter(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    UnknownFunction(String),
}

/// Syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind:?} at offset {offset}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() || (c == '.' && bytes.get(i + 1).is_some_and(|b| b.is_ascii_digit())) {
            let mut end = i;
            while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'.') {
                end += 1;
            }
            if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
                let mut k = end + 1;
                if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                    k += 1;
                }
                if k < bytes.len() && bytes[k].is_ascii_digit() {
                    while k < bytes.len() && bytes[k].is_ascii_digit() {
                        k += 1;
                    }
                    end = k;
                }
            }
            let text = &src[i..end];
            let value = parse_decimal(text).ok_or(ParseError {
                kind: ParseErrorKind::UnexpectedToken(text.to_string()),
                offset: i,
            })?;
            out.push((Tok::Num(value), i));
            while chars.peek().is_some_and(|&(j, _)| j < end) {
                chars.next();
            }
        } else if c.is_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_alphanumeric() || d == '_' {
                    match d {
                        'α' => name.push('a'),
                        'β' => name.push('b'),
                        _ => name.push(d),
                    }
                    chars.next();
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(name), i));
        } else {
            chars.next();
            let t = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '*' if src[i + 1..].starts_with('*') => {
                    chars.next();
                    Tok::Op('^')
                }
                '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
                _ => {
                    return Err(ParseError { kind: ParseErrorKind::UnexpectedCharacter(c), offset: i });
                }
            };
            out.push((t, i));
        }
    }
    Ok(out)
}

/// Exact value of a decimal literal such as `12`, `0.5` or `1e-3`.
pub(crate) fn parse_decimal(text: &str) -> Option<Rational> {
    let (mant, exp) = match text.find(['e', 'E']) {
        Some(k) => (&text[..k], text[k + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (int, frac) = match mant.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mant, ""),
    };
    if int.is_empty() && frac.is_empty() || frac.contains('.') {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        Rational::from_integer(digits * ten.pow(scale as u32))
    } else {
        Rational::new(digits, ten.pow((-scale) as u32))
    })
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn unexpected(&self) -> ParseError {
        match self.toks.get(self.pos) {
            None => ParseError { kind: ParseErrorKind::UnexpectedEnd, offset: self.end },
            Some((t, o)) => ParseError { kind: ParseErrorKind::UnexpectedToken(format!("{t:?}")), offset: *o },
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Some(Tok::Op('+')) => {
                    self.pos += 1;
                    terms.push(self.term()?);
                }
                Some(Tok::Op('-')) => {
                    self.pos += 1;
                    terms.push(-self.term()?);
                }
                _ => return Ok(add(terms)),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.unary()?];
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    factors.push(self.unary()?);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    factors.push(self.unary()?.recip());
                }
                _ => return Ok(mul(factors)),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Op('^')) {
            self.pos += 1;
            let exponent = self.unary()?;
            return Ok(match exponent.as_rational() {
                Some(q) => pow(base, q.clone()),
                None => apply(Func::Exp, exponent * base.ln()),
            });
        }
        Ok(base)
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        if self.peek() == Some(&Tok::RParen) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(r)) => {
                self.pos += 1;
                Ok(Expr::rational(r))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.peek() != Some(&Tok::LParen) {
                    return Ok(Expr::sym(&name));
                }
                self.pos += 1;
                let arg = self.expr()?;
                self.expect_rparen()?;
                match name.as_str() {
                    "tan" => Ok(arg.tan()),
                    "sqrt" => Ok(pow(arg, rat(1, 2))),
                    _ => match Func::from_name(&name) {
                        Some(f) => Ok(apply(f, arg)),
                        None => Err(ParseError { kind: ParseErrorKind::UnknownFunction(name), offset: at }),
                    },
                }
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses infix text into a normalized expression.
///
/// Supports `+ - * / ^` (also `**`), parentheses, decimal and rational
/// literals (converted exactly), `exp ln sin cos tan sinh cosh tanh coth sqrt`
/// and identifiers; `α`/`β` inside identifiers are read as `a`/`b`.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len() };
    if p.toks.is_empty() {
        return Err(ParseError { kind: ParseErrorKind::UnexpectedEnd, offset: 0 });
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_decimal("0.5"), Some(rat(1, 2)));
        assert_eq!(parse_decimal("1e-3"), Some(rat(1, 1000)));
        assert_eq!(parse_decimal("2.50E1"), Some(rat(25, 1)));
        assert!(parse_decimal("1.2.3").is_none());
    }

    #[test]
    fn unclosed_call_reports_end_offset() {
        let err = parse("sin(x").unwrap_err();
        assert_eq!(err.offset, 5);
        assert_eq!(err.kind, ParseErrorKind::UnexpectedEnd);
    }

    #[test]
    fn unknown_function_is_rejected() {
        let err = parse("2 + foo(x)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownFunction("foo".into()));
        assert_eq!(err.offset, 4);
    }

    #[test]
    fn greek_aliases() {
        assert_eq!(parse("α3*β5").unwrap(), parse("a3*b5").unwrap());
    }
}
