//! Exact symbolic expressions.
//!
//! An [`Expr`] is an immutable, reference-counted DAG node kept in a normal
//! form by its smart constructors: sums and products are flattened, numeric
//! constants are folded, like terms and like powers are collected and
//! `exp(a)·exp(b)` is merged into `exp(a+b)`. Structural equality of normal
//! forms is therefore a cheap, sound (but incomplete) equality test; the
//! complete test is [`zero::is_zero`].

mod diff;
mod eval;
mod ops;
mod parse;
pub mod poly;
mod print;
mod simplify;
mod subst;
pub mod zero;

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use diff::differentiate;
pub use eval::{big_to_f64, evaluate, DomainError, EvalError, F64Tape, HighPrecision, Tape};
pub use parse::{parse, ParseError, ParseErrorKind};
pub use simplify::{add, apply, mul, pow};
pub use subst::{free_symbols, substitute, substitute_symbol};
pub use zero::{is_zero, DomainHints, Method, Verdict, ZeroCertificate, ZeroTester};

/// Exact rational number used for all numeric constants and exponents.
pub type Rational = BigRational;

/// Builds an exact rational `p/q`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Interned-by-value variable name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    fn mask_bit(&self) -> u64 {
        1u64 << (hash_of(&*self.0) % 64)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

/// Elementary functions known to the engine.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Tanh,
    Coth,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Coth => "coth",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "ln" | "log" => Func::Ln,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "tanh" => Func::Tanh,
            "coth" => Func::Coth,
            _ => return None,
        })
    }
}

/// Node payload. Only the smart constructors in this module build
/// `Add`, `Mul`, `Pow` and `Fun` nodes, so every reachable node is normalized.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Kind {
    Num(Rational),
    Sym(Symbol),
    /// At least two terms; no nested sums; at most one numeric term (last).
    Add(Vec<Expr>),
    /// At least two factors; no nested products; numeric coefficient first.
    Mul(Vec<Expr>),
    /// Exponent is never 0 or 1.
    Pow(Expr, Rational),
    Fun(Func, Expr),
}

struct Node {
    kind: Kind,
    hash: u64,
    mask: u64,
}

/// A normalized symbolic expression. Cloning is O(1).
#[derive(Clone)]
pub struct Expr(Arc<Node>);

fn hash_of<T: Hash + ?Sized>(v: &T) -> u64 {
    let mut h = DefaultHasher::new();
    v.hash(&mut h);
    h.finish()
}

fn mix(seed: u64, v: u64) -> u64 {
    (seed ^ v.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(seed << 6).wrapping_add(seed >> 2))
        .rotate_left(17)
        .wrapping_mul(0xff51_afd7_ed55_8ccd)
}

impl Expr {
    pub(crate) fn raw(kind: Kind) -> Expr {
        let (hash, mask) = match &kind {
            Kind::Num(r) => (mix(1, hash_of(r)), 0),
            Kind::Sym(s) => (mix(2, hash_of(&*s.0)), s.mask_bit()),
            Kind::Add(ts) => ts.iter().fold((3, 0), |(h, m), t| (mix(h, t.0.hash), m | t.0.mask)),
            Kind::Mul(fs) => fs.iter().fold((4, 0), |(h, m), t| (mix(h, t.0.hash), m | t.0.mask)),
            Kind::Pow(b, e) => (mix(mix(5, b.0.hash), hash_of(e)), b.0.mask),
            Kind::Fun(f, a) => (mix(mix(6, *f as u64), a.0.hash), a.0.mask),
        };
        Expr(Arc::new(Node { kind, hash, mask }))
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    pub fn num(n: i64) -> Expr {
        Expr::raw(Kind::Num(Rational::from_integer(BigInt::from(n))))
    }

    pub fn rational(r: Rational) -> Expr {
        Expr::raw(Kind::Num(r))
    }

    pub fn frac(p: i64, q: i64) -> Expr {
        Expr::rational(rat(p, q))
    }

    pub fn zero() -> Expr {
        Expr::num(0)
    }

    pub fn one() -> Expr {
        Expr::num(1)
    }

    pub fn sym(name: &str) -> Expr {
        Expr::raw(Kind::Sym(Symbol::new(name)))
    }

    pub fn symbol(s: &Symbol) -> Expr {
        Expr::raw(Kind::Sym(s.clone()))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self.kind() {
            Kind::Num(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_symbol(&self) -> Option<&Symbol> {
        match self.kind() {
            Kind::Sym(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_number(&self) -> bool {
        matches!(self.kind(), Kind::Num(_))
    }

    /// Syntactic zero (the normal form of anything the constructors can
    /// cancel outright).
    pub fn is_zero_literal(&self) -> bool {
        matches!(self.kind(), Kind::Num(r) if r.is_zero())
    }

    pub fn is_one_literal(&self) -> bool {
        matches!(self.kind(), Kind::Num(r) if r.is_one())
    }

    /// Whether the symbol can occur in this expression. False positives are
    /// possible, false negatives are not.
    pub fn may_contain(&self, s: &Symbol) -> bool {
        self.0.mask & s.mask_bit() != 0
    }

    pub(crate) fn ptr(&self) -> *const () {
        Arc::as_ptr(&self.0) as *const ()
    }

    pub fn pow(&self, q: Rational) -> Expr {
        pow(self.clone(), q)
    }

    pub fn powi(&self, n: i64) -> Expr {
        pow(self.clone(), Rational::from_integer(BigInt::from(n)))
    }

    pub fn recip(&self) -> Expr {
        self.powi(-1)
    }

    pub fn sqrt(&self) -> Expr {
        pow(self.clone(), rat(1, 2))
    }

    pub fn exp(&self) -> Expr {
        apply(Func::Exp, self.clone())
    }

    pub fn ln(&self) -> Expr {
        apply(Func::Ln, self.clone())
    }

    pub fn sin(&self) -> Expr {
        apply(Func::Sin, self.clone())
    }

    pub fn cos(&self) -> Expr {
        apply(Func::Cos, self.clone())
    }

    pub fn sinh(&self) -> Expr {
        apply(Func::Sinh, self.clone())
    }

    pub fn cosh(&self) -> Expr {
        apply(Func::Cosh, self.clone())
    }

    pub fn tanh(&self) -> Expr {
        apply(Func::Tanh, self.clone())
    }

    pub fn coth(&self) -> Expr {
        apply(Func::Coth, self.clone())
    }

    pub fn tan(&self) -> Expr {
        self.sin() * self.cos().recip()
    }

    /// Number of distinct DAG nodes.
    pub fn node_count(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(e) = stack.pop() {
            if !seen.insert(e.ptr()) {
                continue;
            }
            match e.kind() {
                Kind::Add(c) | Kind::Mul(c) => stack.extend(c.iter().cloned()),
                Kind::Pow(b, _) => stack.push(b.clone()),
                Kind::Fun(_, a) => stack.push(a.clone()),
                _ => {}
            }
        }
        seen.len()
    }

    fn rank(&self) -> u8 {
        match self.kind() {
            Kind::Num(_) => 0,
            Kind::Sym(_) => 1,
            Kind::Fun(..) => 2,
            Kind::Pow(..) => 3,
            Kind::Mul(_) => 4,
            Kind::Add(_) => 5,
        }
    }

    /// Splits `c·rest` into its numeric coefficient and remaining factors.
    pub(crate) fn split_coefficient(&self) -> (Rational, Vec<Expr>) {
        match self.kind() {
            Kind::Num(r) => (r.clone(), vec![]),
            Kind::Mul(fs) => match fs[0].kind() {
                Kind::Num(r) => (r.clone(), fs[1..].to_vec()),
                _ => (Rational::one(), fs.clone()),
            },
            _ => (Rational::one(), vec![self.clone()]),
        }
    }

    /// True when the canonical sign of the expression is negative: a negative
    /// number, a product with negative coefficient, or a sum whose first term
    /// is negative.
    pub(crate) fn has_negative_sign(&self) -> bool {
        match self.kind() {
            Kind::Num(r) => r.is_negative(),
            Kind::Mul(fs) => matches!(fs[0].kind(), Kind::Num(r) if r.is_negative()),
            Kind::Add(ts) => ts[0].has_negative_sign(),
            _ => false,
        }
    }
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && self.0.kind == other.0.kind)
    }
}

impl Eq for Expr {}

impl Hash for Expr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl Ord for Expr {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        let r = self.rank().cmp(&other.rank());
        if r != Ordering::Equal {
            return r;
        }
        match (self.kind(), other.kind()) {
            (Kind::Num(a), Kind::Num(b)) => a.cmp(b),
            (Kind::Sym(a), Kind::Sym(b)) => a.cmp(b),
            (Kind::Fun(f, a), Kind::Fun(g, b)) => f.cmp(g).then_with(|| a.cmp(b)),
            (Kind::Pow(a, p), Kind::Pow(b, q)) => a.cmp(b).then_with(|| p.cmp(q)),
            (Kind::Add(a), Kind::Add(b)) | (Kind::Mul(a), Kind::Mul(b)) => a.cmp(b),
            _ => unreachable!("equal ranks imply equal kinds"),
        }
    }
}

impl PartialOrd for Expr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::num(n)
    }
}

impl From<Rational> for Expr {
    fn from(r: Rational) -> Self {
        Expr::rational(r)
    }
}

impl From<&Symbol> for Expr {
    fn from(s: &Symbol) -> Self {
        Expr::symbol(s)
    }
}
