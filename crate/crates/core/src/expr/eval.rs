//! Numeric evaluation through a linearized instruction tape.

use std::collections::HashMap;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use super::{Expr, Func, Kind, Rational, Symbol};

/// Why a subexpression could not be evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DomainKind {
    LogOfNonPositive,
    DivisionByZero,
    EvenRootOfNegative,
    NonFinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind:?} in `{subexpr}`")]
pub struct DomainError {
    pub kind: DomainKind,
    pub subexpr: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound symbol `{0}`")]
    Unbound(String),
    #[error("domain error: {0}")]
    Domain(#[from] DomainError),
}

#[derive(Clone, Debug)]
enum Instr {
    Const(Rational),
    Var(usize),
    Add(Vec<usize>),
    Mul(Vec<usize>),
    Pow(usize, Rational),
    Fun(Func, usize),
}

/// A DAG flattened into evaluation order. Shared subexpressions are
/// evaluated once.
#[derive(Clone, Debug)]
pub struct Tape {
    instrs: Vec<Instr>,
    nodes: Vec<Expr>,
    vars: Vec<Symbol>,
    roots: Vec<usize>,
}

impl Tape {
    pub fn new(e: &Expr) -> Tape {
        Tape::with_roots(std::slice::from_ref(e))
    }

    /// One tape for several expressions that may share subexpressions.
    pub fn with_roots(es: &[Expr]) -> Tape {
        let mut t = Tape { instrs: vec![], nodes: vec![], vars: vec![], roots: vec![] };
        let mut slots: HashMap<*const (), usize> = HashMap::new();
        let mut var_index: HashMap<Symbol, usize> = HashMap::new();
        for e in es {
            let r = t.compile(e, &mut slots, &mut var_index);
            t.roots.push(r);
        }
        t
    }

    fn compile(
        &mut self,
        root: &Expr,
        slots: &mut HashMap<*const (), usize>,
        var_index: &mut HashMap<Symbol, usize>,
    ) -> usize {
        // Iterative post-order so deep expressions cannot overflow the stack.
        let mut stack: Vec<(Expr, bool)> = vec![(root.clone(), false)];
        while let Some((e, expanded)) = stack.pop() {
            if slots.contains_key(&e.ptr()) {
                continue;
            }
            let kids = super::subst::children(&e);
            if !expanded && !kids.is_empty() {
                stack.push((e.clone(), true));
                for k in kids.into_iter().rev() {
                    stack.push((k, false));
                }
                continue;
            }
            let slot = |x: &Expr| slots[&x.ptr()];
            let ins = match e.kind() {
                Kind::Num(r) => Instr::Const(r.clone()),
                Kind::Sym(s) => {
                    let n = var_index.len();
                    let idx = *var_index.entry(s.clone()).or_insert_with(|| {
                        self.vars.push(s.clone());
                        n
                    });
                    Instr::Var(idx)
                }
                Kind::Add(ts) => Instr::Add(ts.iter().map(slot).collect()),
                Kind::Mul(fs) => Instr::Mul(fs.iter().map(slot).collect()),
                Kind::Pow(b, q) => Instr::Pow(slot(b), q.clone()),
                Kind::Fun(f, a) => Instr::Fun(*f, slot(a)),
            };
            slots.insert(e.ptr(), self.instrs.len());
            self.instrs.push(ins);
            self.nodes.push(e);
        }
        slots[&root.ptr()]
    }

    /// Symbols in first-occurrence order; inputs are passed in this order.
    pub fn variables(&self) -> &[Symbol] {
        &self.vars
    }

    fn inputs_from<V: Clone>(&self, lookup: impl Fn(&Symbol) -> Option<V>) -> Result<Vec<V>, EvalError> {
        self.vars
            .iter()
            .map(|s| lookup(s).ok_or_else(|| EvalError::Unbound(s.name().to_string())))
            .collect()
    }

    fn run<A: Arith>(&self, a: &mut A, inputs: &[A::V]) -> Result<Vec<A::V>, EvalError> {
        let mut vals: Vec<A::V> = Vec::with_capacity(self.instrs.len());
        for (i, ins) in self.instrs.iter().enumerate() {
            let fail = |kind| EvalError::Domain(DomainError { kind, subexpr: self.nodes[i].to_string() });
            let v = match ins {
                Instr::Const(r) => a.constant(r),
                Instr::Var(k) => inputs[*k].clone(),
                Instr::Add(xs) => {
                    let mut acc = vals[xs[0]].clone();
                    for x in &xs[1..] {
                        acc = a.add(&acc, &vals[*x]);
                    }
                    acc
                }
                Instr::Mul(xs) => {
                    let mut acc = vals[xs[0]].clone();
                    for x in &xs[1..] {
                        acc = a.mul(&acc, &vals[*x]);
                    }
                    acc
                }
                Instr::Pow(b, q) => a.pow(&vals[*b], q).map_err(fail)?,
                Instr::Fun(f, x) => a.func(*f, &vals[*x]).map_err(fail)?,
            };
            if !a.is_finite(&v) {
                return Err(fail(DomainKind::NonFinite));
            }
            a.observe(&v);
            vals.push(v);
        }
        Ok(self.roots.iter().map(|r| vals[*r].clone()).collect())
    }

    /// Double-precision evaluation of every root.
    pub fn eval_f64(&self, bindings: &HashMap<Symbol, f64>) -> Result<Vec<f64>, EvalError> {
        let inputs = self.inputs_from(|s| bindings.get(s).copied())?;
        self.run(&mut F64Arith, &inputs)
    }
}

trait Arith {
    type V: Clone;
    fn constant(&mut self, r: &Rational) -> Self::V;
    fn add(&mut self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&mut self, a: &Self::V, b: &Self::V) -> Self::V;
    fn pow(&mut self, a: &Self::V, q: &Rational) -> Result<Self::V, DomainKind>;
    fn func(&mut self, f: Func, a: &Self::V) -> Result<Self::V, DomainKind>;
    fn is_finite(&self, v: &Self::V) -> bool;
    fn observe(&mut self, _v: &Self::V) {}
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

struct F64Arith;

impl Arith for F64Arith {
    type V = f64;

    fn constant(&mut self, r: &Rational) -> f64 {
        rational_to_f64(r)
    }

    fn add(&mut self, a: &f64, b: &f64) -> f64 {
        a + b
    }

    fn mul(&mut self, a: &f64, b: &f64) -> f64 {
        a * b
    }

    fn pow(&mut self, a: &f64, q: &Rational) -> Result<f64, DomainKind> {
        f64_pow(*a, q)
    }

    fn func(&mut self, f: Func, a: &f64) -> Result<f64, DomainKind> {
        f64_func(f, *a)
    }

    fn is_finite(&self, v: &f64) -> bool {
        v.is_finite()
    }
}

fn f64_pow(a: f64, q: &Rational) -> Result<f64, DomainKind> {
    if a == 0.0 {
        return if q.is_positive() { Ok(0.0) } else { Err(DomainKind::DivisionByZero) };
    }
    if q.is_integer() {
        return match q.numer().to_i32() {
            Some(n) => Ok(a.powi(n)),
            None => Ok(a.powf(rational_to_f64(q))),
        };
    }
    let qf = rational_to_f64(q);
    if a < 0.0 {
        if q.denom().is_even() {
            return Err(DomainKind::EvenRootOfNegative);
        }
        let m = (-a).powf(qf);
        return Ok(if q.numer().is_odd() { -m } else { m });
    }
    Ok(a.powf(qf))
}

fn f64_func(f: Func, a: f64) -> Result<f64, DomainKind> {
    Ok(match f {
        Func::Exp => a.exp(),
        Func::Ln => {
            if a <= 0.0 {
                return Err(DomainKind::LogOfNonPositive);
            }
            a.ln()
        }
        Func::Sin => a.sin(),
        Func::Cos => a.cos(),
        Func::Sinh => a.sinh(),
        Func::Cosh => a.cosh(),
        Func::Tanh => a.tanh(),
        Func::Coth => {
            if a == 0.0 {
                return Err(DomainKind::DivisionByZero);
            }
            1.0 / a.tanh()
        }
    })
}

/// Fast repeated double-precision evaluation with a fixed variable order.
#[derive(Clone, Debug)]
pub struct F64Tape {
    instrs: Vec<F64Instr>,
    nodes: Vec<Expr>,
    root: usize,
}

#[derive(Clone, Debug)]
enum F64Instr {
    Const(f64),
    Var(usize),
    Add(Vec<usize>),
    Mul(Vec<usize>),
    Pow(usize, Rational),
    Fun(Func, usize),
}

impl F64Tape {
    /// Compiles `e` for inputs in the order of `vars`. Symbols outside `vars`
    /// are an error.
    pub fn new(e: &Expr, vars: &[Symbol]) -> Result<F64Tape, EvalError> {
        let tape = Tape::new(e);
        let map: Vec<usize> = tape
            .vars
            .iter()
            .map(|s| vars.iter().position(|v| v == s).ok_or_else(|| EvalError::Unbound(s.name().to_string())))
            .collect::<Result<_, _>>()?;
        let instrs = tape
            .instrs
            .iter()
            .map(|i| match i {
                Instr::Const(r) => F64Instr::Const(rational_to_f64(r)),
                Instr::Var(k) => F64Instr::Var(map[*k]),
                Instr::Add(x) => F64Instr::Add(x.clone()),
                Instr::Mul(x) => F64Instr::Mul(x.clone()),
                Instr::Pow(b, q) => F64Instr::Pow(*b, q.clone()),
                Instr::Fun(f, x) => F64Instr::Fun(*f, *x),
            })
            .collect();
        Ok(F64Tape { instrs, nodes: tape.nodes, root: tape.roots[0] })
    }

    pub fn eval(&self, inputs: &[f64]) -> Result<f64, EvalError> {
        let mut scratch = Vec::with_capacity(self.instrs.len());
        self.eval_with(inputs, &mut scratch)
    }

    /// Evaluation reusing a caller-owned scratch buffer.
    pub fn eval_with(&self, inputs: &[f64], vals: &mut Vec<f64>) -> Result<f64, EvalError> {
        vals.clear();
        for (i, ins) in self.instrs.iter().enumerate() {
            let fail = |kind| EvalError::Domain(DomainError { kind, subexpr: self.nodes[i].to_string() });
            let v = match ins {
                F64Instr::Const(c) => *c,
                F64Instr::Var(k) => inputs[*k],
                F64Instr::Add(xs) => xs.iter().map(|x| vals[*x]).sum(),
                F64Instr::Mul(xs) => xs.iter().map(|x| vals[*x]).product(),
                F64Instr::Pow(b, q) => f64_pow(vals[*b], q).map_err(fail)?,
                F64Instr::Fun(f, x) => f64_func(*f, vals[*x]).map_err(fail)?,
            };
            if !v.is_finite() {
                return Err(fail(DomainKind::NonFinite));
            }
            vals.push(v);
        }
        Ok(vals[self.root])
    }
}

/// Arbitrary-precision value produced by [`evaluate`].
#[derive(Clone, Debug)]
pub struct HighPrecision {
    pub value: BigFloat,
    /// Largest absolute value of any intermediate result.
    pub max_magnitude: BigFloat,
    pub bits: usize,
}

impl HighPrecision {
    pub fn to_f64(&self) -> f64 {
        big_to_f64(&self.value)
    }
}

impl fmt::Display for HighPrecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Converts to the nearest double (up to one ulp).
pub fn big_to_f64(v: &BigFloat) -> f64 {
    if v.is_nan() {
        return f64::NAN;
    }
    if v.is_inf() {
        return if v.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    match v.as_raw_parts() {
        None => f64::NAN,
        Some((m, _, sign, e, _)) => {
            if m.iter().all(|w| *w == 0) {
                return 0.0;
            }
            let top = m[m.len() - 1] as f64;
            let next = if m.len() > 1 { m[m.len() - 2] as f64 / 18446744073709551616.0 } else { 0.0 };
            let word_bits = (std::mem::size_of_val(&m[0]) * 8) as i32;
            let mag = (top + next) * 2f64.powi(e - word_bits);
            if sign == Sign::Neg {
                -mag
            } else {
                mag
            }
        }
    }
}

/// Decimal digits to binary precision, rounded up to whole 64-bit words with
/// a guard word.
pub(crate) fn digits_to_bits(digits: u32) -> usize {
    let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize;
    bits.div_ceil(64) * 64 + 64
}

pub(crate) struct BigArith {
    pub p: usize,
    pub rm: RoundingMode,
    pub cc: Consts,
    pub max: BigFloat,
}

impl BigArith {
    pub fn new(bits: usize) -> BigArith {
        BigArith {
            p: bits,
            rm: RoundingMode::ToEven,
            cc: Consts::new().expect("constant cache"),
            max: BigFloat::from_word(0, bits),
        }
    }

    pub fn from_rational(&mut self, r: &Rational) -> BigFloat {
        let n = self.int(r.numer());
        if r.denom() == &BigInt::from(1) {
            return n;
        }
        let d = self.int(r.denom());
        n.div(&d, self.p, self.rm)
    }

    fn int(&mut self, i: &BigInt) -> BigFloat {
        match i.to_i64() {
            Some(v) => BigFloat::from_i64(v, self.p),
            None => BigFloat::parse(&i.to_string(), Radix::Dec, self.p, self.rm, &mut self.cc),
        }
    }
}

impl Arith for BigArith {
    type V = BigFloat;

    fn constant(&mut self, r: &Rational) -> BigFloat {
        self.from_rational(r)
    }

    fn add(&mut self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, self.rm)
    }

    fn mul(&mut self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, self.rm)
    }

    fn pow(&mut self, a: &BigFloat, q: &Rational) -> Result<BigFloat, DomainKind> {
        if a.is_zero() {
            return if q.is_positive() { Ok(a.clone()) } else { Err(DomainKind::DivisionByZero) };
        }
        if q.is_integer() {
            let n = q.numer().abs().to_usize().ok_or(DomainKind::NonFinite)?;
            let m = a.powi(n, self.p, self.rm);
            return Ok(if q.is_negative() { m.reciprocal(self.p, self.rm) } else { m });
        }
        let negative = a.is_negative();
        if negative && q.denom().is_even() {
            return Err(DomainKind::EvenRootOfNegative);
        }
        let qb = self.from_rational(q);
        let m = a.abs().pow(&qb, self.p, self.rm, &mut self.cc);
        Ok(if negative && q.numer().is_odd() { m.neg() } else { m })
    }

    fn func(&mut self, f: Func, a: &BigFloat) -> Result<BigFloat, DomainKind> {
        let (p, rm) = (self.p, self.rm);
        let cc = &mut self.cc;
        Ok(match f {
            Func::Exp => a.exp(p, rm, cc),
            Func::Ln => {
                if a.is_zero() || a.is_negative() {
                    return Err(DomainKind::LogOfNonPositive);
                }
                a.ln(p, rm, cc)
            }
            Func::Sin => a.sin(p, rm, cc),
            Func::Cos => a.cos(p, rm, cc),
            Func::Sinh => a.sinh(p, rm, cc),
            Func::Cosh => a.cosh(p, rm, cc),
            Func::Tanh => a.tanh(p, rm, cc),
            Func::Coth => {
                let t = a.tanh(p, rm, cc);
                if t.is_zero() {
                    return Err(DomainKind::DivisionByZero);
                }
                t.reciprocal(p, rm)
            }
        })
    }

    fn is_finite(&self, v: &BigFloat) -> bool {
        !v.is_nan() && !v.is_inf()
    }

    fn observe(&mut self, v: &BigFloat) {
        let m = v.abs();
        if m.cmp(&self.max).is_some_and(|c| c > 0) {
            self.max = m;
        }
    }
}

impl Tape {
    /// High-precision evaluation of the first root.
    pub(crate) fn eval_big(&self, arith: &mut BigArith, inputs: &[BigFloat]) -> Result<BigFloat, EvalError> {
        Ok(self.run(arith, inputs)?.swap_remove(0))
    }

    pub(crate) fn big_inputs(
        &self,
        arith: &mut BigArith,
        point: &HashMap<Symbol, Rational>,
    ) -> Result<Vec<BigFloat>, EvalError> {
        let vals = self.inputs_from(|s| point.get(s).cloned())?;
        Ok(vals.iter().map(|r| arith.from_rational(r)).collect())
    }
}

/// Evaluates `e` at an exact point with `digits` significant decimal digits.
pub fn evaluate(e: &Expr, point: &HashMap<Symbol, Rational>, digits: u32) -> Result<HighPrecision, EvalError> {
    let tape = Tape::new(e);
    let bits = digits_to_bits(digits);
    let mut arith = BigArith::new(bits);
    let inputs = tape.big_inputs(&mut arith, point)?;
    let value = tape.eval_big(&mut arith, &inputs)?;
    Ok(HighPrecision { value, max_magnitude: arith.max, bits })
}
