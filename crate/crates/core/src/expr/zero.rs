//! Zero equivalence: exact normal form first, then seeded high-precision
//! sampling.

use std::collections::{BTreeMap, HashMap};

use astro_float::{BigFloat, Radix, RoundingMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::eval::{big_to_f64, digits_to_bits, BigArith, Tape};
use super::{poly, Expr, Kind, Rational, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Zero,
    Nonzero,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    SymbolicNormalForm,
    ProbabilisticSampling,
}

/// Outcome of a zero test together with the evidence behind it.
#[derive(Debug, Clone, Serialize)]
pub struct ZeroCertificate {
    pub verdict: Verdict,
    pub method: Method,
    /// Number of successful sample evaluations (0 for symbolic proofs).
    pub samples: usize,
    pub digits: u32,
    /// Largest intermediate magnitude seen while sampling.
    pub max_magnitude: f64,
    /// Largest `|value| / max_magnitude` over the samples.
    pub max_relative_residual: f64,
    pub seed: u64,
}

impl ZeroCertificate {
    pub fn is_zero(&self) -> bool {
        self.verdict == Verdict::Zero
    }

    fn symbolic(verdict: Verdict, seed: u64) -> Self {
        ZeroCertificate {
            verdict,
            method: Method::SymbolicNormalForm,
            samples: 0,
            digits: 0,
            max_magnitude: 0.0,
            max_relative_residual: 0.0,
            seed,
        }
    }
}

/// Sampling boxes per symbol; unlisted symbols use the default interval.
#[derive(Debug, Clone)]
pub struct DomainHints {
    default: (f64, f64),
    ranges: BTreeMap<Symbol, (f64, f64)>,
}

impl Default for DomainHints {
    fn default() -> Self {
        DomainHints { default: (-2.0, 2.0), ranges: BTreeMap::new() }
    }
}

impl DomainHints {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, lo: f64, hi: f64) -> Self {
        self.ranges.insert(Symbol::new(name), (lo, hi));
        self
    }

    pub fn set(&mut self, name: &str, lo: f64, hi: f64) {
        self.ranges.insert(Symbol::new(name), (lo, hi));
    }

    pub fn range(&self, s: &Symbol) -> (f64, f64) {
        self.ranges.get(s).copied().unwrap_or(self.default)
    }
}

/// Configuration of the zero test.
#[derive(Debug, Clone)]
pub struct ZeroTester {
    pub samples: usize,
    pub digits: u32,
    pub escalated_digits: u32,
    /// Relative threshold as a power of ten.
    pub threshold_exp10: i32,
    pub seed: u64,
    pub symbolic_budget: usize,
    /// Sample attempts allowed per requested sample before giving up.
    pub attempts_per_sample: usize,
}

impl Default for ZeroTester {
    fn default() -> Self {
        ZeroTester {
            samples: 32,
            digits: 60,
            escalated_digits: 120,
            threshold_exp10: -40,
            seed: 0,
            symbolic_budget: 4_000,
            attempts_per_sample: 8,
        }
    }
}

enum SampleOutcome {
    Zero,
    Ambiguous,
    Nonzero,
}

struct SampleRun {
    verdict: Verdict,
    samples: usize,
    max_magnitude: f64,
    max_relative: f64,
}

impl ZeroTester {
    pub fn with_seed(seed: u64) -> Self {
        ZeroTester { seed, ..Self::default() }
    }

    /// Certifies whether `e` vanishes identically on the hinted domain.
    pub fn check(&self, e: &Expr, hints: &DomainHints) -> ZeroCertificate {
        if let Kind::Num(r) = e.kind() {
            let v = if r == &Rational::from_integer(0.into()) { Verdict::Zero } else { Verdict::Nonzero };
            return ZeroCertificate::symbolic(v, self.seed);
        }
        if let Ok(true) = poly::symbolic_zero(e, self.symbolic_budget) {
            return ZeroCertificate::symbolic(Verdict::Zero, self.seed);
        }
        let tape = Tape::new(e);
        let mut digits = self.digits;
        let mut run = self.sample(&tape, hints, digits);
        if run.verdict == Verdict::Inconclusive && self.escalated_digits > digits {
            digits = self.escalated_digits;
            run = self.sample(&tape, hints, digits);
        }
        ZeroCertificate {
            verdict: run.verdict,
            method: Method::ProbabilisticSampling,
            samples: run.samples,
            digits,
            max_magnitude: run.max_magnitude,
            max_relative_residual: run.max_relative,
            seed: self.seed,
        }
    }

    fn sample(&self, tape: &Tape, hints: &DomainHints, digits: u32) -> SampleRun {
        let bits = digits_to_bits(digits);
        let vars: Vec<Symbol> = tape.variables().to_vec();
        let ranges: Vec<(f64, f64)> = vars.iter().map(|s| hints.range(s)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let max_attempts = self.samples * self.attempts_per_sample;
        let mut attempts = 0;
        let mut outcomes: Vec<(SampleOutcome, f64, f64)> = Vec::new();
        while outcomes.len() < self.samples && attempts < max_attempts {
            let batch = (self.samples - outcomes.len()).min(max_attempts - attempts);
            attempts += batch;
            let points: Vec<HashMap<Symbol, Rational>> = (0..batch)
                .map(|_| {
                    vars.iter()
                        .zip(&ranges)
                        .map(|(s, &(lo, hi))| {
                            let v: f64 = rng.gen_range(lo..=hi);
                            (s.clone(), Rational::from_float(v).expect("finite sample"))
                        })
                        .collect()
                })
                .collect();
            let results: Vec<Option<(SampleOutcome, f64, f64)>> = points
                .par_iter()
                .map_init(
                    || BigArith::new(bits),
                    |arith, p| {
                        arith.max = BigFloat::from_word(0, bits);
                        let inputs = tape.big_inputs(arith, p).ok()?;
                        let v = tape.eval_big(arith, &inputs).ok()?;
                        Some(self.classify(arith, &v))
                    },
                )
                .collect();
            outcomes.extend(results.into_iter().flatten());
        }
        outcomes.truncate(self.samples);
        let max_magnitude = outcomes.iter().map(|o| o.1).fold(0.0, f64::max);
        let max_relative = outcomes.iter().map(|o| o.2).fold(0.0, f64::max);
        let verdict = if outcomes.iter().any(|o| matches!(o.0, SampleOutcome::Nonzero)) {
            Verdict::Nonzero
        } else if outcomes.len() == self.samples && outcomes.iter().all(|o| matches!(o.0, SampleOutcome::Zero)) {
            Verdict::Zero
        } else {
            Verdict::Inconclusive
        };
        SampleRun { verdict, samples: outcomes.len(), max_magnitude, max_relative }
    }

    fn classify(&self, arith: &mut BigArith, v: &BigFloat) -> (SampleOutcome, f64, f64) {
        let (p, rm) = (arith.p, RoundingMode::ToEven);
        let max = arith.max.clone();
        let mag = big_to_f64(&max);
        let abs = v.abs();
        if max.is_zero() {
            return (SampleOutcome::Zero, 0.0, 0.0);
        }
        let rel = abs.div(&max, p, rm);
        let thr = BigFloat::parse(&format!("1e{}", self.threshold_exp10), Radix::Dec, p, rm, &mut arith.cc);
        let strong = thr.mul(&BigFloat::from_word(10, p), p, rm);
        let outcome = if rel.cmp(&thr).is_some_and(|c| c <= 0) {
            SampleOutcome::Zero
        } else if rel.cmp(&strong).is_some_and(|c| c > 0) {
            SampleOutcome::Nonzero
        } else {
            SampleOutcome::Ambiguous
        };
        (outcome, mag, big_to_f64(&rel))
    }
}

/// Zero test with the default configuration (32 samples, 60 digits,
/// threshold 1e-40 relative to the largest intermediate, seed 0).
pub fn is_zero(e: &Expr, hints: &DomainHints) -> ZeroCertificate {
    ZeroTester::default().check(e, hints)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn z(s: &str) -> Verdict {
        is_zero(&parse(s).unwrap(), &DomainHints::new()).verdict
    }

    #[test]
    fn symbolic_and_sampled_verdicts() {
        assert_eq!(z("0"), Verdict::Zero);
        assert_eq!(z("3"), Verdict::Nonzero);
        assert_eq!(z("sinh(2*x) - 2*sinh(x)*cosh(x)"), Verdict::Zero);
        assert_eq!(z("x - y"), Verdict::Nonzero);
        assert_eq!(z("x^2 - x^2*(1 + 1e-30)"), Verdict::Nonzero);
        assert_eq!(z("x^2 - x^2*(1 + 1e-50)"), Verdict::Zero);
    }

    #[test]
    fn cancellation_below_threshold_is_zero() {
        let hints = DomainHints::new().with("x", 1.0, 2.0);
        let e = parse("ln(x^3) - 3*ln(x) + sin(x)^2 + cos(x)^2 - 1").unwrap();
        let c = is_zero(&e, &hints);
        assert_eq!(c.verdict, Verdict::Zero);
    }

    #[test]
    fn domain_failures_everywhere_are_inconclusive() {
        let hints = DomainHints::new().with("x", -2.0, -1.0);
        let c = is_zero(&parse("ln(x) - ln(x)*exp(y) ").unwrap(), &hints);
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert_eq!(c.samples, 0);
    }
}
