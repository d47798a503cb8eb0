//! Expression core: parser, differentiation, normalization, substitution,
//! evaluation and zero testing, with property tests on random trees.

use std::collections::HashMap;

use approx::assert_relative_eq;
use proptest::prelude::*;
use revsym::expr::{
    differentiate, evaluate, big_to_f64, is_zero, parse, rat, substitute, substitute_symbol, DomainHints, EvalError,
    Expr, F64Tape, Func, Kind, ParseErrorKind, Symbol, Verdict,
};

fn p(s: &str) -> Expr {
    parse(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn dx(e: &Expr) -> Expr {
    differentiate(e, &Symbol::new("x"))
}

fn point(pairs: &[(&str, i64, i64)]) -> HashMap<Symbol, revsym::expr::Rational> {
    pairs.iter().map(|&(n, a, b)| (Symbol::new(n), rat(a, b))).collect()
}

#[test]
fn parse_examples() {
    let e = p("x^2 + 2*x + 1");
    let Kind::Add(terms) = e.kind() else { panic!("expected a sum, got {e}") };
    assert_eq!(terms.len(), 3);
    assert!(terms.contains(&Expr::sym("x").powi(2)));
    assert!(terms.contains(&(Expr::num(2) * Expr::sym("x"))));
    assert!(terms.contains(&Expr::one()));

    let e = p("ln(b3*x + b4)");
    assert_eq!(e, (Expr::sym("b3") * Expr::sym("x") + Expr::sym("b4")).ln());
    let Kind::Fun(Func::Ln, _) = e.kind() else { panic!("expected ln") };

    let err = parse("sin(x").unwrap_err();
    assert_eq!(err.offset, 5);
    let err = parse("frob(x)").unwrap_err();
    assert!(matches!(err.kind, ParseErrorKind::UnknownFunction(_)), "{err:?}");
}

#[test]
fn differentiate_examples() {
    assert_eq!(dx(&p("x^3")), p("3*x^2"));
    assert_eq!(dx(&p("ln(b3*x + b4)")), p("b3/(b3*x + b4)"));
    assert_eq!(dx(&p("a7*sinh(x/b7 + a8)")), p("(a7/b7)*cosh(x/b7 + a8)"));
    // csch² is rewritten so the function set stays closed.
    assert_eq!(dx(&p("coth(x)")), p("1 - coth(x)^2"));
}

#[test]
fn normalize_examples() {
    assert_eq!(p("x*x"), p("x^2"));
    assert_eq!(p("0*u_xx + u_t"), p("u_t"));
    assert_eq!(p("1/2 + 1/3"), Expr::frac(5, 6));
    assert_eq!(p("x^0"), Expr::one());
    assert_eq!(p("6/4").as_rational(), Some(&rat(3, 2)));
    assert_eq!(p("3/(-6)").as_rational(), Some(&rat(-1, 2)));
}

#[test]
fn substitute_examples() {
    let fp = Symbol::new("fp");
    let e = substitute_symbol(&p("fp*u_x"), &fp, &p("1/(2*x)"));
    assert_eq!(e, p("u_x/(2*x)"));

    let x = Symbol::new("x");
    assert_eq!(substitute_symbol(&p("x^2"), &x, &Expr::sym("x")), p("x^2"));

    let e = substitute_symbol(&p("exp(-2*f)"), &Symbol::new("f"), &p("ln(b4)"));
    assert_eq!(e, p("b4^(-2)"));

    // Bindings apply simultaneously.
    let swap: HashMap<Symbol, Expr> =
        [(Symbol::new("x"), Expr::sym("y")), (Symbol::new("y"), Expr::sym("x"))].into_iter().collect();
    assert_eq!(substitute(&p("x - 2*y"), &swap), p("y - 2*x"));
}

#[test]
fn evaluate_examples() {
    let v = evaluate(&p("ln(x)"), &point(&[("x", 1, 1)]), 30).unwrap();
    assert_eq!(v.to_f64(), 0.0);

    let v = evaluate(&p("sinh(x)^2 - cosh(x)^2"), &point(&[("x", 7, 10)]), 50).unwrap();
    assert_relative_eq!(v.to_f64(), -1.0, max_relative = 1e-15);

    let err = evaluate(&p("1/x"), &point(&[("x", 0, 1)]), 30).unwrap_err();
    assert!(matches!(err, EvalError::Domain(_)), "{err:?}");
    let err = evaluate(&p("ln(x - 2)"), &point(&[("x", 1, 1)]), 30).unwrap_err();
    let EvalError::Domain(d) = err else { panic!("expected a domain error") };
    assert!(d.subexpr.contains("ln"), "{}", d.subexpr);
    assert!(matches!(evaluate(&p("y"), &point(&[]), 30), Err(EvalError::Unbound(_))));
}

#[test]
fn is_zero_examples() {
    let none = DomainHints::new();
    let c = is_zero(&p("coth(x)^2 - 1 - sinh(x)^(-2)"), &none);
    assert_eq!(c.verdict, Verdict::Zero);

    // f‴f′ − 2f″² with f = α₃ ln(x − α₂).
    let f = p("a3*ln(x - a2)");
    let (f1, f2) = (dx(&f), dx(&dx(&f)));
    let f3 = dx(&f2);
    let hints = DomainHints::new().with("a2", -1.0, 0.0).with("x", 0.5, 2.0);
    assert!(is_zero(&(f3 * &f1 - 2 * f2.powi(2)), &hints).is_zero());

    assert_eq!(is_zero(&p("x^2 - x"), &none).verdict, Verdict::Nonzero);
}

const IDENTITIES: [&str; 20] = [
    "sin(x)^2 + cos(x)^2 - 1",
    "cosh(x)^2 - sinh(x)^2 - 1",
    "sin(2*x) - 2*sin(x)*cos(x)",
    "cos(2*x) - cos(x)^2 + sin(x)^2",
    "sinh(2*x) - 2*sinh(x)*cosh(x)",
    "cosh(2*x) - cosh(x)^2 - sinh(x)^2",
    "tanh(x) - sinh(x)/cosh(x)",
    "coth(x) - cosh(x)/sinh(x)",
    "1 - tanh(x)^2 - cosh(x)^(-2)",
    "coth(x)^2 - 1 - sinh(x)^(-2)",
    "exp(x)*exp(y) - exp(x + y)",
    "exp(2*x) - exp(x)^2",
    "ln(x*y) - ln(x) - ln(y)",
    "ln(x^3) - 3*ln(x)",
    "exp(ln(x)) - x",
    "ln(exp(x)) - x",
    "sinh(x) - (exp(x) - exp(-x))/2",
    "cosh(x) - (exp(x) + exp(-x))/2",
    "sin(x + y) - sin(x)*cos(y) - cos(x)*sin(y)",
    "(x + 1)^3 - x^3 - 3*x^2 - 3*x - 1",
];

#[test]
fn canned_identities_and_perturbations() {
    let hints = DomainHints::new().with("x", 0.5, 2.0).with("y", 0.5, 2.0);
    for id in IDENTITIES {
        let e = p(id);
        assert_eq!(is_zero(&e, &hints).verdict, Verdict::Zero, "{id}");
        let perturbed = e + Expr::frac(1, 1000) * Expr::sym("x");
        assert_eq!(is_zero(&perturbed, &hints).verdict, Verdict::Nonzero, "{id} + x/1000");
    }
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        Just(Expr::sym("x")),
        Just(Expr::sym("y")),
        Just(Expr::sym("b3")),
        (-5i64..=5, 1i64..=4).prop_map(|(a, b)| Expr::frac(a, b)),
    ]
}

/// Random trees over every node kind. `smooth` keeps to functions that are
/// analytic on the whole real line so evaluation never leaves the domain.
fn tree(depth: u32, smooth: bool) -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(depth, 64, 3, move |inner| {
        let funcs: Vec<Func> = if smooth {
            vec![Func::Exp, Func::Sin, Func::Cos, Func::Sinh, Func::Cosh, Func::Tanh]
        } else {
            vec![Func::Exp, Func::Ln, Func::Sin, Func::Cos, Func::Sinh, Func::Cosh, Func::Tanh, Func::Coth]
        };
        let exps: Vec<(i64, i64)> =
            if smooth { vec![(2, 1), (3, 1)] } else { vec![(2, 1), (3, 1), (-1, 1), (1, 2), (-3, 2)] };
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(|v| v.into_iter().sum::<Expr>()),
            prop::collection::vec(inner.clone(), 2..3).prop_map(|v| v.into_iter().product::<Expr>()),
            (inner.clone(), prop::sample::select(exps)).prop_map(|(b, (n, d))| b.pow(rat(n, d))),
            (inner, prop::sample::select(funcs)).prop_map(|(a, f)| revsym::expr::apply(f, a)),
        ]
    })
}

/// `|lhs − rhs|` relative to the largest intermediate at 60 digits, or
/// `None` when the sample point is outside the domain.
fn relative_gap(lhs: &Expr, rhs: &Expr, x: (i64, i64), y: (i64, i64)) -> Option<f64> {
    let pt = point(&[("x", x.0, x.1), ("y", y.0, y.1), ("b3", 7, 5)]);
    let v = evaluate(&(lhs - rhs), &pt, 60).ok()?;
    let scale = big_to_f64(&v.max_magnitude).max(1.0);
    Some(v.to_f64().abs() / scale)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn print_parse_round_trip(e in tree(8, false)) {
        let text = e.to_string();
        let back = parse(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(&back, &e, "{}", text);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn normalization_is_idempotent(e in tree(8, false)) {
        // Rebuilding through the smart constructors re-normalizes every node.
        let x = Symbol::new("x");
        let rebuilt = substitute_symbol(&e, &x, &Expr::sym("x"));
        prop_assert_eq!(&rebuilt, &e);
        prop_assert_eq!(substitute_symbol(&rebuilt, &x, &Expr::sym("x")), rebuilt);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn derivative_is_linear(
        a in tree(3, true),
        b in tree(3, true),
        x in (1i64..40, 7i64..11),
        y in (-20i64..20, 7i64..11),
    ) {
        let lhs = dx(&(&a + &b));
        let rhs = dx(&a) + dx(&b);
        if let Some(g) = relative_gap(&lhs, &rhs, x, y) {
            prop_assert!(g <= 1e-30, "gap {g:e}");
        }
    }

    #[test]
    fn derivative_obeys_leibniz(
        a in tree(3, true),
        b in tree(3, true),
        x in (1i64..40, 7i64..11),
        y in (-20i64..20, 7i64..11),
    ) {
        let lhs = dx(&(&a * &b));
        let rhs = dx(&a) * &b + &a * dx(&b);
        if let Some(g) = relative_gap(&lhs, &rhs, x, y) {
            prop_assert!(g <= 1e-30, "gap {g:e}");
        }
    }

    #[test]
    fn f64_tape_matches_high_precision(e in tree(4, true), x in (1i64..40, 7i64..11), y in (-20i64..20, 7i64..11)) {
        let vars = [Symbol::new("x"), Symbol::new("y"), Symbol::new("b3")];
        let tape = F64Tape::new(&e, &vars).unwrap();
        let pt = point(&[("x", x.0, x.1), ("y", y.0, y.1), ("b3", 7, 5)]);
        let exact = evaluate(&e, &pt, 40).unwrap();
        let fast = tape.eval(&[x.0 as f64 / x.1 as f64, y.0 as f64 / y.1 as f64, 1.4]).unwrap();
        let scale = big_to_f64(&exact.max_magnitude).max(1.0);
        prop_assert!((fast - exact.to_f64()).abs() <= 1e-9 * scale, "{fast} vs {}", exact.to_f64());
    }
}
