use std::collections::{BTreeMap, HashMap};

use revsym::expr::{differentiate, parse, substitute, DomainHints, Expr, Symbol, ZeroTester};
use revsym::operator::SurfaceOperator;
use revsym::reductions::{
    evaluate_on, example_solution, psi, reduce_scaling_subalgebra, reduce_translation_subalgebra, reduce_two_dim,
    translation_ode_residual, verify_example, ExampleSurface, ReductionError,
};

fn tester() -> ZeroTester {
    ZeroTester::default()
}

fn at(e: &Expr, pairs: &[(&str, &str)]) -> Expr {
    let m: HashMap<Symbol, Expr> = pairs.iter().map(|(k, v)| (Symbol::new(k), parse(v).unwrap())).collect();
    substitute(e, &m)
}

#[test]
fn translation_diff_lists_exactly_the_two_mixed_terms() {
    let op = SurfaceOperator::generic();
    let hints = DomainHints::new();
    let r = reduce_translation_subalgebra(&Expr::sym("a"), &op, &tester(), &hints).unwrap();
    let two = r.stage("two-variable").unwrap();
    let mut names: Vec<&str> = two.diff.iter().map(|d| d.monomial.as_str()).collect();
    names.sort();
    assert_eq!(names, vec!["φ_ηηυυ", "φ_ηυυ"]);
    assert!(two.diff.iter().all(|d| d.missing()));
    let e2 = parse("exp(-2*f)").unwrap();
    let want = |m: &str| match m {
        "φ_ηυυ" => -2 * parse("f_x").unwrap() * &e2,
        _ => 2 * &e2,
    };
    for d in &two.diff {
        assert!(tester().check(&(&d.derived - want(&d.monomial)), &hints).is_zero(), "{}", d.monomial);
    }
    assert!(r.stage("ode").unwrap().diff.is_empty());
}

#[test]
fn cylinder_translation_ode_is_a_pure_fourth_derivative() {
    let op = SurfaceOperator::new(parse("ln(b4)").unwrap()).unwrap();
    let r = reduce_translation_subalgebra(&Expr::sym("a"), &op, &tester(), &DomainHints::new().with("b4", 0.5, 2.0)).unwrap();
    let ode = &r.stage("ode").unwrap().derived;
    assert!(tester().check(&(&ode.lhs - psi(4)), &DomainHints::new()).is_zero());
    assert_eq!(ode.rhs, parse("-c1/a").unwrap());
    assert!(r.stage("ode").unwrap().diff.is_empty());
}

#[test]
fn translation_equation_agrees_with_direct_substitution() {
    let op = SurfaceOperator::new(parse("ln(x + 2)").unwrap()).unwrap();
    let r = reduce_translation_subalgebra(&Expr::sym("a"), &op, &tester(), &DomainHints::new()).unwrap();
    let probe = parse("sin(η)*υ^3 + η^2*υ + exp(η/3)*cos(υ)").unwrap();
    let reduced = evaluate_on(&r.stage("two-variable").unwrap().derived, "φ", &probe, &["η", "υ"]);
    let reduced = at(&reduced, &[("η", "x"), ("υ", "y - t/a")]);
    let u = at(&probe, &[("η", "x"), ("υ", "y - t/a")]);
    let direct = op.pde_residual(&u).unwrap();
    let hints = DomainHints::new().with("x", 0.0, 1.0).with("a", 0.5, 2.0);
    assert!(tester().check(&(reduced + direct), &hints).is_zero());
}

#[test]
fn zero_a_is_rejected() {
    let op = SurfaceOperator::generic();
    for r in [
        reduce_translation_subalgebra(&Expr::zero(), &op, &tester(), &DomainHints::new()).err(),
        reduce_scaling_subalgebra(&Expr::zero(), &Expr::one(), &op, &tester(), &DomainHints::new()).err(),
        reduce_two_dim(&Expr::zero(), &Expr::one(), &op, &tester(), &DomainHints::new()).err(),
    ] {
        assert!(matches!(r, Some(ReductionError::ZeroParameter("a"))));
    }
}

#[test]
fn scaling_reduction() {
    let op = SurfaceOperator::new(parse("ln(b4)").unwrap()).unwrap();
    let hints = DomainHints::new().with("b4", 0.5, 2.0).with("k", 0.5, 2.0);
    let (a, b) = (Expr::one(), parse("k^4").unwrap());
    let r = reduce_scaling_subalgebra(&a, &b, &op, &tester(), &hints).unwrap();
    let eq = &r.stages[0].derived;
    let kx = evaluate_on(eq, "φ", &parse("k*η").unwrap(), &["η", "υ"]);
    assert!(tester().check(&kx, &hints).is_zero());

    let r0 = reduce_scaling_subalgebra(&a, &Expr::zero(), &op, &tester(), &hints).unwrap();
    assert!(tester().check(&evaluate_on(&r0.stages[0].derived, "φ", &parse("3").unwrap(), &["η", "υ"]), &hints).is_zero());
    let r1 = reduce_scaling_subalgebra(&Expr::sym("a"), &Expr::sym("b"), &op, &tester(), &hints).unwrap();
    let c = evaluate_on(&r1.stages[0].derived, "φ", &parse("3").unwrap(), &["η", "υ"]);
    assert_eq!(c, parse("-b/a").unwrap());

    let generic = reduce_scaling_subalgebra(&Expr::sym("a"), &Expr::sym("b"), &SurfaceOperator::generic(), &tester(), &DomainHints::new()).unwrap();
    assert!(!generic.stages[0].diff.is_empty());
}

#[test]
fn scaling_equation_agrees_with_direct_substitution() {
    let op = SurfaceOperator::new(parse("x^2/3").unwrap()).unwrap();
    let (a, b) = (Expr::sym("a"), Expr::sym("b"));
    let r = reduce_scaling_subalgebra(&a, &b, &op, &tester(), &DomainHints::new()).unwrap();
    let probe = parse("sin(η)*υ + η^2*cos(υ)").unwrap();
    let reduced = at(&evaluate_on(&r.stages[0].derived, "φ", &probe, &["η", "υ"]), &[("η", "x"), ("υ", "y")]);
    let u = (at(&probe, &[("η", "x"), ("υ", "y")]) + &b / &a * Expr::sym("t")).exp();
    let direct = op.pde_residual(&u).unwrap();
    let hints = DomainHints::new().with("x", 0.0, 1.0).with("a", 0.5, 2.0).with("b", 0.5, 2.0).with("t", 0.0, 0.5);
    assert!(tester().check(&(direct / u + reduced), &hints).is_zero());
}

#[test]
fn two_dim_reduction() {
    let r = reduce_two_dim(&Expr::sym("a"), &Expr::sym("b"), &SurfaceOperator::generic(), &tester(), &DomainHints::new()).unwrap();
    assert!(r.stage("stage-1").unwrap().diff.is_empty());
    let s2 = r.stage("stage-2").unwrap();
    let mut found: BTreeMap<&str, (&Expr, &Expr)> = BTreeMap::new();
    for d in &s2.diff {
        found.insert(d.monomial.as_str(), (&d.derived, &d.published));
    }
    assert_eq!(found.keys().copied().collect::<Vec<_>>(), vec!["w_r^2*w_rr", "w_rr^2"]);
    assert_eq!(found["w_r^2*w_rr"], (&Expr::num(6), &Expr::num(3)));
    assert_eq!(found["w_rr^2"], (&Expr::num(3), &Expr::zero()));

    let op = SurfaceOperator::new(parse("ln(b4)").unwrap()).unwrap();
    let hints = DomainHints::new().with("b4", 0.5, 2.0);
    let cyl = reduce_two_dim(&Expr::one(), &parse("k^4").unwrap(), &op, &tester(), &hints).unwrap();
    let res = evaluate_on(&cyl.stage("stage-2").unwrap().derived, "w", &parse("k*r").unwrap(), &["r"]);
    assert!(tester().check(&res, &hints).is_zero());
}

#[test]
fn stage1_is_the_y_independent_equation() {
    let op = SurfaceOperator::new(parse("sinh(x) + 2").unwrap()).unwrap();
    let r = reduce_two_dim(&Expr::sym("a"), &Expr::sym("b"), &op, &tester(), &DomainHints::new()).unwrap();
    let probe = parse("sin(η)*exp(-υ) + η^3*υ^2").unwrap();
    let reduced = at(&evaluate_on(&r.stage("stage-1").unwrap().derived, "φ", &probe, &["η", "υ"]), &[("η", "x"), ("υ", "t")]);
    let direct = op.pde_residual(&at(&probe, &[("η", "x"), ("υ", "t")])).unwrap();
    assert!(tester().check(&(reduced + direct), &DomainHints::new()).is_zero());
}

#[test]
fn examples_certify_with_symbolic_constants() {
    for s in ExampleSurface::ALL {
        let sol = example_solution(s, &BTreeMap::new());
        let c = verify_example(&sol, &tester()).unwrap();
        assert!(c.is_zero(), "{}: {c:?}", s.name());
    }
}

#[test]
fn perturbed_example_fails() {
    let mut sol = example_solution(ExampleSurface::Cylinder, &BTreeMap::new());
    sol.u = parse("c1*(y - t/a - x^4/(23*a)) + c2*x^3/6 + c3*x^2/2 + c4*x + c5").unwrap();
    assert!(!verify_example(&sol, &tester()).unwrap().is_zero());
}

#[test]
fn example_instances() {
    let consts = |pairs: &[(&str, i64)]| -> BTreeMap<String, Expr> {
        let mut m: BTreeMap<String, Expr> = ["c1", "c2", "c3", "c4", "c5"].iter().map(|c| (c.to_string(), Expr::zero())).collect();
        for (k, v) in pairs {
            m.insert(k.to_string(), Expr::num(*v));
        }
        m
    };
    let hints = DomainHints::new().with("x", 0.5, 2.0);
    let cases = [
        (ExampleSurface::Cylinder, consts(&[("c1", 1), ("a", 1)]), "y - t - x^4/24"),
        (ExampleSurface::Pseudosphere, consts(&[("c2", 1)]), "(x + 2)*exp(-x)"),
        (ExampleSurface::Paraboloid, consts(&[("c3", 1)]), "2*x^(1/2)"),
    ];
    for (s, c, want) in cases {
        let u = example_solution(s, &c).u;
        assert!(tester().check(&(u - parse(want).unwrap()), &hints).is_zero(), "{}", s.name());
    }
    assert!(ExampleSurface::from_name("4").is_err());
}

#[test]
fn examples_are_invariant_and_satisfy_the_reduced_ode() {
    for s in ExampleSurface::ALL {
        let sol = example_solution(s, &BTreeMap::new());
        let hints = s.hints();
        let (y, t) = (Symbol::new("y"), Symbol::new("t"));
        let along = differentiate(&sol.u, &y) + Expr::sym("a") * differentiate(&sol.u, &t);
        assert!(tester().check(&along, &hints).is_zero());
        let ode = translation_ode_residual(&sol.operator(), &sol.psi(), &Expr::sym("c1"), &Expr::sym("a"));
        assert!(tester().check(&ode, &hints).is_zero(), "{}", s.name());
    }
}
