use revsym::expr::{parse, Expr, F64Tape, Symbol};
use revsym::numeric::{
    adaptive_quadrature, convergence_order, discrete_norm, fd_residual, integrate_reduced_ode, time_step_dissipative, write_csv,
    ConvergenceVerdict, Grid, NumericError,
};

const EXAMPLE1: &str = "(y - t - x^4/24) + x^3/6 + x^2/2 + x + 1";
const EXAMPLE2: &str = "(y - t - x^2/2) + ((x + 2) + 1)*exp(-x) + x + 1";
const EXAMPLE3: &str = "(y - t - x^4/42) + x^2/2 + 2*x^(1/2) + 2*x^(5/2)/5 + 1";

fn p(s: &str) -> Expr {
    parse(s).unwrap()
}

fn refinement(x0: f64, x1: f64) -> Vec<Grid> {
    [33, 65, 129].iter().map(|&n| Grid::square(x0, x1, n).unwrap()).collect()
}

#[test]
fn example1_is_reproduced_to_rounding() {
    let g = Grid::square(-1.0, 1.0, 33).unwrap();
    let r = fd_residual(&p("0"), &p(EXAMPLE1), &g, 0.3).unwrap();
    assert!(r.max_norm < 1e-8, "{}", r.max_norm);
    let study = convergence_order(&p("0"), &p(EXAMPLE1), &refinement(-1.0, 1.0), 0.3).unwrap();
    assert_eq!(study.verdict, ConvergenceVerdict::Exact);
}

#[test]
fn non_solution_has_unit_residual() {
    let g = Grid::square(0.0, 1.0, 17).unwrap();
    let r = fd_residual(&p("ln(x + 1)"), &p("t"), &g, 0.0).unwrap();
    assert!((r.max_norm - 1.0).abs() < 1e-12);
}

#[test]
fn examples_2_and_3_converge_at_second_order() {
    for (f, u, x0, x1) in [("x", EXAMPLE2, 0.0, 2.0), ("ln(x)/2", EXAMPLE3, 1.0, 2.0)] {
        let study = convergence_order(&p(f), &p(u), &refinement(x0, x1), 0.5).unwrap();
        let order = study.order().unwrap_or_else(|| panic!("{f}: {:?}", study.verdict));
        assert!((order - 2.0).abs() <= 0.2, "{f}: {order}");
    }
}

#[test]
fn separable_mode_on_cylinder_converges() {
    // L² sin x sin y = (1 + b⁻²)² sin x sin y with b = 2.
    let u = p("exp((1 + 1/4)^2*t)*sin(x)*sin(y)");
    let study = convergence_order(&p("ln(2)"), &u, &refinement(0.0, 3.0), 0.1).unwrap();
    let order = study.order().unwrap();
    assert!((order - 2.0).abs() <= 0.2, "{order}");
}

#[test]
fn stencils_are_exact_on_low_monomials() {
    for (u, lu) in [("x^4", "24"), ("x^3", "0"), ("x^2*y^2", "2"), ("x", "0")] {
        let full = format!("{u} + t*({lu})");
        let g = Grid::square(0.5, 1.5, 17).unwrap();
        let r = fd_residual(&p("ln(2)"), &p(&full), &g, 0.2).unwrap();
        assert!(r.at_rounding_floor(), "{u}: {} > {}", r.max_norm, r.rounding_floor);
    }
}

#[test]
fn grid_validation() {
    assert!(matches!(Grid::new(0.0, 1.0, 8, 8), Err(NumericError::GridTooSmall { .. })));
    assert!(matches!(Grid::new(1.0, 1.0, 9, 8), Err(NumericError::BadRange(..))));
    let grids = refinement(0.0, 1.0);
    assert!(matches!(convergence_order(&p("0"), &p("t"), &grids[..2], 0.0), Err(NumericError::TooFewGrids(2))));
    let g = Grid::square(-1.0, 1.0, 9).unwrap();
    assert!(matches!(fd_residual(&p("ln(x)"), &p("t"), &g, 0.0), Err(NumericError::Domain { .. })));
}

fn analytic(psi: &str) -> impl Fn(f64) -> f64 {
    let tape = F64Tape::new(&p(psi), &[Symbol::new("x")]).unwrap();
    move |x| tape.eval(&[x]).unwrap()
}

fn initial(psi: &str, x0: f64) -> [f64; 4] {
    let x = Symbol::new("x");
    let mut e = p(psi);
    let mut out = [0.0; 4];
    for v in out.iter_mut() {
        *v = F64Tape::new(&e, &[x.clone()]).unwrap().eval(&[x0]).unwrap();
        e = revsym::expr::differentiate(&e, &x);
    }
    out
}

#[test]
fn reduced_ode_matches_examples() {
    let cases = [
        ("ln(3)", "-2*x^4/(24*(1/2)) + x^3/6 - x^2 + 3*x + 1", 1.0, 0.5),
        ("x", "-x^2/(2*2) + ((x + 2) + 1/2)*exp(-x) - x", 1.0, 2.0),
    ];
    for (f, psi, c1, a) in cases {
        let c1 = if f == "ln(3)" { 2.0 } else { c1 };
        let sol = integrate_reduced_ode(&p(f), c1, a, initial(psi, 0.0), 0.0, 1.0, 50, 1e-12).unwrap();
        let exact = analytic(psi);
        let worst = sol.psi().map(|(x, v)| (v - exact(x)).abs()).fold(0.0, f64::max);
        assert!(worst < 1e-9, "{f}: {worst}");
        assert!((sol.eta.last().unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn reduced_ode_endpoints_are_steps_not_interpolants() {
    // Coarse sampling and a span crossing zero; every sample, the last
    // included, comes from a step that ends on it.
    let psi = "-x^4/12 + x^3/6 - x^2 + 3*x + 1";
    let exact = analytic(psi);
    for samples in [1, 3, 10] {
        let sol = integrate_reduced_ode(&p("ln(3)"), 2.0, 1.0, initial(psi, -1.0), -1.0, 1.0, samples, 1e-12).unwrap();
        assert_eq!(sol.eta.len(), samples + 1);
        assert_eq!(*sol.eta.last().unwrap(), 1.0);
        let worst = sol.psi().map(|(x, v)| (v - exact(x)).abs()).fold(0.0, f64::max);
        assert!(worst < 1e-10, "{samples}: {worst:e}");
    }
}

#[test]
fn reduced_ode_is_linear() {
    let f = p("ln(x + 2)");
    let run = |c1: f64, ic: [f64; 4]| integrate_reduced_ode(&f, c1, 1.5, ic, 0.0, 1.0, 20, 1e-11).unwrap();
    let zero = run(0.0, [0.0; 4]);
    assert!(zero.psi().all(|(_, v)| v == 0.0));
    let a = run(1.0, [1.0, 0.0, -1.0, 0.5]);
    let b = run(-0.5, [0.0, 2.0, 0.0, 1.0]);
    let ab = run(0.5, [1.0, 2.0, -1.0, 1.5]);
    for k in 0..ab.state.len() {
        for m in 0..4 {
            let d = (a.state[k][m] + b.state[k][m] - ab.state[k][m]).abs();
            assert!(d <= 10.0 * 1e-11 * (1.0 + ab.state[k][m].abs()), "{k} {m}: {d:e}");
        }
    }
}

#[test]
fn reduced_ode_errors() {
    let f = p("ln(x)/2");
    assert!(matches!(integrate_reduced_ode(&f, 1.0, 1.0, [0.0; 4], 0.5, 0.0, 10, 1e-10), Err(NumericError::BadRange(..))));
    let r = integrate_reduced_ode(&p("ln(1 - x)/2"), 1.0, 1.0, [0.0, 1.0, 0.0, 0.0], 0.0, 1.0, 10, 1e-10);
    assert!(matches!(r, Err(NumericError::StepUnderflow(_) | NumericError::Domain { .. })), "{r:?}");
    assert!(matches!(integrate_reduced_ode(&f, 1.0, 1.0, [0.0; 4], 1.0, 2.0, 10, 0.0), Err(NumericError::BadTolerance(_))));
    assert!(matches!(integrate_reduced_ode(&f, 1.0, 0.0, [0.0; 4], 1.0, 2.0, 10, 1e-8), Err(NumericError::ZeroParameter("a"))));
}

#[test]
fn dissipative_stepping() {
    let g = Grid::new(0.0, std::f64::consts::PI, 17, 16).unwrap();
    let f = p("ln(2)");
    let u0 = g.sample(&p("sin(x)*sin(y)")).unwrap();
    let h = time_step_dissipative(&f, &u0, &g, 1e-2, 8).unwrap();
    let norms = h.norms();
    assert!(norms.windows(2).all(|w| w[1] < w[0]), "{norms:?}");
    assert_eq!(h.fields.len(), 9);

    let ones = vec![1.0; g.len()];
    let h = time_step_dissipative(&f, &ones, &g, 0.1, 5).unwrap();
    for u in &h.fields {
        assert!(u.iter().all(|v| (v - 1.0).abs() < 1e-9));
    }
    assert!((discrete_norm(&g, &ones) - (std::f64::consts::PI * std::f64::consts::TAU).sqrt()).abs() < 1e-12);

    assert!(matches!(time_step_dissipative(&f, &u0, &g, 0.0, 1), Err(NumericError::BadTimeStep(_))));
    let curved = time_step_dissipative(&p("ln(x + 1)"), &u0, &g, 1e-3, 3).unwrap();
    assert!(curved.fields.iter().all(|u| u.iter().all(|v| v.is_finite())));
}

#[test]
fn csv_dump() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("field.csv");
    let g = Grid::new(0.0, 1.0, 9, 4).unwrap();
    let u = g.sample(&p("x + y")).unwrap();
    write_csv(&path, &g, &u).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 37);
    assert!(text.starts_with("x,y,value"));
    assert!(write_csv(&path, &g, &u[1..]).is_err());
}

#[test]
fn quadrature_suite() {
    let cases = [
        ("1", 0.0, 1.0, 1.0),
        ("cos(s)", 0.0, std::f64::consts::FRAC_PI_4, 0.5f64.sqrt()),
        ("s^2", 0.0, 3.0, 9.0),
        ("exp(s)", 0.0, 1.0, std::f64::consts::E - 1.0),
        ("1/s", 1.0, 2.0, std::f64::consts::LN_2),
        ("sin(s)^2", 0.0, std::f64::consts::PI, std::f64::consts::FRAC_PI_2),
        ("1/(1 + s^2)", 0.0, 1.0, std::f64::consts::FRAC_PI_4),
        ("s^(1/2)", 0.0, 1.0, 2.0 / 3.0),
        ("cosh(s)", -1.0, 1.0, 2.0 * 1f64.sinh()),
        ("ln(s)", 1.0, std::f64::consts::E, 1.0),
    ];
    for (e, lo, hi, want) in cases {
        let got = adaptive_quadrature(&p(e), &Symbol::new("s"), lo, hi, 1e-11).unwrap();
        assert!((got - want).abs() <= 1e-11, "{e}: {got} vs {want}");
    }
}
