//! The three similarity reductions with their published-form diffs, and
//! the exact solutions they produce.
//!
//! ```bash
//! cargo run --release --example similarity_reduction
//! ```

use std::collections::BTreeMap;

use revsym::expr::{DomainHints, Expr, ZeroTester};
use revsym::operator::SurfaceOperator;
use revsym::reductions::{
    example_solution, reduce_scaling_subalgebra, reduce_translation_subalgebra, reduce_two_dim, verify_example,
    ExampleSurface, ReductionResult,
};

fn show(r: &ReductionResult) {
    println!("{} subalgebra: {}", r.subalgebra.name(), r.invariant_solution);
    for (name, value) in &r.similarity_variables {
        println!("  {name} = {value}");
    }
    for stage in &r.stages {
        println!("  {}: {} differing terms", stage.label, stage.diff.len());
        for d in stage.diff.iter().take(4) {
            println!("    {}: derived {} vs published {}", d.monomial, d.derived, d.published);
        }
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tester = ZeroTester::default();
    let op = SurfaceOperator::generic();
    let hints = DomainHints::new();
    let (a, b) = (Expr::sym("a"), Expr::sym("b"));
    show(&reduce_translation_subalgebra(&a, &op, &tester, &hints)?);
    show(&reduce_scaling_subalgebra(&a, &b, &op, &tester, &hints)?);
    show(&reduce_two_dim(&a, &b, &op, &tester, &hints)?);

    for surface in ExampleSurface::ALL {
        let sol = example_solution(surface, &BTreeMap::new());
        let cert = verify_example(&sol, &tester)?;
        println!("{}: u = {}  [{:?}]", surface.name(), sol.u, cert.verdict);
    }
    Ok(())
}
