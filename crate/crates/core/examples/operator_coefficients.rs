//! Closed-form coefficients of L²u for a generic profile, each certified
//! against the direct expansion L(Lu).
//!
//! ```bash
//! cargo run --release --example operator_coefficients
//! ```

use revsym::expr::{parse, DomainHints, ZeroTester};
use revsym::operator::SurfaceOperator;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let op = SurfaceOperator::generic();
    let checks = op.certify_coefficients(&ZeroTester::default(), &DomainHints::new())?;
    let table = op.expanded_coefficients();
    for c in &checks {
        let coef = table.entries.get(&c.jet).map(|e| e.to_string()).unwrap_or_else(|| "0".into());
        println!("{:>7}: {:<32} {:?}", c.jet.name(), coef, c.certificate.verdict);
    }

    // The pseudosphere f = x and the Example 2 solution.
    let pseudo = SurfaceOperator::new(parse("x")?)?;
    let u = parse("c1*(y - t/a - x^2/(2*a)) + (c2*(x + 2) + c3)*exp(-x) + c4*x + c5")?;
    let hints = DomainHints::new().with("a", 0.5, 2.0);
    let cert = ZeroTester::default().check(&pseudo.pde_residual(&u)?, &hints);
    println!("u_t - L²u on the pseudosphere: {:?}", cert.verdict);
    Ok(())
}
