//! Parse, differentiate, substitute, evaluate and zero-test expressions.
//!
//! ```bash
//! cargo run --release --example expression_cas
//! ```

use std::collections::HashMap;

use revsym::expr::{differentiate, evaluate, parse, rat, substitute_symbol, DomainHints, Symbol, ZeroTester};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = Symbol::new("x");
    let f = parse("a3*ln(x - a2)")?;
    let f1 = differentiate(&f, &x);
    let f2 = differentiate(&f1, &x);
    let f3 = differentiate(&f2, &x);
    println!("f    = {f}");
    println!("f'   = {f1}");
    println!("f''' = {f3}");

    // The power-law profile solves f‴f′ = 2f″².
    let ode = &f3 * &f1 - 2 * f2.powi(2);
    let hints = DomainHints::new().with("a2", -1.0, 0.0).with("x", 0.5, 2.0);
    let cert = ZeroTester::with_seed(7).check(&ode, &hints);
    println!("f'''f' - 2f''^2: {:?} via {:?} ({} samples at {} digits)", cert.verdict, cert.method, cert.samples, cert.digits);

    let weight = substitute_symbol(&parse("exp(-2*f)")?, &Symbol::new("f"), &parse("ln(b4)")?);
    println!("exp(-2f) with f = ln b4: {weight}");

    let point: HashMap<Symbol, _> = [(x.clone(), rat(7, 10))].into_iter().collect();
    let v = evaluate(&parse("sinh(x)^2 - cosh(x)^2")?, &point, 50)?;
    println!("sinh²(0.7) - cosh²(0.7) at 50 digits: {v}");

    match parse("sin(x") {
        Ok(e) => println!("unexpected parse: {e}"),
        Err(e) => println!("sin(x: {e}"),
    }
    Ok(())
}
