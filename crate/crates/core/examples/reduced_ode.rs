//! Integrates the reduced ODE on the pseudosphere and compares ψ with the
//! closed form of Example 2.
//!
//! ```bash
//! cargo run --release --example reduced_ode
//! ```

use revsym::expr::parse;
use revsym::numeric::integrate_reduced_ode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // ψ(η) = −η²/2 + (η + 3)e^{−η} + η + 1 with c1 = a = 1.
    let psi = |x: f64| -x * x / 2.0 + (x + 3.0) * (-x).exp() + x + 1.0;
    let initial = [4.0, -1.0, 0.0, 0.0];
    let sol = integrate_reduced_ode(&parse("x")?, 1.0, 1.0, initial, 0.0, 1.0, 10, 1e-12)?;
    let mut worst: f64 = 0.0;
    for (eta, value) in sol.psi() {
        let err = (value - psi(eta)).abs();
        worst = worst.max(err);
        println!("eta {eta:.1}  psi {value:+.12}  error {err:.1e}");
    }
    println!("max error {worst:.1e}");
    Ok(())
}
