//! Finite-difference residuals of the exact solutions on refined grids.
//!
//! ```bash
//! cargo run --release --example finite_difference_convergence
//! ```

use revsym::expr::parse;
use revsym::numeric::{convergence_order, ConvergenceVerdict, Grid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("cylinder", "0", "(y - t - x^4/24) + x^3/6 + x^2/2 + x + 1", -1.0, 1.0),
        ("pseudosphere", "x", "(y - t - x^2/2) + (x + 3)*exp(-x) + x + 1", 0.0, 2.0),
        ("paraboloid", "ln(x)/2", "(y - t - x^4/42) + x^2/2 + 2*x^(1/2) + 2*x^(5/2)/5 + 1", 1.0, 2.0),
    ];
    for (name, f, u, x0, x1) in cases {
        let grids: Vec<Grid> = [33, 65, 129].iter().map(|&n| Grid::square(x0, x1, n)).collect::<Result<_, _>>()?;
        let study = convergence_order(&parse(f)?, &parse(u)?, &grids, 0.5)?;
        println!("{name}");
        for r in &study.reports {
            println!("  {:>3}x{:<3} max {:.3e}  l2 {:.3e}  floor {:.1e}", r.grid.nx, r.grid.ny, r.max_norm, r.l2_norm, r.rounding_floor);
        }
        match study.verdict {
            ConvergenceVerdict::Exact => println!("  stencils exact to rounding"),
            ConvergenceVerdict::Order { order } => println!("  observed order {order:.3}"),
            ConvergenceVerdict::NonMonotone { order } => println!("  non-monotone, slope {order:.3}"),
        }
    }
    Ok(())
}
