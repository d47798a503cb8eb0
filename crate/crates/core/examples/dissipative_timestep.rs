//! Backward Euler on u_t = −L²u over a pseudosphere patch: the discrete
//! norm of a bump decays step by step.
//!
//! ```bash
//! cargo run --release --example dissipative_timestep
//! ```

use revsym::expr::parse;
use revsym::numeric::{time_step_dissipative, Grid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = Grid::new(0.0, 2.0, 33, 32)?;
    let u0 = grid.sample(&parse("exp(-8*(x - 1)^2)*cos(y)")?)?;
    let history = time_step_dissipative(&parse("x")?, &u0, &grid, 1e-4, 20)?;
    for (k, n) in history.norms().iter().enumerate().step_by(4) {
        println!("step {k:>2}  t = {:.4}  ||u|| = {n:.6}", k as f64 * history.dt);
    }
    Ok(())
}
