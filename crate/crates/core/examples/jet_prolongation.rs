//! Characteristic and prolongation of a cataloged generator, and the
//! invariance condition restricted to solutions.
//!
//! ```bash
//! cargo run --release --example jet_prolongation
//! ```

use revsym::expr::ZeroTester;
use revsym::geometry::{FamilyKind, SurfaceFamily};
use revsym::jet::{prolongation_coefficient, JetCoordinate};
use revsym::operator::SurfaceOperator;
use revsym::symmetry::{invariance_expression, resolve_generator};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cylinder = SurfaceFamily::symbolic(FamilyKind::Cylinder)?;
    let x6 = resolve_generator(&cylinder, "X6")?;
    println!("{}: {}", x6.name, x6.field);
    println!("Q = {}", x6.field.characteristic());
    for (nx, ny) in [(1, 0), (0, 1), (2, 0), (0, 2), (1, 1)] {
        let j = JetCoordinate::new(nx, ny, 0)?;
        println!("eta^{} = {}", j.name(), prolongation_coefficient(&x6.field, j)?);
    }

    let op = SurfaceOperator::new(cylinder.profile().clone())?;
    let residual = invariance_expression(&x6.field, &op)?;
    println!("restricted invariance expression has {} nodes", residual.node_count());
    let cert = ZeroTester::default().check(&residual, &cylinder.hints());
    println!("certificate: {:?} via {:?}", cert.verdict, cert.method);
    Ok(())
}
