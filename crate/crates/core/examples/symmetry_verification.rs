//! Verifies the cylinder's generators and the bracket structure of its
//! algebra.
//!
//! ```bash
//! cargo run --release --example symmetry_verification
//! ```

use revsym::expr::ZeroTester;
use revsym::geometry::{FamilyKind, SurfaceFamily};
use revsym::symmetry::{catalog_generators, certify_zero_field, commutator, verify_family};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tester = ZeroTester::with_seed(1);
    let cylinder = SurfaceFamily::with_defaults(FamilyKind::Cylinder)?;
    for r in verify_family(&cylinder, &tester)? {
        let failing = r.determining_published.failing();
        println!(
            "{:<14} invariance {:?}, e1-e14 {}, published form failing {:?}",
            r.generator,
            r.invariance.verdict,
            if r.determining_corrected.all_zero() { "zero" } else { "nonzero" },
            failing
        );
    }

    let gens = catalog_generators(&cylinder);
    let hints = cylinder.hints();
    for a in &gens {
        for b in &gens {
            if a.name < b.name {
                let bracket = commutator(&a.field, &b.field);
                if !certify_zero_field(&bracket, &tester, &hints).is_zero() {
                    println!("[{}, {}] = {}", a.label, b.label, bracket);
                }
            }
        }
    }
    Ok(())
}
