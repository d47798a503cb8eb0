//! Curvature of every surface family and an OBJ mesh of the sphere
//! built from the unit-speed profile curve.
//!
//! ```bash
//! cargo run --release --example surface_mesh -- /tmp/sphere.obj
//! ```

use std::path::PathBuf;

use revsym::expr::ZeroTester;
use revsym::geometry::{FamilyKind, Mesh, ProfileCurve, SurfaceFamily, DEFAULT_TOLERANCE};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tester = ZeroTester::default();
    for kind in FamilyKind::CONCRETE {
        let family = SurfaceFamily::symbolic(kind)?;
        let verdict = family.certify_curvature(&tester).map(|c| format!("{:?}", c.verdict)).unwrap_or_else(|| "-".into());
        println!("{:<18} K = {:<28} {verdict}", kind.name(), family.curvature().to_string());
    }

    let sphere = SurfaceFamily::new(FamilyKind::CosFamily, &revsym::geometry::parse_params("a5=1, b6=1")?)?;
    let curve = ProfileCurve::new(&sphere, DEFAULT_TOLERANCE)?;
    let (x0, x1) = sphere.sampling_window()?;
    let mesh = Mesh::from_profile(&curve, x0, x1, 48, 64)?;
    let worst = mesh.vertices.iter().map(|p| (p.iter().map(|c| c * c).sum::<f64>().sqrt() - 1.0).abs()).fold(0.0, f64::max);
    println!("sphere mesh: {} vertices, {} triangles, max radius error {worst:.1e}", mesh.vertices.len(), mesh.triangles.len());

    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("revsym_sphere.obj"));
    mesh.save_obj(&out)?;
    println!("wrote {}", out.display());
    Ok(())
}
