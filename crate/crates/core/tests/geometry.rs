use std::f64::consts::FRAC_PI_4;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use revsym::expr::{differentiate, parse, DomainHints, ZeroTester};
use revsym::geometry::{export_mesh, parse_params, CosSubtype, FamilyKind, ProfileCurve, SurfaceFamily};

#[test]
fn curvature_matches_closed_form_numeric_and_symbolic() {
    let tester = ZeroTester::default();
    for kind in FamilyKind::CONCRETE {
        for s in [SurfaceFamily::with_defaults(kind).unwrap(), SurfaceFamily::symbolic(kind).unwrap()] {
            let c = s.certify_curvature(&tester).unwrap();
            assert!(c.is_zero(), "{kind}: {c:?}");
        }
    }
}

#[test]
fn curvature_constants() {
    let k = |kind, p: &str| SurfaceFamily::new(kind, &parse_params(p).unwrap()).unwrap().curvature_at(0.3).unwrap();
    assert!((k(FamilyKind::Tractoid, "b3=-2, C=1") + 4.0).abs() < 1e-12);
    assert!((k(FamilyKind::ConicSinh, "a7=1/2, b7=2, a8=1") + 0.25).abs() < 1e-12);
    assert!((k(FamilyKind::CosFamily, "a5=1, b6=2") - 0.25).abs() < 1e-12);
    assert!(k(FamilyKind::Cone, "l=1/2, b4=1").abs() < 1e-12);
}

#[test]
fn power_law_curvature_sign() {
    let s = SurfaceFamily::symbolic(FamilyKind::PowerLaw).unwrap();
    let scaled = s.curvature() * (parse("x - a2").unwrap()).powi(2) + parse("a3*(a3 - 1)").unwrap();
    assert!(ZeroTester::default().check(&scaled, &s.hints()).is_zero());
}

#[test]
fn cos_family_curvature_is_constant_for_each_subtype() {
    for (p, sub) in [("a5=1,b6=1", CosSubtype::Sphere), ("a5=1/2,b6=1", CosSubtype::Spindle), ("a5=2,b6=1", CosSubtype::Bulge)] {
        let s = SurfaceFamily::new(FamilyKind::CosFamily, &parse_params(p).unwrap()).unwrap();
        assert_eq!(s.cos_subtype(), Some(sub));
        assert!(s.certify_curvature(&ZeroTester::default()).unwrap().is_zero());
    }
}

#[test]
fn classification_odes_hold() {
    let tester = ZeroTester::default();
    for kind in FamilyKind::CONCRETE {
        for s in [SurfaceFamily::with_defaults(kind).unwrap(), SurfaceFamily::symbolic(kind).unwrap()] {
            assert!(s.classification_residual(&tester).unwrap().is_zero(), "{kind}");
        }
    }
    let arbitrary = SurfaceFamily::arbitrary(parse("x^2").unwrap()).unwrap();
    assert!(arbitrary.classification_residual(&tester).is_err());
}

#[test]
fn tractoid_is_not_flat() {
    let t = SurfaceFamily::with_defaults(FamilyKind::Tractoid).unwrap();
    let x = "x".into();
    let f1 = differentiate(t.profile(), &x);
    let flat_ode = differentiate(&f1, &x) + f1.powi(2);
    assert!(!ZeroTester::default().check(&flat_ode, &DomainHints::new()).is_zero());
}

#[test]
fn unit_speed_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for kind in FamilyKind::CONCRETE {
        let s = SurfaceFamily::with_defaults(kind).unwrap();
        let c = ProfileCurve::new(&s, 1e-12).unwrap();
        let (lo, hi) = s.sampling_window().unwrap();
        for _ in 0..100 {
            let x = rng.gen_range(lo..hi);
            let v1 = c.v_prime_by_differencing(x, 1e-3).unwrap();
            let w1 = c.w_prime(x).unwrap();
            assert!((v1 * v1 + w1 * w1 - 1.0).abs() < 1e-10, "{kind} x={x}: {}", v1 * v1 + w1 * w1 - 1.0);
        }
    }
}

#[test]
fn profile_integrals() {
    let sphere = SurfaceFamily::with_defaults(FamilyKind::CosFamily).unwrap();
    let c = ProfileCurve::new(&sphere, 1e-12).unwrap();
    assert!((c.v(FRAC_PI_4).unwrap() - 0.5f64.sqrt()).abs() < 1e-10);

    let cyl = SurfaceFamily::new(FamilyKind::Cylinder, &parse_params("b4=3, a4=1/2").unwrap()).unwrap();
    let c = ProfileCurve::new(&cyl, 1e-12).unwrap();
    let p = c.coordinate_patch(1.0, 0.0).unwrap();
    assert!((p[0] - 0.5).abs() < 1e-14 && (p[1] - 3.0).abs() < 1e-14 && p[2] == 0.0);
    let q = c.coordinate_patch(1.0, std::f64::consts::FRAC_PI_2).unwrap();
    assert!(q[1].abs() < 1e-15);
}

#[test]
fn unit_speed_integrand_of_cos_family() {
    let s = SurfaceFamily::symbolic(FamilyKind::CosFamily).unwrap();
    let want = parse("(1 - a5^2*b6^(-2)*sin(x/b6 + a6)^2)^(1/2)").unwrap();
    let d = s.unit_speed_integrand() - want;
    assert!(ZeroTester::default().check(&d, &s.hints()).is_zero());
    let cyl = SurfaceFamily::with_defaults(FamilyKind::Cylinder).unwrap();
    assert_eq!(cyl.unit_speed_integrand(), parse("1").unwrap());
}

#[test]
fn domains() {
    let s = |k, p: &str| SurfaceFamily::new(k, &parse_params(p).unwrap()).unwrap();
    assert_eq!(s(FamilyKind::CosFamily, "a5=1/2,b6=1").valid_domain().unwrap().lo, None);
    assert_eq!(s(FamilyKind::Cylinder, "b4=2").valid_domain().unwrap().hi, None);
    assert!(s(FamilyKind::ConicSinh, "a7=2,b7=1").valid_domain().is_err());
    assert!(s(FamilyKind::Cone, "l=2,b4=0").valid_domain().is_err());
    let pl = s(FamilyKind::PowerLaw, "a2=1,a3=2,b5=1").valid_domain().unwrap();
    assert_eq!((pl.lo, pl.hi), (Some(1.0), Some(1.5)));
}

#[test]
fn sphere_mesh_lies_on_sphere() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sphere.obj");
    let s = SurfaceFamily::new(FamilyKind::CosFamily, &parse_params("a5=2,b6=2").unwrap()).unwrap();
    let mesh = export_mesh(&s, 16, 12, None, 1e-8, &path).unwrap();
    let worst = mesh.vertices.iter().map(|v| ((v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt() - 2.0).abs()).fold(0.0, f64::max);
    assert!(worst < 1e-6, "{worst}");
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 16 * 12);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 2 * 15 * 12);
}

#[test]
fn mesh_rejects_bad_path() {
    let s = SurfaceFamily::with_defaults(FamilyKind::Cylinder).unwrap();
    let r = export_mesh(&s, 4, 4, None, 1e-8, std::path::Path::new("/nonexistent/dir/x.obj"));
    assert!(r.is_err());
}

#[test]
fn info_serializes() {
    let s = SurfaceFamily::with_defaults(FamilyKind::Tractoid).unwrap();
    let info = serde_json::to_value(s.info(&ZeroTester::default())).unwrap();
    assert_eq!(info["family"], "tractoid");
    assert_eq!(info["curvature_constant"], "-1");
}
