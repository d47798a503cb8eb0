use revsym::discrepancies::{collect, curvature_discrepancies, reduction_discrepancies, Topic};
use revsym::expr::ZeroTester;

#[test]
fn curvature_conflicts_are_certified_nonzero() {
    let found = curvature_discrepancies(&ZeroTester::default()).unwrap();
    let subjects: Vec<&str> = found.iter().map(|d| d.subject.as_str()).collect();
    assert_eq!(subjects, ["general curvature formula (tractoid)", "power_law curvature", "cos_family curvature"]);
}

#[test]
fn reduction_conflicts() {
    let found = reduction_discrepancies(&ZeroTester::default()).unwrap();
    let mut subjects: Vec<&str> = found.iter().map(|d| d.subject.as_str()).collect();
    subjects.retain(|s| !s.starts_with("scaling"));
    assert_eq!(
        subjects,
        ["translation two-variable φ_ηηυυ", "translation two-variable φ_ηυυ", "two-dim stage-2 w_r^2*w_rr", "two-dim stage-2 w_rr^2"]
    );
    assert!(found.iter().any(|d| d.subject.starts_with("scaling transformed")));
}

#[test]
fn full_report() {
    let report = collect(&ZeroTester::default()).unwrap();
    assert!(report.subjects(Topic::Invariance).is_empty());
    let det = report.subjects(Topic::DeterminingEquations);
    assert!(det.contains(&"plane.X9 e11") && det.contains(&"plane.X9 e13"), "{det:?}");
    assert!(det.iter().all(|s| s.ends_with("e11") || s.ends_with("e13")), "{det:?}");
    assert_eq!(report.subjects(Topic::Curvature).len(), 3);
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["entries"][0]["topic"], "curvature");
}
