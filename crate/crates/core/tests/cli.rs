use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn revsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revsym")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn validate(report: &Value) {
    let schema: Value = serde_json::from_str(include_str!("../schema/run_report.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

fn report_of(args: &[&str], dir: &Path) -> (i32, Value) {
    let path = dir.join("report.json");
    let mut full = args.to_vec();
    let p = path.to_str().unwrap();
    full.extend(["--report", p]);
    let out = revsym(&full);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    validate(&v);
    (code(&out), v)
}

#[test]
fn catalog_lists_families_and_subtypes() {
    let out = revsym(&["catalog"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("tractoid") && text.contains("K = -b3^2"), "{text}");
    for s in ["sphere", "spindle", "bulge"] {
        assert!(text.contains(&format!(": {s}")), "{s}");
    }
}

#[test]
fn verify_symmetry_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (c, v) = report_of(&["verify-symmetry", "--family", "cylinder", "--all"], dir.path());
    assert_eq!(c, 0);
    let invariance = v["checks"].as_array().unwrap().iter().filter(|c| c["name"].as_str().unwrap().ends_with("invariance")).count();
    assert_eq!(invariance, 7);
    assert_eq!(code(&revsym(&["verify-symmetry", "--family", "power_law", "--generator", "X4"])), 0);
    assert_eq!(code(&revsym(&["verify-symmetry", "--family", "cylinder", "--generator", "power_law.X4"])), 1);
    assert_eq!(code(&revsym(&["verify-symmetry", "--family", "cylinder"])), 1);
    assert_eq!(code(&revsym(&["verify-symmetry", "--family", "torus", "--all"])), 1);
    assert_eq!(code(&revsym(&["verify-symmetry", "--family", "power_law", "--params", "α3=1", "--all"])), 1);
}

#[test]
fn verify_solution_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    for e in ["1", "2", "3"] {
        let (c, v) = report_of(&["verify-solution", "--example", e], dir.path());
        assert_eq!(c, 0, "example {e}: {v}");
        assert_eq!(v["output"]["convergence"]["reports"].as_array().unwrap().len(), 3);
    }
    let (c, v) = report_of(&["verify-solution", "--f", "ln(x)", "--u", "t"], dir.path());
    assert_eq!(c, 2);
    assert_eq!(v["exit_code"], 2);
    assert_eq!(code(&revsym(&["verify-solution", "--f", "ln(x", "--u", "t"])), 1);
    assert_eq!(code(&revsym(&["verify-solution", "--example", "4"])), 1);
}

#[test]
fn reduce_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (c, v) = report_of(&["reduce", "--subalgebra", "translation", "--f", "ln(b4)"], dir.path());
    assert_eq!(c, 0);
    let ode = v["output"]["stages"].as_array().unwrap().iter().find(|s| s["label"] == "ode").unwrap();
    assert_eq!(ode["derived"]["lhs"], "ψ_ηηηη");
    assert!(ode["diff"].as_array().unwrap().is_empty());

    let (_, v) = report_of(&["reduce", "--subalgebra", "translation"], dir.path());
    let two = v["output"]["stages"].as_array().unwrap().iter().find(|s| s["label"] == "two-variable").unwrap();
    assert_eq!(two["diff"].as_array().unwrap().len(), 2);

    assert_eq!(code(&revsym(&["reduce", "--subalgebra", "two-dim", "--a", "1", "--b", "2"])), 0);
    assert_eq!(code(&revsym(&["reduce", "--subalgebra", "translation", "--a", "0"])), 1);
    assert_eq!(code(&revsym(&["reduce", "--subalgebra", "rotation"])), 1);
}

#[test]
fn mesh_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("sphere.obj");
    let (c, v) = report_of(&["mesh", "--family", "cos_family", "--out", obj.to_str().unwrap()], dir.path());
    assert_eq!(c, 0);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["name"] == "sphere radius within 1e-6" && c["passed"] == true));
    let text = std::fs::read_to_string(&obj).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 64 * 64);

    let fig = dir.path().join("power.obj");
    let out = revsym(&["mesh", "--family", "power_law", "--params", "α2=0,α3=1/2,β5=1", "--x0", "0.25", "--x1", "5", "--out", fig.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(fig.exists());
    assert_eq!(code(&revsym(&["mesh", "--family", "cylinder", "--out", "/nonexistent-dir/x.obj"])), 1);
    assert_eq!(code(&revsym(&["mesh", "--family", "cylinder", "--ny", "1", "--out", fig.to_str().unwrap()])), 1);
}

#[test]
fn discrepancies_report() {
    let dir = tempfile::tempdir().unwrap();
    let (c, v) = report_of(&["discrepancies", "--threads", "2"], dir.path());
    assert_eq!(c, 0);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for want in ["plane.X9 e11", "plane.X9 e13", "power_law curvature", "cos_family curvature", "two-dim stage-2 w_rr^2"] {
        assert!(names.contains(&want), "{want}");
    }
}

#[test]
fn reports_are_stable_up_to_timings() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify-symmetry", "--family", "tractoid", "--all", "--seed", "7"];
    let (_, mut a) = report_of(&args, dir.path());
    let (_, mut b) = report_of(&args, dir.path());
    a["timings"] = Value::Null;
    b["timings"] = Value::Null;
    assert_eq!(a, b);
    assert_eq!(a["seed"], 7);
}

#[test]
fn help_and_usage() {
    assert_eq!(code(&revsym(&["--help"])), 0);
    assert_eq!(code(&revsym(&["--version"])), 0);
    assert_eq!(code(&revsym(&[])), 1);
    assert_eq!(code(&revsym(&["frobnicate"])), 1);
    let out = revsym(&["catalog", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    validate(&v);
}
