use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_lorcurv"));
    c.env_remove("LORCURV_TOL");
    c
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lorcurv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn run(c: &mut Command) -> (i32, String, String) {
    let out = c.output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn analyze_einstein_fixture() {
    let (code, out, _) = run(bin().arg("analyze").arg(fixture("S4lambda.4.json")));
    assert_eq!(code, 0);
    assert!(out.contains("Einstein λ=-25"), "{out}");
    assert!(out.contains("locally symmetric: true"));
    assert!(out.contains("dim h(K) = 2"));
    assert!(out.contains("Petrov I {25^1, 0^2}"), "{out}");
}

#[test]
fn analyze_flat_and_isotropic() {
    let (code, out, _) = run(bin().arg("analyze").arg(fixture("abelian4.json")));
    assert_eq!(code, 0);
    assert!(out.contains("Ricci: flat"));
    let (code, out, _) = run(bin().arg("analyze").arg(fixture("S40.1.json")));
    assert_eq!(code, 0);
    assert!(out.contains("ricci-isotropic") && out.contains("second-order: false"), "{out}");
}

#[test]
fn analyze_writes_json_report() {
    let path = std::env::temp_dir().join(format!("lorcurv-report-{}.json", std::process::id()));
    let (code, _, _) = run(bin().arg("analyze").arg(fixture("komrakov.1.1-2_5.json")).arg("--json").arg(&path));
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["kind"], "homogeneous_pair");
    assert_eq!(v["ricci_type"], "ricci-isotropic");
    assert_eq!(v["statement"], "Ricci isotropic homogeneous semi-symmetric Lorentzian model");
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(bin().arg("analyze").arg("/nonexistent/doc.json"));
    assert_eq!(code, 2, "{err}");
    let bad = scratch("bad.json", "{ not json");
    assert_eq!(run(bin().arg("analyze").arg(&bad)).0, 2);
    let degenerate = scratch("deg.json", r#"{"kind": "lie_algebra", "dim": 2, "metric": [["0", "0"], ["0", "1"]]}"#);
    assert_eq!(run(bin().arg("analyze").arg(&degenerate)).0, 3);
    let float_doc = fixture("S40.1-float.json");
    assert_eq!(run(bin().arg("analyze").arg(&float_doc).args(["--mode", "exact"])).0, 3);
    assert_eq!(run(bin().arg("analyze").arg(&float_doc)).0, 0);
    // Ricci eigenvalues 0 and 0.005 sit inside the default ambiguity band
    let near = fixture("near-degenerate-float.json");
    assert_eq!(run(bin().arg("analyze").arg(&near)).0, 4);
    assert_eq!(run(bin().arg("analyze").arg(&near).env("LORCURV_TOL", "1e-15")).0, 0);
    assert_eq!(run(bin().arg("analyze").arg(&near).env("LORCURV_TOL", "nope")).0, 2);
    assert_eq!(run(bin().args(["verify-catalog", "--family", "no-such"])).0, 2);
}

#[test]
fn verify_catalog_family() {
    let (code, out, _) = run(bin().args(["verify-catalog", "--family", "komrakov.1.1^2:5"]));
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS komrakov.1.1^2:5"), "{out}");
    assert!(out.contains(" ms"));
    assert!(out.contains("1 families, 4 instances, 0 mismatches"), "{out}");
    let (code, out, _) = run(bin().args(["verify-catalog", "--family", "table1.meta.*"]));
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.starts_with("SKIP") || l.contains("skipped")), "{out}");
}

#[test]
fn verify_catalog_mismatch_exits_4() {
    // an absurd tolerance merges distinct eigenvalues and breaks the claims
    let (code, out, _) = run(bin().args(["verify-catalog", "--mode", "float", "--family", "S4mulambda"]).env("LORCURV_TOL", "0.5"));
    assert_eq!(code, 4, "{out}");
}

#[test]
fn verify_catalog_json_is_deterministic_up_to_timing() {
    let dir = std::env::temp_dir();
    let (a, b) = (dir.join(format!("lc-a-{}.json", std::process::id())), dir.join(format!("lc-b-{}.json", std::process::id())));
    for p in [&a, &b] {
        assert_eq!(run(bin().args(["verify-catalog", "--family", "S4lambda.*", "--json"]).arg(p)).0, 0);
    }
    let strip = |p: &PathBuf| {
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        for r in v["results"].as_array_mut().unwrap() {
            r["millis"] = serde_json::json!(0);
        }
        v
    };
    assert_eq!(strip(&a), strip(&b));
}
