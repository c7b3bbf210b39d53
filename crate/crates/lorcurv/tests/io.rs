use lorcurv::catalog::{catalog, Role};
use lorcurv::io::{Document, Kind};
use lorcurv::report::{analyze, Subject};
use lorcurv::{Error, Mode, Q};

const PLANE: &str = r#"{
  "kind": "lie_algebra",
  "dim": 2,
  "basis": ["e", "f"],
  "metric": [["1", "0"], ["0", "-1"]],
  "brackets": { "e,f": { "e": "-3/2", "f": "0" } }
}"#;

#[test]
fn exact_document_parses() {
    let d = Document::parse(PLANE).unwrap();
    assert_eq!(d.kind, Kind::LieAlgebra);
    assert_eq!(d.mode, Mode::Exact);
    // zero coefficients are dropped
    assert_eq!(d.brackets[&(0, 1)].len(), 1);
    let Subject::Lie(g) = d.subject::<Q>().unwrap() else { panic!() };
    assert_eq!(g.bracket_basis(0, 1)[0], lorcurv::scalar::q(-3, 2));
}

#[test]
fn canonical_round_trip() {
    let d = Document::parse(PLANE).unwrap();
    let text = d.to_json_pretty();
    let again = Document::parse(&text).unwrap();
    assert_eq!(again, d);
    assert_eq!(again.to_json_pretty(), text);
    assert!(!text.contains("\"f\": \"0\""));
}

#[test]
fn every_catalog_instance_round_trips() {
    for fam in catalog().iter().filter(|f| !f.is_metadata()) {
        for s in fam.samples.iter().filter(|s| s.role == Role::Sample) {
            let Ok(subject) = fam.instantiate::<Q>(&s.params) else { continue };
            let doc = Document::from_subject(&subject);
            let back = Document::parse(&doc.to_json_pretty()).unwrap();
            assert_eq!(back, doc, "{}", fam.id);
            let rebuilt = back.subject::<Q>().unwrap();
            let (a, b) = (analyze(&subject).unwrap(), analyze(&rebuilt).unwrap());
            assert_eq!(a.curvature.components(), b.curvature.components(), "{}", fam.id);
        }
    }
}

fn parse_err(text: &str) -> Error {
    Document::parse(text).unwrap_err()
}

#[test]
fn malformed_documents_are_parse_errors() {
    let cases = [
        r#"{"kind": "lie_algebra""#,
        r#"{"kind": "group", "dim": 1, "metric": [["1"]]}"#,
        r#"{"kind": "lie_algebra", "dim": 2, "metric": [["1", 0], ["0", "1"]]}"#,
        r#"{"kind": "lie_algebra", "dim": 2, "metric": [["1", "0"], ["0", "1"]], "brackets": {"e2,e1": {"e1": "1"}}}"#,
        r#"{"kind": "lie_algebra", "dim": 2, "metric": [["1", "0"], ["0", "1"]], "brackets": {"e1,e9": {"e1": "1"}}}"#,
        r#"{"kind": "lie_algebra", "dim": 2, "metric": [["1", "0"], ["0", "x"]]}"#,
        r#"{"kind": "lie_algebra", "dim": 2, "metric": [["1", "0"]]}"#,
        r#"{"kind": "homogeneous_pair", "dim": 1, "metric": [["1"]]}"#,
        r#"{"kind": "lie_algebra", "dim": 1, "metric": [["1"]], "colour": "red"}"#,
    ];
    for c in cases {
        let e = parse_err(c);
        assert!(matches!(e, Error::Parse(_)), "{c}: {e}");
        assert_eq!(e.exit_code(), 2);
    }
}

#[test]
fn invalid_data_are_validation_errors() {
    let degenerate = r#"{"kind": "lie_algebra", "dim": 2, "metric": [["1", "1"], ["1", "1"]]}"#;
    let not_lie = r#"{"kind": "lie_algebra", "dim": 3, "metric": [["1","0","0"],["0","1","0"],["0","0","-1"]],
        "brackets": {"e1,e2": {"e1": "1"}, "e1,e3": {"e2": "1"}}}"#;
    let float_doc = r#"{"kind": "lie_algebra", "dim": 1, "metric": [[1.0]]}"#;
    for (text, what) in [(degenerate, "degenerate"), (not_lie, "Jacobi"), (float_doc, "float in exact mode")] {
        let d = Document::parse(text).unwrap();
        let e = d.subject::<Q>().and_then(|s| analyze(&s).map(|_| ())).unwrap_err();
        assert_eq!(e.exit_code(), 3, "{what}: {e}");
    }
}

#[test]
fn float_document_runs_in_float_mode() {
    let text = r#"{"kind": "lie_algebra", "dim": 2, "metric": [[1, 0], [0, 1]], "brackets": {"e1,e2": {"e1": 0.5}}}"#;
    let d = Document::parse(text).unwrap();
    assert_eq!(d.mode, Mode::Float);
    let a = analyze(&d.subject::<f64>().unwrap()).unwrap();
    assert!((a.einstein.unwrap() + 0.25).abs() < 1e-12);
}

#[test]
fn homogeneous_pair_document() {
    // so(2) acting on the Euclidean plane, with the flat quotient
    let text = r#"{"kind": "homogeneous_pair", "isotropy_dim": 1, "dim": 2,
        "metric": [["1", "0"], ["0", "1"]],
        "brackets": {"e1,u1": {"u2": "1"}, "e1,u2": {"u1": "-1"}}}"#;
    let d = Document::parse(text).unwrap();
    assert_eq!(d.basis, ["e1", "u1", "u2"]);
    let a = analyze(&d.subject::<Q>().unwrap()).unwrap();
    assert!(a.flat);
    let back = Document::parse(&d.to_json_pretty()).unwrap();
    assert_eq!(back, d);
}
