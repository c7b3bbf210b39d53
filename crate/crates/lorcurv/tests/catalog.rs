use lorcurv::catalog::*;
use lorcurv::io::Document;
use lorcurv::report::{analyze, Subject};
use lorcurv::scalar::{q, qi};
use lorcurv::{Error, Mode, Q};

#[test]
fn exact_run_has_no_mismatches() {
    let s = verify_all(Mode::Exact, None).unwrap();
    let failures: Vec<String> = s.text().into_iter().filter(|l| l.starts_with("FAIL") || l.starts_with("   ")).collect();
    assert!(s.passed(), "{}", failures.join("\n"));
    assert_eq!(s.skipped, catalog().iter().filter(|f| f.is_metadata()).count());
    assert!(s.instances > 200);
}

#[test]
fn float_run_agrees() {
    let s = verify_all(Mode::Float, Some("S4*")).unwrap();
    assert!(s.passed(), "{}", s.text().join("\n"));
    let s = verify_all(Mode::Float, Some("komrakov.*")).unwrap();
    assert!(s.passed(), "{}", s.text().join("\n"));
}

#[test]
fn results_follow_catalog_order() {
    let s = verify_all(Mode::Exact, Some("plane.*")).unwrap();
    let ids: Vec<&str> = s.results.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids, ["plane.abelian", "plane.euclid", "plane.lor-pos", "plane.lor-neg", "plane.null"]);
}

#[test]
fn family_filter() {
    assert!(glob_match("komrakov.1.4^1:*", "komrakov.1.4^1:15-17"));
    assert!(!glob_match("komrakov.1.4^1:*", "komrakov.2.5^2:2"));
    assert!(glob_match("*", ""));
    assert!(glob_match("a*b*c", "aXXbYc"));
    assert!(!glob_match("a*b", "ab_"));
    assert!(matches!(verify_all(Mode::Exact, Some("no-such-family")), Err(Error::UnknownFamily(_))));
    let meta = verify_all(Mode::Exact, Some("table1.meta.*")).unwrap();
    assert!(meta.results.iter().all(|r| r.status == Status::Skipped));
    assert!(meta.text().iter().any(|l| l.contains("skipped (metadata-only)")));
}

#[test]
fn expectation_examples() {
    let e = find("3d-cc.1").unwrap().expected(&params(&[("lambda", qi(-2)), ("c", qi(0))])).unwrap();
    assert_eq!(e.ricci, RicciClaim::Einstein(qi(-2)));
    let e = find("S30.ii").unwrap().expected(&params(&[("a", qi(1)), ("b", qi(0))])).unwrap();
    assert_eq!(e.ricci, RicciClaim::Isotropic);
    assert_eq!(e.dim_hk, Some(vec![1]));
    assert_eq!(e.holonomy_equals_hk, Some(true));
    let e = find("S4lambda.1").unwrap().expected(&params(&[("a", qi(2)), ("eps", qi(1)), ("delta", qi(1))])).unwrap();
    assert_eq!(e.ricci, RicciClaim::Einstein(qi(-12)));
    let e = find("S4lambda.3").unwrap().expected(&params(&[("a", qi(5)), ("b", qi(3)), ("eps", qi(1))])).unwrap();
    assert_eq!(e.ricci, RicciClaim::Einstein(q(-256, 9)));
}

#[test]
fn printed_conditions_are_enforced() {
    let f = find("S4lambda.4").unwrap();
    let bad = params(&[("a", qi(0)), ("b", qi(0)), ("eps", qi(1))]);
    assert!(matches!(f.instantiate::<Q>(&bad), Err(Error::Precondition(_))));
    let bad_sign = params(&[("a", qi(5)), ("b", qi(3)), ("eps", qi(2))]);
    assert!(matches!(f.instantiate::<Q>(&bad_sign), Err(Error::Precondition(_))));
    let missing = params(&[("a", qi(5))]);
    assert!(matches!(f.instantiate::<Q>(&missing), Err(Error::Invalid(_))));
    let f = find("S40.5").unwrap();
    let b_eq_c = params(&[("a", qi(1)), ("b", qi(2)), ("c", qi(-2)), ("y", qi(0)), ("z", qi(0))]);
    assert!(f.instantiate::<Q>(&b_eq_c).is_err());
}

#[test]
fn irrational_radicals_need_float_mode() {
    let f = find("S4lambda.4").unwrap();
    let p = params(&[("a", qi(2)), ("b", qi(1)), ("eps", qi(1))]);
    assert!(matches!(f.instantiate::<Q>(&p), Err(Error::Irrational(_))));
    let a = analyze(&f.instantiate::<f64>(&p).unwrap()).unwrap();
    let lam = a.einstein.unwrap();
    assert!((lam + 4.0).abs() < 1e-9, "{lam}");
}

#[test]
fn every_conditioned_komrakov_family_has_a_flipping_boundary() {
    let conditioned = [
        "komrakov.1.1^2:1", "komrakov.1.1^2:2", "komrakov.1.1^2:5", "komrakov.1.4^1:2", "komrakov.1.4^1:9",
        "komrakov.1.4^1:10", "komrakov.1.4^1:11", "komrakov.1.4^1:12", "komrakov.1.4^1:13", "komrakov.1.4^1:14",
        "komrakov.1.4^1:15-17", "komrakov.1.4^1:18-20", "komrakov.2.5^2:2", "komrakov.2.5^2:3",
    ];
    for id in conditioned {
        let fam = find(id).unwrap();
        assert!(fam.samples.iter().any(|s| s.role == Role::Boundary), "{id}");
        let r = verify_family::<Q>(fam);
        for inst in r.instances.iter().filter(|i| i.role == Role::Boundary) {
            assert_eq!(inst.status, Status::Pass, "{id}: {:?}", inst.checks);
        }
    }
}

#[test]
fn first_ricci_isotropic_form_at_a_equal_b_is_the_fourth() {
    // ab+½ = a²+½ = (2a²+1)/2 and (b+x) = (a+x): the brackets coincide
    for (a, x, y, z, eps) in [(q(1, 4), qi(0), qi(0), qi(0), 1), (q(-7, 12), qi(1), qi(2), qi(-1), -1)] {
        let one = params(&[("a", a.clone()), ("b", a.clone()), ("x", x.clone()), ("y", y.clone()), ("z", z.clone()), ("eps", qi(eps))]);
        let four = params(&[("a", a), ("x", x), ("y", y), ("z", z), ("eps", qi(eps))]);
        assert!(find("S40.1").unwrap().instantiate::<Q>(&one).is_err());
        let Subject::Lie(g1) = find("S40.1").unwrap().instantiate_unchecked::<Q>(&one).unwrap() else { panic!() };
        let Subject::Lie(g4) = find("S40.4").unwrap().instantiate::<Q>(&four).unwrap() else { panic!() };
        assert_eq!(g1.constants(), g4.constants());
    }
}

#[test]
fn shipped_fixtures_match_catalog() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut n = 0;
    for fam in catalog().iter().filter(|f| !f.is_metadata()) {
        let sample = fam.samples.iter().find(|s| s.role == Role::Sample).unwrap();
        let want = Document::from_subject(&fam.instantiate::<Q>(&sample.params).unwrap());
        let path = dir.join(fixture_file_name(&fam.id));
        let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(Document::parse(&text).unwrap(), want, "{}", fam.id);
        n += 1;
    }
    assert_eq!(n, catalog().iter().filter(|f| !f.is_metadata()).count());
}

#[test]
fn fixture_statement_is_attached() {
    let fam = find("S4lambda.4").unwrap();
    let p = params(&[("a", qi(5)), ("b", qi(3)), ("eps", qi(1))]);
    let subject = fam.instantiate::<Q>(&p).unwrap();
    let rep = analyze(&subject).unwrap().report(&subject, Some(fam.statement.to_string()));
    let lines = rep.summary_lines().join("\n");
    assert!(lines.contains("Einstein λ=-25"), "{lines}");
    assert!(lines.contains("semi-symmetric"));
    assert!(lines.contains("dim h(K) = 2"));
    assert!(lines.contains("Petrov I"));
    assert!(lines.contains("claim: [e1,e2]"));
}
