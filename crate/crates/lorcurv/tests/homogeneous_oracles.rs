use lorcurv::catalog::{find, params, Role};
use lorcurv::homogeneous::HomogeneousPair;
use lorcurv::report::{analyze, Subject};
use lorcurv::scalar::{q, qi};
use lorcurv::{Mat, Q};

/// Lie algebras re-run through the pair pipeline with trivial isotropy.
const CROSS_FAMILIES: [&str; 12] = [
    "plane.euclid",
    "plane.null",
    "3d-cc.2",
    "3d-cc.4",
    "S30.i",
    "S4lambda.1",
    "S4lambda.3",
    "S40.2",
    "S40.5",
    "S40.h1",
    "S4mulambda",
    "S40-1lambda.2",
];

#[test]
fn trivial_isotropy_reproduces_lie_pipeline() {
    let mut checked = 0;
    for id in CROSS_FAMILIES {
        let fam = find(id).unwrap();
        for s in fam.samples.iter().filter(|s| s.role == Role::Sample) {
            let Subject::Lie(g) = fam.instantiate::<Q>(&s.params).unwrap() else { panic!("{id} is a Lie algebra") };
            let lc = g.levi_civita();
            let k = g.curvature();
            let pair = HomogeneousPair::trivial_isotropy(&g);
            let gram = g.ip().gram().clone();
            let conn = pair.connection(&gram).unwrap();
            for i in 0..g.dim() {
                assert_eq!(&conn.nabla[i], lc.l(i), "{id}: L_{i}");
            }
            let hk = pair.curvature(&gram).unwrap();
            assert_eq!(hk.components(), k.components(), "{id}: K");
            let (ric, ricop) = pair.ricci(&gram).unwrap();
            assert_eq!(ric, k.ricci_form(), "{id}: ricci form");
            assert_eq!(ricop, k.ricci(), "{id}: Ricci operator");
            checked += 1;
        }
    }
    assert!(checked >= 30);
}

fn ricci_of(id: &str, p: &[(&str, Q)]) -> Mat<Q> {
    let subject = find(id).unwrap().instantiate::<Q>(&params(p)).unwrap();
    analyze(&subject).unwrap().ricci
}

fn sparse(n: usize, entries: &[(usize, usize, Q)]) -> Mat<Q> {
    let mut rows = vec![vec![qi(0); n]; n];
    for (i, j, x) in entries {
        rows[*i][*j] = x.clone();
    }
    Mat::from_rows(rows)
}

// Expected operators were computed independently with a symbolic
// implementation of the reductive-pair formulas.

#[test]
fn komrakov_ricci_operators_match_symbolic_oracle() {
    let r = ricci_of("komrakov.1.1^2:5", &[("a", qi(1)), ("b", qi(1)), ("d", qi(0))]);
    assert_eq!(r, sparse(4, &[(1, 3, q(1, 2))]));

    let r = ricci_of(
        "komrakov.1.4^1:9",
        &[("a", qi(1)), ("b", qi(1)), ("c", qi(1)), ("d", qi(0)), ("r", qi(1)), ("p", qi(1))],
    );
    assert_eq!(r, sparse(4, &[(0, 2, q(7, 2))]));

    let r = ricci_of("komrakov.2.5^2:2", &[("a", qi(1)), ("b", qi(1)), ("p", qi(1)), ("r", qi(1)), ("s", qi(1))]);
    assert_eq!(r, sparse(4, &[(0, 2, qi(4))]));
}

#[test]
fn komrakov_metrics_are_invariant_and_lorentzian() {
    for fam in lorcurv::catalog::catalog().iter().filter(|f| !f.is_metadata() && (f.id.starts_with("komrakov.") || f.id.starts_with("table1."))) {
        for s in fam.samples.iter().filter(|s| s.role == Role::Sample) {
            let Subject::Pair { pair, metric } = fam.instantiate::<Q>(&s.params).unwrap() else { panic!() };
            assert!(pair.validate().is_empty(), "{}: Jacobi", fam.id);
            assert!(pair.is_invariant(&metric), "{}: invariance", fam.id);
            let a = analyze(&Subject::Pair { pair, metric }).unwrap();
            assert!(a.lorentzian, "{} {:?}", fam.id, s.params);
        }
    }
}
