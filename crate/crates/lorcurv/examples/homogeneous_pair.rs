//! A four-dimensional homogeneous pair with two-dimensional isotropy: its
//! invariant metrics, Nomizu connection, curvature and holonomy.

use lorcurv::catalog::{find, params};
use lorcurv::report::{analyze, Subject};
use lorcurv::scalar::qi;
use lorcurv::Q;

fn main() {
    let fam = find("komrakov.2.5^2:2").unwrap();
    let p = params(&[("a", qi(1)), ("b", qi(1)), ("p", qi(1)), ("r", qi(1)), ("s", qi(1))]);
    let subject = fam.instantiate::<Q>(&p).unwrap();
    let Subject::Pair { pair, metric } = &subject else { unreachable!() };
    println!("invariant symmetric forms on the complement: {}", pair.invariant_metric_space().len());
    println!("chosen metric is invariant: {}", pair.is_invariant(metric));
    let conn = pair.connection(metric).unwrap();
    for (i, l) in conn.nabla.iter().enumerate() {
        println!("Λ(u{}) = {:?}", i + 1, l.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
    }
    let a = analyze(&subject).unwrap();
    for line in a.report(&subject, Some(fam.statement.to_string())).summary_lines() {
        println!("{line}");
    }
}
