//! Einstein semi-symmetric four-dimensional algebras: Ricci operator,
//! curvature algebra, covariant derivatives and Petrov type.
//!
//! `cargo run --example einstein_products -- [a b]` (defaults 5 3, needs a²+b² square)

use lorcurv::catalog::{find, params};
use lorcurv::report::analyze;
use lorcurv::scalar::parse_q;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let a = args.first().and_then(|s| parse_q(s)).unwrap_or_else(|| parse_q("5").unwrap());
    let b = args.get(1).and_then(|s| parse_q(s)).unwrap_or_else(|| parse_q("3").unwrap());
    let one = parse_q("1").unwrap();
    for id in ["S4lambda.3", "S4lambda.4"] {
        let fam = find(id).unwrap();
        let p = params(&[("a", a.clone()), ("b", b.clone()), ("eps", one.clone())]);
        let subject = match fam.instantiate::<lorcurv::Q>(&p) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("{id}: {e}");
                continue;
            }
        };
        let report = analyze(&subject).unwrap().report(&subject, Some(fam.statement.to_string()));
        for line in report.summary_lines() {
            println!("{line}");
        }
    }
}
