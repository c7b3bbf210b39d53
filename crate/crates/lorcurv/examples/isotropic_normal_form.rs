//! Normal form `K(e,h) = A e∧g`, `K(f,h) = B f∧g` of Ricci-isotropic
//! semi-symmetric algebras, recovered from their brackets.

use lorcurv::catalog::{find, Role};
use lorcurv::petrov::{change_basis, isotropic_model};
use lorcurv::report::analyze;
use lorcurv::Q;

fn main() {
    for id in ["S40.1", "S40.2", "S40.3", "S40.4", "S40.5"] {
        let fam = find(id).unwrap();
        for s in fam.samples.iter().filter(|s| s.role == Role::Sample) {
            let subject = fam.instantiate::<Q>(&s.params).unwrap();
            let a = analyze(&subject).unwrap();
            let nf = a.normal_form.as_ref().unwrap();
            let p: Vec<String> = s.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let rebuilt = match (&nf.basis, nf.a.exact(), nf.b.exact()) {
                (Some(basis), Some(x), Some(y)) => {
                    let k = change_basis(&a.curvature, basis).unwrap();
                    if k == isotropic_model(&x.re, &y.re) { "model reproduced" } else { "MODEL DIFFERS" }
                }
                _ => "no rational frame",
            };
            println!("{id} ({}): A={} B={} A+B={} ({rebuilt})", p.join(", "), nf.a, nf.b, a.normal_form_sum().unwrap());
        }
    }
}
