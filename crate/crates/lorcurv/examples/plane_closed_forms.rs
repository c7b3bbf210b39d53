//! Levi-Civita product and curvature of the nonabelian plane `[e,f] = c e`
//! under each kind of inner product.

use lorcurv::lie::MetricLieAlgebra;
use lorcurv::pseudo::InnerProduct;
use lorcurv::scalar::qi;
use lorcurv::{Mat, Q};

fn show(m: &Mat<Q>) -> String {
    let rows: Vec<String> = m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", rows.join("; "))
}

fn main() {
    let metrics = [
        ("euclidean", [[1, 0], [0, 1]]),
        ("lorentzian <f,f> < 0", [[1, 0], [0, -1]]),
        ("lorentzian <e,e> < 0", [[-1, 0], [0, 1]]),
        ("null basis", [[0, 1], [1, 0]]),
    ];
    for lam in [1, 2, -3] {
        for (label, gram) in &metrics {
            let ip = InnerProduct::new(Mat::from_rows(gram.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())).unwrap();
            let g = MetricLieAlgebra::from_brackets(ip, &[(0, 1, vec![qi(lam), qi(0)])]).unwrap();
            let lc = g.levi_civita();
            let k = g.curvature();
            println!(
                "[e,f]={lam}e, {label}: L_e={} L_f={} K(e,f)={} Ric={}",
                show(lc.l(0)),
                show(lc.l(1)),
                show(k.op(0, 1)),
                show(&k.ricci())
            );
        }
    }
}
