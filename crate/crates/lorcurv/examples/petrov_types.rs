//! Petrov types of Einstein curvature tensors in dimension four: constant
//! curvature, a product of two surfaces, and a null Ricci-flat tensor.

use lorcurv::curvature::CurvatureTensor;
use lorcurv::matrix::unit;
use lorcurv::petrov::{classify_einstein_semisym, petrov_type, total_operator};
use lorcurv::pseudo::{wedge, InnerProduct};
use lorcurv::scalar::{q, qi};
use lorcurv::{Mat, Q};

fn describe(name: &str, k: &CurvatureTensor<Q>) {
    let pt = petrov_type(k).unwrap();
    let eig: Vec<String> = pt.eigen.iter().map(|r| format!("{}^{}", r.root, r.mult)).collect();
    let branch = classify_einstein_semisym(k).map(|b| format!("{b:?}")).unwrap_or_else(|e| e.to_string());
    let kt = total_operator(k).unwrap();
    println!("{name}: type {:?} {{{}}}, branch {branch}, K̃² = 0: {}", pt.tag, eig.join(", "), kt.mul(&kt).is_zero());
}

fn main() {
    let g = InnerProduct::diagonal(&[qi(-1), qi(1), qi(1), qi(1)]).unwrap();
    let e = |i| unit::<Q>(4, i);
    let w = |a, b| wedge(&e(a), &e(b), &g).unwrap();

    describe("constant curvature 2/3", &CurvatureTensor::constant(&g, &q(2, 3)));

    // two surfaces of curvature -λ glued orthogonally: Ric = λ Id
    let lam = qi(2);
    let product = CurvatureTensor::from_upper(&g, |i, j| match (i, j) {
        (0, 1) => w(0, 1).scale(&-lam.clone()),
        (2, 3) => w(2, 3).scale(&-lam.clone()),
        _ => Mat::zeros(4, 4),
    });
    describe("product of surfaces, λ = 2", &product);

    let x = w(0, 2).add(&w(1, 2));
    let y = w(0, 3).add(&w(1, 3));
    let null = CurvatureTensor::from_upper(&g, |i, j| match (i, j) {
        (0, 2) => x.clone(),
        (1, 2) => x.neg(),
        (1, 3) => y.clone(),
        (0, 3) => y.neg(),
        _ => Mat::zeros(4, 4),
    });
    describe("null Ricci-flat", &null);
}
