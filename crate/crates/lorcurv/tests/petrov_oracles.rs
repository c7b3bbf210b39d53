use lorcurv::curvature::CurvatureTensor;
use lorcurv::matrix::unit;
use lorcurv::petrov::*;
use lorcurv::poly::Root;
use lorcurv::pseudo::{wedge, InnerProduct};
use lorcurv::scalar::{q, qi};
use lorcurv::{Cplx, Mat, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ip(d: &[i64]) -> InnerProduct<Q> {
    InnerProduct::diagonal(&d.iter().map(|&x| qi(x)).collect::<Vec<_>>()).unwrap()
}

fn rand_q(rng: &mut ChaCha8Rng) -> Q {
    q(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

/// `G = Pᵀ diag(1,1,1,-1) P` with unimodular integer `P`, so `-det G = 1`.
fn rand_metric(rng: &mut ChaCha8Rng) -> InnerProduct<Q> {
    let mut p = Mat::<Q>::identity(4);
    for _ in 0..6 {
        let (i, j) = (rng.gen_range(0..4), rng.gen_range(0..4));
        if i == j {
            continue;
        }
        let f = qi(rng.gen_range(-2..=2));
        let e = Mat::from_fn(4, 4, |r, c| if r == i && c == j { f.clone() } else if r == c { qi(1) } else { qi(0) });
        p = e.mul(&p);
    }
    let g = p.transpose().mul(ip(&[1, 1, 1, -1]).gram()).mul(&p);
    InnerProduct::new(g).unwrap()
}

/// Sum of Gauss-type tensors `K(x,y) = Sx∧Sy` for self-adjoint `S`.
fn rand_curvature(rng: &mut ChaCha8Rng, ip: &InnerProduct<Q>) -> CurvatureTensor<Q> {
    let mut k = CurvatureTensor::zero(ip);
    for _ in 0..2 {
        let sym = {
            let a = Mat::from_fn(4, 4, |_, _| rand_q(rng));
            a.add(&a.transpose())
        };
        let s = ip.gram_inv().mul(&sym);
        let t = CurvatureTensor::from_fn(ip, |i, j| wedge(&s.col(i), &s.col(j), ip).unwrap());
        k = CurvatureTensor::from_fn(ip, |i, j| k.op(i, j).add(t.op(i, j)));
    }
    k
}

fn rand_einstein(rng: &mut ChaCha8Rng, ip: &InnerProduct<Q>) -> CurvatureTensor<Q> {
    let w = rand_curvature(rng, ip).weyl().unwrap();
    let c = CurvatureTensor::constant(ip, &rand_q(rng));
    CurvatureTensor::from_fn(ip, |i, j| w.op(i, j).add(c.op(i, j)))
}

#[test]
fn hodge_star_on_adapted_basis() {
    // e, f, g, h with <h,h> = -1 and ω = e∧f∧g∧h
    let g = ip(&[1, 1, 1, -1]);
    let j = hodge_star(&g, 1).unwrap();
    let col = |i: usize| j.col(i);
    let b = |i: usize, s: i64| -> Vec<Q> { unit::<Q>(6, i).into_iter().map(|x| x * qi(s)).collect() };
    assert_eq!(col(0), b(5, -1)); // J(e∧f) = -g∧h
    assert_eq!(col(1), b(4, 1)); // J(e∧g) = f∧h
    assert_eq!(col(2), b(3, 1)); // J(e∧h) = f∧g
}

#[test]
fn hodge_star_identities_on_random_metrics() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let g = rand_metric(&mut rng);
        let j = hodge_star(&g, 1).unwrap();
        assert_eq!(j.mul(&j), Mat::identity(6).neg());
        // <Jα, Jβ> = -<α, β>
        let p = bivector_gram(&g);
        assert_eq!(j.transpose().mul(&p).mul(&j), p.neg());
        // [Jα, Jβ] = -[α, β] as skew endomorphisms
        for (a, b) in [(0, 1), (2, 5), (3, 4)] {
            let (al, be) = (unit::<Q>(6, a), unit::<Q>(6, b));
            let ja = bivector_endo(&j.mul_vec(&al), &g);
            let jb = bivector_endo(&j.mul_vec(&be), &g);
            let lhs = ja.commutator(&jb);
            let rhs = bivector_endo(&al, &g).commutator(&bivector_endo(&be, &g)).neg();
            assert_eq!(lhs, rhs);
        }
        assert_eq!(hodge_star(&g, -1).unwrap(), j.neg());
    }
}

#[test]
fn total_operator_pairing_and_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = rand_metric(&mut rng);
    let k = rand_curvature(&mut rng, &g);
    let kt = total_operator(&k).unwrap();
    let p = bivector_gram(&g);
    // self-adjoint for the induced product
    assert_eq!(kt.transpose().mul(&p), p.mul(&kt));
    // <K̃(e_i∧e_j), e_w∧e_t> = <K(e_i,e_j) e_t, e_w>
    for (a, &(i, j)) in PAIRS.iter().enumerate() {
        for (b, &(w, t)) in PAIRS.iter().enumerate() {
            let lhs = dotp(&kt.col(a), &p.col(b));
            let rhs = g.dot(&k.op(i, j).col(t), &unit(4, w));
            assert_eq!(lhs, rhs, "pair {a} {b}");
        }
    }
    // constant curvature gives a multiple of the identity
    let c = CurvatureTensor::constant(&g, &q(-3, 2));
    assert_eq!(total_operator(&c).unwrap(), Mat::identity(6).scale(&q(-3, 2)));
}

fn dotp(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(qi(0), |acc, (x, y)| acc + x.clone() * y.clone())
}

#[test]
fn einstein_block_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let g = ip(&[1, 1, 1, -1]);
    for _ in 0..10 {
        let k = rand_einstein(&mut rng, &g);
        assert!(is_einstein(&k).unwrap());
        let kt = total_operator(&k).unwrap();
        let e = |i: usize, j: usize| kt[(i - 1, j - 1)].clone();
        assert_eq!(e(1, 1), e(6, 6));
        assert_eq!(e(2, 2), e(5, 5));
        assert_eq!(e(3, 3), e(4, 4));
        assert_eq!(e(3, 5), -e(2, 4));
        assert_eq!(e(3, 6), e(1, 4));
        assert_eq!(e(2, 6), -e(1, 5));
        assert_eq!(e(5, 6), -e(1, 2));
        assert_eq!(e(4, 6), e(1, 3));
        assert_eq!(e(4, 5), -e(2, 3));
        assert_eq!(e(1, 6), e(2, 5) + e(3, 4));
        // the reordered matrix has the complex block shape [[A, -B], [B, A]]
        let m = to_petrov_order(&kt);
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(m[(r, c)], m[(r + 3, c + 3)]);
                assert_eq!(m[(r, c + 3)], -m[(r + 3, c)].clone());
            }
        }
        let lam = k.ricci().trace() / qi(4);
        assert_eq!(e(1, 1) + e(2, 2) + e(3, 3), -lam.clone());
        // complex trace is -λ as well
        let cf = complex_form(&k).unwrap();
        assert_eq!(cf.matrix.trace(), Cplx::real(-lam));
        assert_eq!(petrov_type(&k).unwrap().tag, PetrovTag::I);
    }
    // a generic tensor fails both tests together
    let k = rand_curvature(&mut rng, &g);
    let c = einstein_check(&k).unwrap();
    assert!(!c.by_ricci && !c.by_hodge);
}

#[test]
fn jordan_types_of_complex_matrices() {
    let z = |a: i64, b: i64| Cplx::new(qi(a), qi(b));
    let m = |rows: [[Cplx<Q>; 3]; 3]| Mat::from_rows(rows.iter().map(|r| r.to_vec()).collect());
    let o = || z(0, 0);
    let diag = m([[z(1, 1), o(), o()], [o(), z(1, 1), o()], [o(), o(), z(-2, -2)]]);
    assert_eq!(jordan_type3(&diag).unwrap().tag, PetrovTag::I);
    let two = m([[z(1, 0), z(1, 0), o()], [o(), z(1, 0), o()], [o(), o(), z(-2, 0)]]);
    assert_eq!(jordan_type3(&two).unwrap().tag, PetrovTag::II);
    let three = m([[o(), z(0, 1), o()], [o(), o(), z(3, 0)], [o(), o(), o()]]);
    assert_eq!(jordan_type3(&three).unwrap().tag, PetrovTag::III);
    let nil2 = m([[o(), z(1, 0), o()], [o(), o(), o()], [o(), o(), o()]]);
    assert_eq!(jordan_type3(&nil2).unwrap().tag, PetrovTag::II);
    // the same matrices in float mode
    let f = |a: &Mat<Cplx<Q>>| a.map(|x| Cplx::new(lorcurv::Scalar::to_f64(&x.re), lorcurv::Scalar::to_f64(&x.im)));
    assert_eq!(jordan_type3(&f(&diag)).unwrap().tag, PetrovTag::I);
    assert_eq!(jordan_type3(&f(&two)).unwrap().tag, PetrovTag::II);
    assert_eq!(jordan_type3(&f(&three)).unwrap().tag, PetrovTag::III);
}

/// Orthonormal basis with `<e,e> = -1`.
fn remark_case1(lam: Q) -> CurvatureTensor<Q> {
    let g = ip(&[-1, 1, 1, 1]);
    let e = |i| unit::<Q>(4, i);
    CurvatureTensor::from_upper(&g, |i, j| match (i, j) {
        (0, 1) => wedge(&e(0), &e(1), &g).unwrap().scale(&-lam.clone()),
        (2, 3) => wedge(&e(2), &e(3), &g).unwrap().scale(&-lam.clone()),
        _ => Mat::zeros(4, 4),
    })
}

fn remark_case2() -> CurvatureTensor<Q> {
    let g = ip(&[-1, 1, 1, 1]);
    let e = |i| unit::<Q>(4, i);
    let w = |a, b| wedge(&e(a), &e(b), &g).unwrap();
    let x = w(0, 2).add(&w(1, 2));
    let y = w(0, 3).add(&w(1, 3));
    CurvatureTensor::from_upper(&g, |i, j| match (i, j) {
        (0, 2) => x.clone(),
        (1, 2) => x.neg(),
        (1, 3) => y.clone(),
        (0, 3) => y.neg(),
        _ => Mat::zeros(4, 4),
    })
}

#[test]
fn einstein_semisymmetric_branches() {
    let g = ip(&[1, 1, -1, 1]);
    let k = CurvatureTensor::constant(&g, &q(2, 3));
    assert_eq!(classify_einstein_semisym(&k).unwrap(), EinsteinBranch::ConstantCurvature6);
    let pt = petrov_type(&k).unwrap();
    assert_eq!(pt.tag, PetrovTag::I);
    assert_eq!(pt.eigen.len(), 1);
    assert_eq!(pt.eigen[0].mult, 3);

    for lam in [qi(1), qi(-2), q(5, 3)] {
        let k = remark_case1(lam.clone());
        assert!(k.validate().is_empty());
        assert_eq!(k.ricci(), Mat::identity(4).scale(&lam));
        assert_eq!(classify_einstein_semisym(&k).unwrap(), EinsteinBranch::TypeI2);
        let pt = petrov_type(&k).unwrap();
        let mut got: Vec<(Root<Q>, usize)> = pt.eigen.iter().map(|r| (r.root.clone(), r.mult)).collect();
        got.sort_by_key(|(_, m)| *m);
        assert_eq!(got, vec![(Root::Exact(Cplx::real(-lam.clone())), 1), (Root::Exact(Cplx::real(qi(0))), 2)]);
    }

    let k = remark_case2();
    assert!(k.validate().is_empty());
    assert!(k.ricci().is_zero());
    assert_eq!(classify_einstein_semisym(&k).unwrap(), EinsteinBranch::TypeII2);
    let kt = total_operator(&k).unwrap();
    assert!(kt.mul(&kt).is_zero());
}

#[test]
fn isotropic_normal_form_round_trip() {
    for (a, b) in [(q(1, 2), q(-3, 2)), (qi(-1), qi(0)), (q(-1, 2), q(-1, 2)), (qi(2), qi(-3))] {
        let model = isotropic_model(&a, &b);
        assert!(model.validate().is_empty());
        assert!(model.is_semi_symmetric());
        let ric = model.ricci();
        // Ric(h) = g with <Ric x, x> >= 0
        assert_eq!(ric.col(3), unit(4, 2));
        // scramble with a unimodular change of basis
        let p: Vec<Vec<Q>> = vec![
            vec![qi(1), qi(1), qi(0), qi(0)],
            vec![qi(0), qi(1), qi(0), qi(2)],
            vec![qi(1), qi(0), qi(1), qi(0)],
            vec![qi(0), qi(0), qi(1), qi(1)],
        ];
        let k = change_basis(&model, &p).unwrap();
        let nf = isotropic_normal_form(&k).unwrap();
        assert_eq!(nf.ricci_sign, 1);
        let mut got = [nf.a.exact().unwrap().re.clone(), nf.b.exact().unwrap().re.clone()];
        got.sort();
        let mut want = [a.clone(), b.clone()];
        want.sort();
        assert_eq!(got, want);
        let sum = got[0].clone() + got[1].clone();
        assert_eq!(sum, qi(-1));
        let basis = nf.basis.unwrap_or_else(|| panic!("rational basis for {a} {b}: {:?}", nf.note));
        let back = change_basis(&k, &basis).unwrap();
        assert_eq!(back.ip().gram(), &null_frame_gram());
        let ae = nf.a.exact().unwrap().re.clone();
        let be = nf.b.exact().unwrap().re.clone();
        assert_eq!(back, isotropic_model(&ae, &be));
    }
}

#[test]
fn isotropic_normal_form_with_negative_ricci_sign() {
    let (a, b) = (q(1, 3), q(2, 3));
    let model = isotropic_model(&a, &b);
    let nf = isotropic_normal_form(&model).unwrap();
    assert_eq!(nf.ricci_sign, -1);
    let s = nf.a.exact().unwrap().re.clone() + nf.b.exact().unwrap().re.clone();
    assert_eq!(s, qi(1));
}

#[test]
fn isotropic_normal_form_rejects_non_isotropic() {
    let k = remark_case1(qi(1));
    assert!(matches!(isotropic_normal_form(&k), Err(lorcurv::Error::Precondition(_))));
}

