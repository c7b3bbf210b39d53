//! Four-dimensional Lorentzian curvature: Hodge star on Λ²V, the total
//! curvature operator, Petrov types and the Ricci-isotropic normal form.
//!
//! Λ²V uses the basis `e0∧e1, e0∧e2, e0∧e3, e1∧e2, e1∧e3, e2∧e3`. A skew
//! endomorphism `A` has bivector coordinates `c_ij = (A G⁻¹)[i][j]`, so that
//! `A = Σ c_ij e_i∧e_j`.

use serde::Serialize;

use crate::curvature::CurvatureTensor;
use crate::error::{Error, Result};
use crate::matrix::{unit, vadd, vscale, Mat, SpanBuilder, Vector};
use crate::poly::{real_poly_roots, roots, Poly, Root, RootMult};
use crate::pseudo::{wedge, Endo, InnerProduct};
use crate::scalar::{Cplx, Field, Scalar};

pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// The `J`-adapted basis `(e∧f, e∧g, e∧h, J(e∧f), J(e∧g), J(e∧h))` for an
/// oriented orthonormal basis with `<h,h> = -1`, i.e.
/// `(e∧f, e∧g, e∧h, -g∧h, f∧h, f∧g)`: entry `i` gives source index and sign.
pub const PETROV_ORDER: [(usize, i64); 6] = [(0, 1), (1, 1), (2, 1), (5, -1), (4, 1), (3, 1)];

fn check4<S: Scalar>(ip: &InnerProduct<S>) -> Result<()> {
    if ip.dim() != 4 {
        return Err(Error::Dimension(format!("bivector machinery needs dimension 4, got {}", ip.dim())));
    }
    if !ip.is_lorentzian() {
        return Err(Error::Precondition("inner product is not Lorentzian".into()));
    }
    Ok(())
}

pub fn bivector_coords<S: Scalar>(a: &Endo<S>, ip: &InnerProduct<S>) -> Vector<S> {
    let c = a.mul(ip.gram_inv());
    PAIRS.iter().map(|&(i, j)| c[(i, j)].clone()).collect()
}

pub fn bivector_endo<S: Scalar>(c: &[S], ip: &InnerProduct<S>) -> Endo<S> {
    let n = ip.dim();
    PAIRS.iter().zip(c).filter(|(_, x)| !x.is_zero()).fold(Mat::zeros(n, n), |acc, (&(i, j), x)| {
        acc.add(&wedge(&unit(n, i), &unit(n, j), ip).unwrap().scale(x))
    })
}

/// Induced product `<u∧v, w∧t> = <u,w><v,t> - <u,t><v,w>` on the basis.
pub fn bivector_gram<S: Scalar>(ip: &InnerProduct<S>) -> Mat<S> {
    let g = ip.gram();
    Mat::from_fn(6, 6, |a, b| {
        let ((u, v), (w, t)) = (PAIRS[a], PAIRS[b]);
        g[(u, w)].clone() * g[(v, t)].clone() - g[(u, t)].clone() * g[(v, w)].clone()
    })
}

/// `α∧β = (αᵀ C β) e0∧e1∧e2∧e3`.
pub fn wedge_pairing<S: Scalar>() -> Mat<S> {
    let mut c = Mat::zeros(6, 6);
    for (a, b, s) in [(0, 5, 1), (1, 4, -1), (2, 3, 1)] {
        c[(a, b)] = S::from_i64(s);
        c[(b, a)] = S::from_i64(s);
    }
    c
}

/// `P⁻¹ C`, the Hodge star up to the positive factor `sqrt(-det G)`;
/// enough for commutation tests.
fn hodge_direction<S: Scalar>(ip: &InnerProduct<S>) -> Mat<S> {
    bivector_gram(ip).inverse().expect("induced product is nondegenerate").mul(&wedge_pairing())
}

/// Hodge star defined by `α∧β = <Jα, β> ω` with `ω = σ e0∧e1∧e2∧e3 / sqrt(-det G)`,
/// so `<ω, ω> = -1`. Exact mode needs `-det G` to be a rational square.
pub fn hodge_star<S: Scalar>(ip: &InnerProduct<S>, orientation: i32) -> Result<Mat<S>> {
    check4(ip)?;
    let minus_det = -ip.gram().det();
    let root = minus_det
        .sqrt()
        .ok_or_else(|| Error::Irrational(format!("sqrt(-det G) with -det G = {minus_det}")))?;
    let sigma = if orientation < 0 { -S::one() } else { S::one() };
    Ok(hodge_direction(ip).scale(&(root * sigma)))
}

/// `K̃`: column `(ij)` holds the bivector coordinates of `K(e_i, e_j)`.
pub fn total_operator<S: Scalar>(k: &CurvatureTensor<S>) -> Result<Mat<S>> {
    check4(k.ip())?;
    let cols: Vec<Vector<S>> = PAIRS.iter().map(|&(i, j)| bivector_coords(k.op(i, j), k.ip())).collect();
    Ok(Mat::from_cols(&cols))
}

/// Matrix in the [`PETROV_ORDER`] basis; for Einstein tensors it has the
/// shape `[[A, -B], [B, A]]` with `A + iB` the complex form.
pub fn to_petrov_order<S: Scalar>(m: &Mat<S>) -> Mat<S> {
    let p = Mat::from_fn(6, 6, |r, c| {
        let (src, s) = PETROV_ORDER[c];
        if r == src {
            S::from_i64(s)
        } else {
            S::zero()
        }
    });
    // columns of p are the new basis vectors in old coordinates
    p.inverse().unwrap().mul(m).mul(&p)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EinsteinCheck {
    pub by_ricci: bool,
    pub by_hodge: bool,
}

/// Both characterizations: `Ric = (tr Ric / 4) Id` and `K̃ J = J K̃`.
pub fn einstein_check<S: Scalar>(k: &CurvatureTensor<S>) -> Result<EinsteinCheck> {
    check4(k.ip())?;
    let ric = k.ricci();
    let lam = ric.trace() / S::from_i64(4);
    let by_ricci = ric.approx_eq(&Mat::identity(4).scale(&lam));
    let kt = total_operator(k)?;
    let j = hodge_direction(k.ip());
    let by_hodge = kt.mul(&j).approx_eq(&j.mul(&kt));
    Ok(EinsteinCheck { by_ricci, by_hodge })
}

/// Einstein test; disagreement between the two characterizations is an error.
pub fn is_einstein<S: Scalar>(k: &CurvatureTensor<S>) -> Result<bool> {
    let c = einstein_check(k)?;
    if c.by_ricci != c.by_hodge {
        return Err(Error::Inconsistent(format!(
            "Einstein tests disagree (Ricci: {}, Hodge: {})",
            c.by_ricci, c.by_hodge
        )));
    }
    Ok(c.by_ricci)
}

/// `K̃` as a complex 3×3 matrix over a complex basis `{b1, b2, b3}` of
/// `(Λ²V, J)`; the first three basis bivectors are used when independent.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexForm<S> {
    pub matrix: Mat<Cplx<S>>,
    /// Indices into [`PAIRS`] of the complex basis.
    pub basis: [usize; 3],
}

pub fn complex_form<S: Scalar>(k: &CurvatureTensor<S>) -> Result<ComplexForm<S>> {
    if !is_einstein(k)? {
        return Err(Error::Precondition("complex form requested for a non-Einstein tensor".into()));
    }
    let kt = total_operator(k)?;
    let j = hodge_star(k.ip(), 1)?;
    let triples = (0..6).flat_map(|a| (a + 1..6).flat_map(move |b| (b + 1..6).map(move |c| [a, b, c])));
    for t in triples {
        let mut cols: Vec<Vector<S>> = t.iter().map(|&i| unit(6, i)).collect();
        for &i in &t {
            cols.push(j.col(i));
        }
        let b = Mat::from_cols(&cols);
        let Some(binv) = b.inverse() else { continue };
        let r = binv.mul(&kt).mul(&b);
        let m = Mat::from_fn(3, 3, |p, q| Cplx::new(r[(p, q)].clone(), r[(p + 3, q)].clone()));
        return Ok(ComplexForm { matrix: m, basis: t });
    }
    Err(Error::Inconsistent("no complex basis among the basis bivectors".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PetrovTag {
    I,
    II,
    III,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PetrovType<S> {
    pub tag: PetrovTag,
    pub eigen: Vec<RootMult<S>>,
}

/// Jordan type of a complex 3×3 matrix from its characteristic polynomial
/// and the rank of `M - zI` at repeated roots.
pub fn jordan_type3<S: Scalar>(m: &Mat<Cplx<S>>) -> Result<PetrovType<S>> {
    let eigen = roots::<S>(&m.charpoly())?;
    let mut tag = PetrovTag::I;
    for r in &eigen {
        if r.mult < 2 {
            continue;
        }
        let z = match &r.root {
            Root::Exact(z) => z.clone(),
            Root::Approx(..) => return Err(Error::Ambiguous("repeated eigenvalue not representable".into())),
        };
        let shifted = m.sub(&Mat::identity(3).scale(&z));
        let rank = if S::EXACT { shifted.rank() } else { loose_rank(&shifted, m.max_magnitude()) };
        tag = match (r.mult, rank) {
            (2, 1) | (3, 0) => PetrovTag::I,
            (2, 2) | (3, 1) => PetrovTag::II,
            (3, 2) => PetrovTag::III,
            (mult, rank) => {
                return Err(Error::Inconsistent(format!("multiplicity {mult} with rank {rank}")));
            }
        };
    }
    Ok(PetrovType { tag, eigen })
}

/// Full-pivot elimination with a `cbrt(tau)` threshold: a repeated root is
/// only known to about the square root of the working precision, so the
/// usual relative tolerance would see spurious rank.
fn loose_rank<T: Field>(m: &Mat<T>, scale: f64) -> usize {
    let thresh = crate::scalar::tolerance().cbrt() * scale.max(1.0);
    let mut a: Vec<Vec<(f64, f64)>> = m.to_rows().iter().map(|r| r.iter().map(|x| x.to_c64()).collect()).collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mag = |z: (f64, f64)| z.0.hypot(z.1);
    let mut rank = 0;
    let mut used_r = vec![false; rows];
    let mut used_c = vec![false; cols];
    loop {
        let mut best = (0, 0, 0.0);
        for i in (0..rows).filter(|&i| !used_r[i]) {
            for j in (0..cols).filter(|&j| !used_c[j]) {
                if mag(a[i][j]) > best.2 {
                    best = (i, j, mag(a[i][j]));
                }
            }
        }
        if best.2 <= thresh {
            return rank;
        }
        let (p, q, _) = best;
        used_r[p] = true;
        used_c[q] = true;
        rank += 1;
        let d = a[p][q];
        let dn = d.0 * d.0 + d.1 * d.1;
        for i in (0..rows).filter(|&i| !used_r[i]) {
            let x = a[i][q];
            // f = x / d
            let f = ((x.0 * d.0 + x.1 * d.1) / dn, (x.1 * d.0 - x.0 * d.1) / dn);
            for j in 0..cols {
                let y = a[p][j];
                a[i][j].0 -= f.0 * y.0 - f.1 * y.1;
                a[i][j].1 -= f.0 * y.1 + f.1 * y.0;
            }
        }
    }
}

pub fn petrov_type<S: Scalar>(k: &CurvatureTensor<S>) -> Result<PetrovType<S>> {
    jordan_type3(&complex_form(k)?.matrix)
}

/// Petrov type without the complex eigenvalues. A complex Jordan block of
/// size `k` of `K̃` is a real Jordan block of size `k` (twice), so the largest
/// multiplicity in the real minimal polynomial decides; no square root of
/// `-det G` is needed.
pub fn petrov_tag<S: Scalar>(k: &CurvatureTensor<S>) -> Result<PetrovTag> {
    match petrov_type(k) {
        Ok(p) => Ok(p.tag),
        Err(Error::Irrational(_)) => {
            let m = crate::pseudo::minimal_polynomial(&total_operator(k)?);
            let block = if S::EXACT {
                m.squarefree_factors().iter().map(|(_, k)| *k).max().unwrap_or(1)
            } else {
                real_poly_roots(&m)?.iter().map(|r| r.mult).max().unwrap_or(1)
            };
            match block {
                1 => Ok(PetrovTag::I),
                2 => Ok(PetrovTag::II),
                3 => Ok(PetrovTag::III),
                b => Err(Error::Inconsistent(format!("Jordan block of size {b} in the total operator"))),
            }
        }
        Err(e) => Err(e),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EinsteinBranch {
    /// `dim h(K) = 6`, `K(u,v) = -(λ/3) u∧v`.
    ConstantCurvature6,
    /// `dim h(K) = 2`, `λ ≠ 0`, type I with eigenvalues `{-λ, 0, 0}`.
    TypeI2,
    /// `dim h(K) = 2`, `λ = 0`, `K̃² = 0`, type II.
    TypeII2,
}

pub fn classify_einstein_semisym<S: Scalar>(k: &CurvatureTensor<S>) -> Result<EinsteinBranch> {
    if !is_einstein(k)? {
        return Err(Error::Precondition("tensor is not Einstein".into()));
    }
    if !k.is_semi_symmetric() {
        return Err(Error::Precondition("tensor is not semi-symmetric".into()));
    }
    if k.is_zero() {
        return Err(Error::Precondition("tensor vanishes".into()));
    }
    let lam = k.ricci().trace() / S::from_i64(4);
    let h = k.primitive_holonomy();
    match h.len() {
        6 => {
            let expected = -lam.clone() / S::from_i64(3);
            match k.constant_curvature_coefficient() {
                Some(c) if (c.clone() - expected.clone()).negligible(lam.magnitude()) => {
                    Ok(EinsteinBranch::ConstantCurvature6)
                }
                c => Err(Error::Inconsistent(format!("dim h(K) = 6 but coefficient {c:?} != {expected}"))),
            }
        }
        2 => {
            if !h[0].commutator(&h[1]).is_zero_at(k.max_magnitude().powi(2)) {
                return Err(Error::Inconsistent("two-dimensional h(K) is not abelian".into()));
            }
            let tag = petrov_tag(k)?;
            if lam.negligible(k.max_magnitude()) {
                let kt = total_operator(k)?;
                if !kt.mul(&kt).is_zero_at(kt.max_magnitude().powi(2)) || tag != PetrovTag::II {
                    return Err(Error::Inconsistent("λ = 0 branch without K̃² = 0 and type II".into()));
                }
                Ok(EinsteinBranch::TypeII2)
            } else {
                if tag != PetrovTag::I {
                    return Err(Error::Inconsistent(format!("λ ≠ 0 branch has type {tag:?}")));
                }
                Ok(EinsteinBranch::TypeI2)
            }
        }
        d => Err(Error::Inconsistent(format!("Einstein semi-symmetric tensor with dim h(K) = {d}"))),
    }
}

/// Ricci-isotropic normal form `K(e,h) = A e∧g`, `K(f,h) = B f∧g` with
/// `<e,e> = <f,f> = <g,h> = 1`, `Ric(h) = σ g` and `A + B = -σ`.
#[derive(Clone, Debug, PartialEq)]
pub struct IsotropicNormalForm<S> {
    pub a: Root<S>,
    pub b: Root<S>,
    /// Characteristic polynomial of `x ↦ K(x,h)h` on `span{e, f}`.
    pub quadratic: Poly<S>,
    /// Sign `σ` of `<Ric x, x>`; the classical statement takes `σ = 1`.
    pub ricci_sign: i32,
    /// `(e, f, g, h)` when all needed square roots are rational.
    pub basis: Option<[Vector<S>; 4]>,
    pub note: Option<String>,
}

fn is_isotropic_ricci<S: Scalar>(k: &CurvatureTensor<S>) -> bool {
    let ric = k.ricci();
    !ric.is_zero() && ric.mul(&ric).is_zero_at(ric.max_magnitude().powi(2))
}

pub fn isotropic_normal_form<S: Scalar>(k: &CurvatureTensor<S>) -> Result<IsotropicNormalForm<S>> {
    let ip = k.ip();
    check4(ip)?;
    if !is_isotropic_ricci(k) {
        return Err(Error::Precondition("Ricci operator is not isotropic (Ric != 0, Ric² = 0)".into()));
    }
    if !k.is_semi_symmetric() {
        return Err(Error::Precondition("tensor is not semi-symmetric".into()));
    }
    let ric = k.ricci();
    let scale = ric.max_magnitude();
    let mut candidates: Vec<Vector<S>> = (0..4).map(|i| unit(4, i)).collect();
    for i in 0..4 {
        for j in i + 1..4 {
            candidates.push(vadd(&unit(4, i), &unit(4, j)));
        }
    }
    let (h0, q) = candidates
        .into_iter()
        .map(|h| {
            let q = ip.dot(&ric.mul_vec(&h), &h);
            (h, q)
        })
        .find(|(_, q)| !q.negligible(scale))
        .ok_or_else(|| Error::Inconsistent("no vector with <Ric x, x> != 0".into()))?;
    let sign = q.sign(scale);
    let absq = q.abs();
    let g0 = vscale(&ric.mul_vec(&h0), &S::from_i64(sign as i64));
    let shift = ip.dot(&h0, &h0) / (S::from_i64(2) * absq.clone());
    let h1 = crate::matrix::vsub(&h0, &vscale(&g0, &shift));
    // W = {g0, h1}^⊥ is a positive definite plane
    let w = Mat::from_rows(vec![ip.lower(&g0), ip.lower(&h1)]).nullspace();
    if w.len() != 2 {
        return Err(Error::Inconsistent("orthogonal complement of the null pair is not a plane".into()));
    }
    // T(x) = K(x,h1)h1 / |q| restricted to W, in the basis w
    let kh = |x: &[S]| vscale(&k.apply(x, &h1).mul_vec(&h1), &(S::one() / absq.clone()));
    let wm = Mat::from_cols(&w);
    let coords = |v: &Vector<S>| -> Result<Vector<S>> {
        wm.solve(v).ok_or_else(|| Error::Inconsistent("K(x,h)h leaves the spacelike plane".into()))
    };
    let t = Mat::from_cols(&[coords(&kh(&w[0]))?, coords(&kh(&w[1]))?]);
    let quadratic = t.charpoly();
    let rs = real_poly_roots(&quadratic)?;
    let mut vals: Vec<Root<S>> = Vec::new();
    for r in &rs {
        for _ in 0..r.mult {
            vals.push(r.root.clone());
        }
    }
    if vals.len() != 2 {
        return Err(Error::Inconsistent("x ↦ K(x,h)h has no two eigenvalues".into()));
    }
    // larger first for determinism when both are exact reals
    vals.sort_by(|x, y| y.c64().0.total_cmp(&x.c64().0));
    let (a, b) = (vals[0].clone(), vals[1].clone());

    let mut note = None;
    let basis = (|| {
        let s = absq.sqrt()?;
        let g = vscale(&g0, &(S::one() / s.clone()));
        let h = vscale(&h1, &(S::one() / s));
        let (za, zb) = (a.exact()?.re.clone(), b.exact()?.re.clone());
        let gram_w = Mat::from_fn(2, 2, |i, j| ip.dot(&w[i], &w[j]));
        let unitize = |c: Vector<S>| -> Option<Vector<S>> {
            let v = wm.mul_vec(&c);
            let n2 = ip.dot(&v, &v);
            Some(vscale(&v, &(S::one() / n2.sqrt()?)))
        };
        let (e, f) = if (za.clone() - zb.clone()).is_zero() {
            // T = A Id: look for a rational orthonormal pair in W
            let norm = |c: &[S]| dot2(c, &gram_w, c);
            let c0 = (0..=12i64)
                .flat_map(|b| (-12..=12i64).map(move |a| [a, b]))
                .filter(|&[a, b]| a != 0 || b != 0)
                .map(|[a, b]| vec![S::from_i64(a), S::from_i64(b)])
                .find(|c| norm(c).sqrt().is_some())?;
            let gc = gram_w.mul_vec(&c0);
            let c1 = vec![-gc[1].clone(), gc[0].clone()];
            (unitize(c0)?, unitize(c1)?)
        } else {
            let ev = |z: &S| t.sub(&Mat::identity(2).scale(z)).nullspace_at(t.max_magnitude()).into_iter().next();
            (unitize(ev(&za)?)?, unitize(ev(&zb)?)?)
        };
        Some([e, f, g, h])
    })();
    if basis.is_none() {
        note = Some("normal-form basis needs irrational square roots; invariants only".into());
    }
    Ok(IsotropicNormalForm { a, b, quadratic, ricci_sign: sign, basis, note })
}

fn dot2<S: Scalar>(a: &[S], g: &Mat<S>, b: &[S]) -> S {
    crate::matrix::dot(a, &g.mul_vec(b))
}

/// Gram matrix of the normal-form basis `(e, f, g, h)`.
pub fn null_frame_gram<S: Scalar>() -> Mat<S> {
    let mut g = Mat::zeros(4, 4);
    g[(0, 0)] = S::one();
    g[(1, 1)] = S::one();
    g[(2, 3)] = S::one();
    g[(3, 2)] = S::one();
    g
}

/// The model tensor `K(e,h) = A e∧g`, `K(f,h) = B f∧g` on the null frame.
pub fn isotropic_model<S: Scalar>(a: &S, b: &S) -> CurvatureTensor<S> {
    let ip = InnerProduct::new(null_frame_gram()).unwrap();
    let e = |i| unit::<S>(4, i);
    CurvatureTensor::from_upper(&ip, |i, j| match (i, j) {
        (0, 3) => wedge(&e(0), &e(2), &ip).unwrap().scale(a),
        (1, 3) => wedge(&e(1), &e(2), &ip).unwrap().scale(b),
        _ => Mat::zeros(4, 4),
    })
}

/// The curvature of `k` re-expressed in a new basis (columns of `p`).
pub fn change_basis<S: Scalar>(k: &CurvatureTensor<S>, basis: &[Vector<S>]) -> Result<CurvatureTensor<S>> {
    let p = Mat::from_cols(basis);
    let pinv = p.inverse().ok_or_else(|| Error::Invalid("basis is not invertible".into()))?;
    let gram = p.transpose().mul(k.ip().gram()).mul(&p);
    let ip = InnerProduct::new(gram)?;
    Ok(CurvatureTensor::from_fn(&ip, |i, j| pinv.mul(&k.apply(&basis[i], &basis[j])).mul(&p)))
}

/// Rank-one test used by the spanning search for complex bases.
pub fn independent<S: Scalar>(vs: &[Vector<S>]) -> bool {
    let mut sp = SpanBuilder::new(vs.first().map_or(0, |v| v.len()));
    vs.iter().all(|v| sp.insert(v))
}
