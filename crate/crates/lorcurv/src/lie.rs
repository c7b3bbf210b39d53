//! Metric Lie algebras: Levi-Civita product by Koszul's formula, curvature,
//! covariant derivatives, holonomy and the structural identity suite.

use serde::Serialize;

use crate::curvature::{CurvatureTensor, RicciSplitting, Violation};
use crate::error::{Error, Result};
use crate::matrix::{unit, vis_zero, Mat, SpanBuilder, Vector};
use crate::pseudo::{adjoint, is_skew, Endo, InnerProduct};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct MetricLieAlgebra<S> {
    /// `[e_i, e_j] = Σ_k c[(i*n + j)*n + k] e_k`
    c: Vec<S>,
    ip: InnerProduct<S>,
    pub name: Option<String>,
    pub basis_names: Vec<String>,
    /// Parameter bindings of a sampled family member, for reports.
    pub params: Vec<(String, String)>,
}

impl<S: Scalar> MetricLieAlgebra<S> {
    /// Raw structure constants, unchecked; see [`validate`](Self::validate).
    pub fn from_constants(ip: InnerProduct<S>, c: Vec<S>) -> Result<Self> {
        let n = ip.dim();
        if c.len() != n.pow(3) {
            return Err(Error::Dimension(format!("{} structure constants for dimension {n}", c.len())));
        }
        Ok(MetricLieAlgebra { c, ip, name: None, basis_names: default_names(n), params: Vec::new() })
    }

    /// Brackets given for ordered pairs; the reversed pair is filled by antisymmetry.
    pub fn from_brackets(ip: InnerProduct<S>, brackets: &[(usize, usize, Vector<S>)]) -> Result<Self> {
        let n = ip.dim();
        let mut c = vec![S::zero(); n.pow(3)];
        for (i, j, v) in brackets {
            if *i >= n || *j >= n || v.len() != n {
                return Err(Error::Dimension(format!("bracket [e{i}, e{j}] out of range")));
            }
            for k in 0..n {
                c[(i * n + j) * n + k] = v[k].clone();
                c[(j * n + i) * n + k] = -v[k].clone();
            }
        }
        Self::from_constants(ip, c)
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_params(mut self, params: Vec<(String, String)>) -> Self {
        self.params = params;
        self
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Self {
        self.basis_names = names;
        self
    }

    pub fn dim(&self) -> usize {
        self.ip.dim()
    }

    pub fn ip(&self) -> &InnerProduct<S> {
        &self.ip
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &S {
        let n = self.dim();
        &self.c[(i * n + j) * n + k]
    }

    pub fn constants(&self) -> &[S] {
        &self.c
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector<S> {
        (0..self.dim()).map(|k| self.constant(i, j, k).clone()).collect()
    }

    pub fn bracket(&self, u: &[S], v: &[S]) -> Vector<S> {
        let n = self.dim();
        let mut out = vec![S::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let f = u[i].clone() * v[j].clone();
                for (k, o) in out.iter_mut().enumerate() {
                    *o = o.clone() + f.clone() * self.constant(i, j, k).clone();
                }
            }
        }
        out
    }

    /// `ad_{e_i}`: column `j` is `[e_i, e_j]`.
    pub fn ad(&self, i: usize) -> Endo<S> {
        let n = self.dim();
        Mat::from_fn(n, n, |k, j| self.constant(i, j, k).clone())
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn validate(&self) -> Vec<Violation> {
        let n = self.dim();
        let s = self.c.iter().map(|x| x.magnitude()).fold(1.0, f64::max);
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let sum = self.constant(i, j, k).clone() + self.constant(j, i, k).clone();
                    if !sum.negligible(s) {
                        out.push(Violation { identity: "antisymmetry", indices: vec![i, j, k] });
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (unit(n, i), unit(n, j), unit(n, k));
                    let jac = crate::matrix::vadd(
                        &crate::matrix::vadd(
                            &self.bracket(&a, &self.bracket(&b, &c)),
                            &self.bracket(&b, &self.bracket(&c, &a)),
                        ),
                        &self.bracket(&c, &self.bracket(&a, &b)),
                    );
                    if !vis_zero(&jac, s * s) {
                        out.push(Violation { identity: "Jacobi", indices: vec![i, j, k] });
                    }
                }
            }
        }
        out
    }

    /// Solves `2<L_u v, w> = <[u,v],w> + <[w,u],v> + <[w,v],u>` on the basis.
    pub fn levi_civita(&self) -> LeviCivita<S> {
        let n = self.dim();
        let g = self.ip.gram();
        let half = S::one() / S::from_i64(2);
        let left = (0..n)
            .map(|i| {
                let mut m = Mat::zeros(n, n);
                for j in 0..n {
                    let rhs: Vector<S> = (0..n)
                        .map(|w| {
                            let t1 = crate::matrix::dot(&self.bracket_basis(i, j), &g.col(w));
                            let t2 = crate::matrix::dot(&self.bracket_basis(w, i), &g.col(j));
                            let t3 = crate::matrix::dot(&self.bracket_basis(w, j), &g.col(i));
                            (t1 + t2 + t3) * half.clone()
                        })
                        .collect();
                    m.set_col(j, &self.ip.raise(&rhs));
                }
                m
            })
            .collect();
        LeviCivita { left }
    }

    /// `K(u,v) = L_[u,v] - [L_u, L_v]`.
    pub fn curvature_with(&self, lc: &LeviCivita<S>) -> CurvatureTensor<S> {
        CurvatureTensor::from_upper(&self.ip, |i, j| {
            lc.left(&self.bracket_basis(i, j)).sub(&lc.l(i).commutator(lc.l(j)))
        })
    }

    pub fn curvature(&self) -> CurvatureTensor<S> {
        self.curvature_with(&self.levi_civita())
    }

    pub fn covariant_derivatives(&self, k: &CurvatureTensor<S>) -> CovariantDerivatives<S> {
        CovariantDerivatives::compute(&self.levi_civita(), k)
    }

    /// Smallest subalgebra containing `h(K)` and stable under every `[L_u, .]`.
    pub fn holonomy(&self) -> Vec<Endo<S>> {
        let lc = self.levi_civita();
        let k = self.curvature_with(&lc);
        holonomy_closure(&k.primitive_holonomy(), &lc.left)
    }

    /// `<u, h> = tr(ad_u)`.
    pub fn unimodular_vector(&self) -> Vector<S> {
        let traces: Vector<S> = (0..self.dim()).map(|i| self.ad(i).trace()).collect();
        self.ip.raise(&traces)
    }

    pub fn is_unimodular(&self) -> bool {
        self.unimodular_vector().iter().all(|x| x.is_zero())
    }

    pub fn identity_suite(&self) -> IdentityReport {
        identity_suite(self)
    }
}

fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

/// `∇K(u, v, w)` on basis vectors, index `(u*n + v)*n + w`.
pub fn first_derivative<S: Scalar>(lc: &LeviCivita<S>, k: &CurvatureTensor<S>) -> Vec<Endo<S>> {
    let n = k.dim();
    let idx3 = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    // K(Σ x_a e_a, e_b) without the full bilinear expansion
    let first_slot = |x: &[S], b: usize| -> Endo<S> {
        let mut m = Mat::zeros(n, n);
        for (a, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            axpy(&mut m, c, k.op(a, b));
        }
        m
    };
    // antisymmetric in the last two slots: compute v < w, mirror the rest
    let mut nabla = vec![Mat::zeros(n, n); n.pow(3)];
    for u in 0..n {
        let lu = lc.l(u);
        for v in 0..n {
            for w in v + 1..n {
                let m = lu
                    .commutator(k.op(v, w))
                    .sub(&first_slot(&lu.col(v), w))
                    .add(&first_slot(&lu.col(w), v));
                nabla[idx3(u, w, v)] = m.neg();
                nabla[idx3(u, v, w)] = m;
            }
        }
    }
    nabla
}

/// `m += c·a`
fn axpy<S: Scalar>(m: &mut Mat<S>, c: &S, a: &Mat<S>) {
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = &a[(i, j)];
            if !x.is_zero() {
                let cur = std::mem::replace(&mut m[(i, j)], S::zero());
                m[(i, j)] = cur + c.clone() * x.clone();
            }
        }
    }
}

/// Closure of `seed` under brackets and `[L, .]` for every `L` in `lefts`.
pub fn holonomy_closure<S: Scalar>(seed: &[Endo<S>], lefts: &[Endo<S>]) -> Vec<Endo<S>> {
    let Some(first) = seed.first().or(lefts.first()) else { return vec![] };
    let n = first.rows();
    let scale = seed.iter().chain(lefts).map(Mat::max_magnitude).fold(1.0, f64::max);
    let mut span = SpanBuilder::with_scale(n * n, scale);
    let mut basis: Vec<Endo<S>> = Vec::new();
    for m in seed {
        if span.insert(m.entries()) {
            basis.push(m.clone());
        }
    }
    let mut frontier = 0;
    while frontier < basis.len() {
        let x = basis[frontier].clone();
        let mut fresh = Vec::new();
        for l in lefts {
            fresh.push(l.commutator(&x));
        }
        for y in &basis[..=frontier] {
            fresh.push(x.commutator(y));
        }
        for m in fresh {
            if span.insert(m.entries()) {
                basis.push(m);
            }
        }
        frontier += 1;
    }
    basis
}

/// Left multiplications; `l(i)` has column `j` equal to `L_{e_i} e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeviCivita<S> {
    pub left: Vec<Endo<S>>,
}

impl<S: Scalar> LeviCivita<S> {
    pub fn l(&self, i: usize) -> &Endo<S> {
        &self.left[i]
    }

    pub fn dim(&self) -> usize {
        self.left.len()
    }

    pub fn left(&self, u: &[S]) -> Endo<S> {
        let n = self.dim();
        u.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .fold(Mat::zeros(n, n), |acc, (i, x)| acc.add(&self.left[i].scale(x)))
    }

    /// `R_u v = L_v u`.
    pub fn right(&self, u: &[S]) -> Endo<S> {
        let n = self.dim();
        let cols: Vec<Vector<S>> = (0..n).map(|j| self.left[j].mul_vec(u)).collect();
        Mat::from_cols(&cols)
    }

    /// The Levi-Civita product `L_u v`.
    pub fn product(&self, u: &[S], v: &[S]) -> Vector<S> {
        self.left(u).mul_vec(v)
    }
}

/// `∇K` and `∇²K` on basis slots plus the two symmetry flags.
#[derive(Clone, Debug)]
pub struct CovariantDerivatives<S> {
    n: usize,
    /// `∇K(u, v, w) = [L_u, K(v,w)] - K(L_u v, w) - K(v, L_u w)`, index `(u*n + v)*n + w`.
    pub nabla: Vec<Endo<S>>,
    /// `∇²K(u, v, w, t)`: `L_u` acting as a derivation on `∇K(v, w, t)`.
    pub nabla2: Vec<Endo<S>>,
    pub locally_symmetric: bool,
    pub second_order: bool,
}

impl<S: Scalar> CovariantDerivatives<S> {
    pub fn compute(lc: &LeviCivita<S>, k: &CurvatureTensor<S>) -> Self {
        let n = k.dim();
        let idx3 = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
        let nabla = first_derivative(lc, k);
        // trilinear extension of ∇K over one non-basis slot
        let slot = |pos: usize, vec: &[S], a: usize, b: usize| -> Endo<S> {
            let mut m = Mat::zeros(n, n);
            for (x, coef) in vec.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let id = match pos {
                    0 => idx3(x, a, b),
                    1 => idx3(a, x, b),
                    _ => idx3(a, b, x),
                };
                axpy(&mut m, coef, &nabla[id]);
            }
            m
        };
        let mut nabla2 = vec![Mat::zeros(n, n); n.pow(4)];
        for u in 0..n {
            let lu = lc.l(u);
            for v in 0..n {
                for w in 0..n {
                    // same antisymmetry as ∇K
                    for t in w + 1..n {
                        let m = lu
                            .commutator(&nabla[idx3(v, w, t)])
                            .sub(&slot(0, &lu.col(v), w, t))
                            .sub(&slot(1, &lu.col(w), v, t))
                            .sub(&slot(2, &lu.col(t), v, w));
                        nabla2[idx3(u, v, t) * n + w] = m.neg();
                        nabla2[idx3(u, v, w) * n + t] = m;
                    }
                }
            }
        }
        let s = k.max_magnitude().max(1.0) * lc.left.iter().map(Mat::max_magnitude).fold(1.0, f64::max);
        let locally_symmetric = nabla.iter().all(|m| m.is_zero_at(s));
        let second_order = nabla2.iter().all(|m| m.is_zero_at(s * s));
        CovariantDerivatives { n, nabla, nabla2, locally_symmetric, second_order }
    }

    pub fn nabla_at(&self, u: usize, v: usize, w: usize) -> &Endo<S> {
        &self.nabla[(u * self.n + v) * self.n + w]
    }

    pub fn nabla2_at(&self, u: usize, v: usize, w: usize, t: usize) -> &Endo<S> {
        &self.nabla2[((u * self.n + v) * self.n + w) * self.n + t]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check(name: &'static str, witness: Option<String>) -> IdentityCheck {
    IdentityCheck { name, passed: witness.is_none(), witness }
}

/// Orthogonal complement of a spanned subspace.
fn orth_complement<S: Scalar>(ip: &InnerProduct<S>, vecs: &[Vector<S>]) -> Vec<Vector<S>> {
    let n = ip.dim();
    if vecs.is_empty() {
        return (0..n).map(|i| unit(n, i)).collect();
    }
    let rows: Vec<Vec<S>> = vecs.iter().map(|v| ip.lower(v)).collect();
    Mat::from_rows(rows).nullspace()
}

fn same_subspace<S: Scalar>(a: &[Vector<S>], b: &[Vector<S>], n: usize) -> bool {
    let rank = |vs: &[Vector<S>]| {
        let mut sp = SpanBuilder::new(n);
        vs.iter().filter(|v| sp.insert(v)).count()
    };
    let ra = rank(a);
    ra == rank(b) && ra == rank(&[a, b].concat())
}

fn subspace_contains<S: Scalar>(space: &[Vector<S>], v: &[S], n: usize, scale: f64) -> bool {
    let mut sp = SpanBuilder::with_scale(n, scale);
    for w in space {
        sp.insert(w);
    }
    sp.contains(v)
}

fn identity_suite<S: Scalar>(g: &MetricLieAlgebra<S>) -> IdentityReport {
    let n = g.dim();
    let ip = g.ip();
    let lc = g.levi_civita();
    let k = g.curvature_with(&lc);
    let e = |i: usize| unit::<S>(n, i);
    let scale = k.max_magnitude().max(1.0) * lc.left.iter().map(Mat::max_magnitude).fold(1.0, f64::max).powi(2);
    let mut checks = Vec::new();

    let w = (0..n).find(|&i| !is_skew(lc.l(i), ip)).map(|i| format!("L_e{i} not skew"));
    checks.push(check("metric compatibility", w));

    let mut w = None;
    'tf: for i in 0..n {
        for j in 0..n {
            let d = crate::matrix::vsub(&g.bracket_basis(i, j), &crate::matrix::vsub(&lc.l(i).col(j), &lc.l(j).col(i)));
            if !vis_zero(&d, scale) {
                w = Some(format!("(e{i}, e{j})"));
                break 'tf;
            }
        }
    }
    checks.push(check("torsion-free", w));

    let v = k.validate();
    checks.push(check("curvature axioms", v.first().map(|x| x.to_string())));

    // K(u,.)v = -R_v R_u + R_{u.v} + [R_v, L_u], with u.v = L_u v
    let mut w = None;
    'cu: for a in 0..n {
        for b in 0..n {
            let (u, vv) = (e(a), e(b));
            let lhs = Mat::from_cols(&(0..n).map(|t| k.op(a, t).col(b)).collect::<Vec<_>>());
            let (ru, rv, lu) = (lc.right(&u), lc.right(&vv), lc.l(a).clone());
            let rhs = rv.mul(&ru).neg().add(&lc.right(&lc.product(&u, &vv))).add(&rv.commutator(&lu));
            if !lhs.sub(&rhs).is_zero_at(scale) {
                w = Some(format!("(e{a}, e{b})"));
                break 'cu;
            }
        }
    }
    checks.push(check("right-multiplication curvature relation", w));

    // [g,g]^⊥ = {u : R_u = R_u*},  (g.g)^⊥ = {u : R_u = 0}
    let brackets: Vec<Vector<S>> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| g.bracket_basis(i, j)).collect();
    let products: Vec<Vector<S>> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| lc.l(i).col(j)).collect();
    let right_basis: Vec<Endo<S>> = (0..n).map(|i| lc.right(&e(i))).collect();
    let solve = |f: &dyn Fn(&Endo<S>) -> Endo<S>| -> Vec<Vector<S>> {
        let cols: Vec<Vector<S>> = right_basis.iter().map(|r| f(r).entries().to_vec()).collect();
        Mat::from_cols(&cols).nullspace()
    };
    let self_adjoint = solve(&|r| r.sub(&adjoint(r, ip).unwrap()));
    let killed = solve(&|r| r.clone());
    let mut w = None;
    if !same_subspace(&orth_complement(ip, &brackets), &self_adjoint, n) {
        w = Some("[g,g]^perp differs from {u : R_u self-adjoint}".to_string());
    } else if !same_subspace(&orth_complement(ip, &products), &killed, n) {
        w = Some("(g.g)^perp differs from {u : R_u = 0}".to_string());
    }
    checks.push(check("orthogonal complements", w));

    let nabla = first_derivative(&lc, &k);
    let at = |u: usize, v: usize, w: usize| &nabla[(u * n + v) * n + w];
    let mut w = None;
    'b2: for u in 0..n {
        for v in 0..n {
            for t in 0..n {
                let cyc = at(u, v, t).add(at(v, t, u)).add(at(t, u, v));
                if !cyc.is_zero_at(scale) {
                    w = Some(format!("(e{u}, e{v}, e{t})"));
                    break 'b2;
                }
            }
        }
    }
    checks.push(check("differential Bianchi", w));

    if k.is_semi_symmetric() {
        let w = match k.ricci_splitting() {
            Ok(sp) => {
                let mut bad = k.splitting_violations(&sp);
                bad.extend(block_product_violations(&lc, &sp, scale));
                if ip.is_lorentzian() && sp.blocks[0].basis.len() == 1 {
                    bad.extend(null_block_violations(&lc, &sp.blocks[0].basis[0], scale));
                }
                bad.into_iter().next()
            }
            Err(err) => Some(err.to_string()),
        };
        checks.push(check("semi-symmetric block structure", w));
        let w = (!k.ricci_commutes()).then(|| "K(u,v) does not commute with Ric".to_string());
        checks.push(check("Ricci commutes with curvature", w));
    }
    IdentityReport { checks }
}

/// Product inclusions between Ricci blocks of a semi-symmetric algebra:
/// `L_{g_j} g_i ⊆ g_i`, `L_{g_i} g_i ⊆ g_0 + g_i`, `L_{g_0} g_i ⊆ g_i`,
/// `L_{g_0} g_0 ⊆ g_0`, `L_{g_i} g_0 ⊆ g_0 + g_i`.
pub fn block_product_violations<S: Scalar>(lc: &LeviCivita<S>, sp: &RicciSplitting<S>, scale: f64) -> Vec<String> {
    let n = lc.dim();
    let mut out = Vec::new();
    let blocks = &sp.blocks;
    for (bi, xi) in blocks.iter().enumerate() {
        for (bj, yj) in blocks.iter().enumerate() {
            // L_x y for x in block bi, y in block bj
            let target: Vec<Vector<S>> = match (bi, bj) {
                (0, 0) => blocks[0].basis.clone(),
                (0, j) => blocks[j].basis.clone(),
                (i, 0) => [blocks[0].basis.clone(), blocks[i].basis.clone()].concat(),
                (i, j) if i == j => [blocks[0].basis.clone(), blocks[i].basis.clone()].concat(),
                (_, j) => blocks[j].basis.clone(),
            };
            for x in &xi.basis {
                for y in &yj.basis {
                    if !subspace_contains(&target, &lc.product(x, y), n, scale) {
                        out.push(format!("L_x y escapes: x in block {bi}, y in block {bj}"));
                    }
                }
            }
        }
    }
    out.dedup();
    out
}

/// One-dimensional `g_0 = span{u}`: `u.u = 0`, `[R_u, L_u] = R_u²`, `R_u` nilpotent.
pub fn null_block_violations<S: Scalar>(lc: &LeviCivita<S>, u: &[S], scale: f64) -> Vec<String> {
    let n = lc.dim();
    let mut out = Vec::new();
    if !vis_zero(&lc.product(u, u), scale) {
        out.push("u.u != 0 on a one-dimensional g0".to_string());
    }
    let (ru, lu) = (lc.right(u), lc.left(u));
    if !ru.commutator(&lu).sub(&ru.mul(&ru)).is_zero_at(scale) {
        out.push("[R_u, L_u] != R_u^2".to_string());
    }
    if !ru.pow(n as u32).is_zero_at(scale.powi(n as i32)) {
        out.push("R_u is not nilpotent".to_string());
    }
    out
}
