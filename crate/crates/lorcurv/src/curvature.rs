//! Algebraic curvature tensors: axioms, Ricci data, semi-symmetry, primitive
//! holonomy and the Ricci splitting of semi-symmetric tensors.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{unit, Mat, SpanBuilder, Vector};
use crate::poly::{real_poly_roots, Root};
use crate::pseudo::{is_skew, wedge, Endo, InnerProduct};
use crate::scalar::Scalar;

/// `K(e_i, e_j)` stored as `n*n` endomorphisms; column `k` of `op(i, j)` is
/// `K(e_i, e_j) e_k`, so `R[i][j][k][l] = op(i, j)[(l, k)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor<S> {
    ip: InnerProduct<S>,
    ops: Vec<Endo<S>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub identity: &'static str,
    pub indices: Vec<usize>,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} at {:?}", self.identity, self.indices)
    }
}

impl<S: Scalar> CurvatureTensor<S> {
    pub fn from_fn(ip: &InnerProduct<S>, mut f: impl FnMut(usize, usize) -> Endo<S>) -> Self {
        let n = ip.dim();
        let ops = (0..n * n).map(|k| f(k / n, k % n)).collect();
        CurvatureTensor { ip: ip.clone(), ops }
    }

    pub fn zero(ip: &InnerProduct<S>) -> Self {
        let n = ip.dim();
        Self::from_fn(ip, |_, _| Mat::zeros(n, n))
    }

    /// `R[i][j][k][l]` flattened row-major.
    pub fn from_components(ip: &InnerProduct<S>, r: &[S]) -> Result<Self> {
        let n = ip.dim();
        if r.len() != n.pow(4) {
            return Err(Error::Dimension(format!("{} components for dimension {n}", r.len())));
        }
        Ok(Self::from_fn(ip, |i, j| Mat::from_fn(n, n, |l, k| r[((i * n + j) * n + k) * n + l].clone())))
    }

    /// Antisymmetric extension of values given for `i < j`.
    pub fn from_upper(ip: &InnerProduct<S>, mut f: impl FnMut(usize, usize) -> Endo<S>) -> Self {
        let n = ip.dim();
        let mut ops = vec![Mat::zeros(n, n); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let m = f(i, j);
                ops[j * n + i] = m.neg();
                ops[i * n + j] = m;
            }
        }
        CurvatureTensor { ip: ip.clone(), ops }
    }

    /// `K(u, v) = c u∧v`.
    pub fn constant(ip: &InnerProduct<S>, c: &S) -> Self {
        let n = ip.dim();
        Self::from_fn(ip, |i, j| wedge(&unit(n, i), &unit(n, j), ip).unwrap().scale(c))
    }

    pub fn dim(&self) -> usize {
        self.ip.dim()
    }

    pub fn ip(&self) -> &InnerProduct<S> {
        &self.ip
    }

    pub fn op(&self, i: usize, j: usize) -> &Endo<S> {
        &self.ops[i * self.dim() + j]
    }

    pub fn component(&self, i: usize, j: usize, k: usize, l: usize) -> S {
        self.op(i, j)[(l, k)].clone()
    }

    pub fn components(&self) -> Vec<S> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n.pow(4));
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        out.push(self.component(i, j, k, l));
                    }
                }
            }
        }
        out
    }

    /// `K(u, v)` for arbitrary vectors.
    pub fn apply(&self, u: &[S], v: &[S]) -> Endo<S> {
        let n = self.dim();
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                m = m.add(&self.op(i, j).scale(&(u[i].clone() * v[j].clone())));
            }
        }
        m
    }

    pub fn max_magnitude(&self) -> f64 {
        self.ops.iter().map(Mat::max_magnitude).fold(0.0, f64::max)
    }

    fn scale_hint(&self) -> f64 {
        self.max_magnitude().max(1.0) * self.ip.gram().max_magnitude().max(1.0)
    }

    pub fn is_zero(&self) -> bool {
        self.ops.iter().all(Mat::is_zero)
    }

    pub fn sub(&self, o: &Self) -> Self {
        CurvatureTensor { ip: self.ip.clone(), ops: self.ops.iter().zip(&o.ops).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &S) -> Self {
        CurvatureTensor { ip: self.ip.clone(), ops: self.ops.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn approx_eq(&self, o: &Self) -> bool {
        let s = self.max_magnitude().max(o.max_magnitude());
        self.sub(o).ops.iter().all(|m| m.is_zero_at(s))
    }

    /// Every violated axiom with its witnessing basis indices; empty means
    /// `self` is a curvature tensor.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.dim();
        let s = self.scale_hint();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                if !self.op(i, j).add(self.op(j, i)).is_zero_at(s) {
                    out.push(Violation { identity: "antisymmetry", indices: vec![i, j] });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !is_skew(self.op(i, j), &self.ip) {
                    out.push(Violation { identity: "skewness", indices: vec![i, j] });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let cyc = crate::matrix::vadd(
                        &crate::matrix::vadd(&self.op(i, j).col(k), &self.op(j, k).col(i)),
                        &self.op(k, i).col(j),
                    );
                    if !crate::matrix::vis_zero(&cyc, s) {
                        out.push(Violation { identity: "first Bianchi", indices: vec![i, j, k] });
                    }
                }
            }
        }
        let g = self.ip.gram();
        let pair = |a: usize, b: usize, u: usize, v: usize| -> S {
            crate::matrix::dot(&self.op(a, b).col(u), &g.col(v))
        };
        for a in 0..n {
            for b in a + 1..n {
                for u in 0..n {
                    for v in u + 1..n {
                        if (a, b) < (u, v) && !(pair(a, b, u, v) - pair(u, v, a, b)).negligible(s) {
                            out.push(Violation { identity: "pair symmetry", indices: vec![a, b, u, v] });
                        }
                    }
                }
            }
        }
        out
    }

    /// `r(e_i, e_j) = tr(a ↦ K(e_i, a) e_j)`.
    pub fn ricci_form(&self) -> Mat<S> {
        let n = self.dim();
        Mat::from_fn(n, n, |i, j| {
            (0..n).fold(S::zero(), |acc, a| acc + self.op(i, a)[(a, j)].clone())
        })
    }

    /// `<Ric u, v> = r(u, v)`.
    pub fn ricci(&self) -> Endo<S> {
        self.ip.gram_inv().mul(&self.ricci_form())
    }

    pub fn scalar_curvature(&self) -> S {
        self.ricci().trace()
    }

    /// Lexicographically first `(x, y, z, t)` where
    /// `[K(x,y), K(z,t)] = K(K(x,y)z, t) + K(z, K(x,y)t)` fails.
    pub fn semi_symmetry_witness(&self) -> Option<[usize; 4]> {
        let n = self.dim();
        let s = self.scale_hint().powi(2);
        // a violation at x > y or z > t repeats at the swapped, smaller tuple
        for x in 0..n {
            for y in x + 1..n {
                let a = self.op(x, y);
                for z in 0..n {
                    for t in z + 1..n {
                        let lhs = a.commutator(self.op(z, t));
                        let rhs = self.apply(&a.col(z), &unit(n, t)).add(&self.apply(&unit(n, z), &a.col(t)));
                        if !lhs.sub(&rhs).is_zero_at(s) {
                            return Some([x, y, z, t]);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_semi_symmetric(&self) -> bool {
        self.semi_symmetry_witness().is_none()
    }

    /// `K(u,v) ∘ Ric = Ric ∘ K(u,v)` on all basis pairs.
    pub fn ricci_commutes(&self) -> bool {
        let n = self.dim();
        let ric = self.ricci();
        let s = self.scale_hint().powi(2);
        (0..n).all(|i| (i + 1..n).all(|j| self.op(i, j).commutator(&ric).is_zero_at(s)))
    }

    /// A maximal independent subset of `{K(e_i, e_j)}`.
    pub fn primitive_holonomy(&self) -> Vec<Endo<S>> {
        let n = self.dim();
        let mut span = SpanBuilder::with_scale(n * n, self.max_magnitude());
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if span.insert(self.op(i, j).entries()) {
                    out.push(self.op(i, j).clone());
                }
            }
        }
        out
    }

    /// `Some(c)` iff `K(u, v) = c u∧v` for all `u, v`.
    pub fn constant_curvature_coefficient(&self) -> Option<S> {
        let n = self.dim();
        if n < 2 {
            return Some(S::zero());
        }
        let w01 = wedge(&unit(n, 0), &unit(n, 1), &self.ip).unwrap();
        let idx = (0..n * n).find(|&k| !w01.entries()[k].is_zero())?;
        let c = self.op(0, 1).entries()[idx].clone() / w01.entries()[idx].clone();
        let cc = Self::constant(&self.ip, &c);
        self.approx_eq(&cc).then_some(c)
    }

    /// Weyl part: `K` minus its Ricci and scalar parts (dimension ≥ 4).
    pub fn weyl(&self) -> Result<Self> {
        let n = self.dim();
        if n < 4 {
            return Err(Error::Dimension(format!("Weyl tensor needs dimension >= 4, got {n}")));
        }
        let ric = self.ricci();
        let tr = ric.trace();
        let a = tr / S::from_i64(((n - 1) * (n - 2)) as i64);
        let b = S::one() / S::from_i64((n - 2) as i64);
        let ip = &self.ip;
        Ok(Self::from_fn(ip, |i, j| {
            let (x, y) = (unit(n, i), unit(n, j));
            let xy = wedge(&x, &y, ip).unwrap();
            let mixed = wedge(&x, &ric.col(j), ip).unwrap().add(&wedge(&ric.col(i), &y, ip).unwrap());
            self.op(i, j).sub(&xy.scale(&a)).add(&mixed.scale(&b))
        }))
    }

    /// Orthogonal splitting `V0 ⊕ V_λ1 ⊕ ...` of a semi-symmetric tensor.
    pub fn ricci_splitting(&self) -> Result<RicciSplitting<S>> {
        if let Some(w) = self.semi_symmetry_witness() {
            return Err(Error::Precondition(format!("tensor is not semi-symmetric (witness {w:?})")));
        }
        let n = self.dim();
        let ric = self.ricci();
        let v0 = ric.mul(&ric).nullspace_at(ric.max_magnitude().powi(2));
        let mut blocks = vec![Block { eigenvalue: S::zero(), basis: v0 }];
        // nonzero eigenvalues are simple roots of the minimal polynomial here,
        // which keeps float roots accurate where the characteristic one clusters
        for r in real_poly_roots(&crate::pseudo::minimal_polynomial(&ric))? {
            let lam = match &r.root {
                Root::Exact(z) if z.im.is_zero() => z.re.clone(),
                Root::Exact(z) => {
                    return Err(Error::Inconsistent(format!("non-real Ricci eigenvalue {z}")));
                }
                Root::Approx(re, im) => {
                    return Err(Error::Irrational(format!("Ricci eigenvalue {re}{im:+}i; use float mode")));
                }
            };
            if lam.negligible(ric.max_magnitude()) {
                continue;
            }
            let basis = ric.sub(&Mat::identity(n).scale(&lam)).nullspace_at(ric.max_magnitude());
            blocks.push(Block { eigenvalue: lam, basis });
        }
        let total: usize = blocks.iter().map(|b| b.basis.len()).sum();
        if total != n {
            return Err(Error::Inconsistent(format!("Ricci blocks span dimension {total} of {n}")));
        }
        Ok(RicciSplitting { blocks })
    }

    /// Violated splitting invariants, as readable strings.
    pub fn splitting_violations(&self, sp: &RicciSplitting<S>) -> Vec<String> {
        let n = self.dim();
        let s = self.scale_hint().powi(2);
        let mut out = Vec::new();
        let all: Vec<Vector<S>> = sp.blocks.iter().flat_map(|b| b.basis.clone()).collect();
        if all.len() != n || Mat::from_cols(&all).rank() != n {
            out.push("blocks do not sum to V".to_string());
        }
        for (bi, b) in sp.blocks.iter().enumerate() {
            if bi > 0 && b.basis.len() < 2 {
                out.push(format!("block {bi} (eigenvalue {}) has dimension {}", b.eigenvalue, b.basis.len()));
            }
            for (bj, c) in sp.blocks.iter().enumerate().skip(bi + 1) {
                for u in &b.basis {
                    for v in &c.basis {
                        if !self.ip.dot(u, v).negligible(s) {
                            out.push(format!("blocks {bi} and {bj} are not orthogonal"));
                        }
                        if !self.apply(u, v).is_zero_at(s) {
                            out.push(format!("K(V{bi}, V{bj}) != 0"));
                        }
                    }
                }
            }
            let mut span = SpanBuilder::with_scale(n, s);
            for v in &b.basis {
                span.insert(v);
            }
            for i in 0..n {
                for j in i + 1..n {
                    if b.basis.iter().any(|v| !span.contains(&self.op(i, j).mul_vec(v))) {
                        out.push(format!("K(e{i}, e{j}) does not preserve block {bi}"));
                    }
                }
            }
        }
        out.dedup();
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Block<S> {
    pub eigenvalue: S,
    pub basis: Vec<Vector<S>>,
}

/// `blocks[0]` is `V0 = ker Ric²`; the rest are nonzero eigenspaces.
#[derive(Clone, Debug, PartialEq)]
pub struct RicciSplitting<S> {
    pub blocks: Vec<Block<S>>,
}

impl<S: Scalar> RicciSplitting<S> {
    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.basis.len()).collect()
    }
}

/// In dimension 3 the curvature is fixed by Ricci:
/// `K(X,Y) = ½ tr(Ric) X∧Y - X∧Ric(Y) - Ric(X)∧Y`.
pub fn curvature_from_ricci_3d<S: Scalar>(ric: &Endo<S>, ip: &InnerProduct<S>) -> Result<CurvatureTensor<S>> {
    if ip.dim() != 3 || ric.rows() != 3 || ric.cols() != 3 {
        return Err(Error::Dimension("curvature from Ricci needs dimension 3".into()));
    }
    if !crate::pseudo::is_symmetric(ric, ip) {
        return Err(Error::NotSymmetric("Ricci operator".into()));
    }
    let half = ric.trace() / S::from_i64(2);
    Ok(CurvatureTensor::from_fn(ip, |i, j| {
        let (x, y) = (unit(3, i), unit(3, j));
        wedge(&x, &y, ip)
            .unwrap()
            .scale(&half)
            .sub(&wedge(&x, &ric.col(j), ip).unwrap())
            .sub(&wedge(&ric.col(i), &y, ip).unwrap())
    }))
}
