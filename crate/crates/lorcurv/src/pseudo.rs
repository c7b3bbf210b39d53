//! Pseudo-Euclidean vector spaces: inner products, wedges, adjoints and the
//! canonical type of a symmetric endomorphism.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{dot, Mat, Vector};
use crate::poly::{real_poly_roots, Poly, Root, RootMult};
use crate::scalar::Scalar;

/// Endomorphisms are plain matrices acting on column coordinates.
pub type Endo<S> = Mat<S>;

#[derive(Clone, Debug, PartialEq)]
pub struct InnerProduct<S> {
    gram: Mat<S>,
    inv: Mat<S>,
}

impl<S: Scalar> InnerProduct<S> {
    pub fn new(gram: Mat<S>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Dimension(format!("gram matrix is {}x{}", gram.rows(), gram.cols())));
        }
        if !gram.approx_eq(&gram.transpose()) {
            return Err(Error::NotSymmetric("gram matrix".into()));
        }
        let inv = gram.inverse().ok_or(Error::Degenerate)?;
        Ok(InnerProduct { gram, inv })
    }

    pub fn diagonal(d: &[S]) -> Result<Self> {
        Self::new(Mat::diag(d))
    }

    pub fn euclidean(n: usize) -> Self {
        Self::new(Mat::identity(n)).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Mat<S> {
        &self.gram
    }

    pub fn gram_inv(&self) -> &Mat<S> {
        &self.inv
    }

    pub fn dot(&self, u: &[S], v: &[S]) -> S {
        dot(u, &self.gram.mul_vec(v))
    }

    /// Covector `<v, .>` as a coordinate row.
    pub fn lower(&self, v: &[S]) -> Vector<S> {
        self.gram.mul_vec(v)
    }

    pub fn raise(&self, w: &[S]) -> Vector<S> {
        self.inv.mul_vec(w)
    }

    /// `(negative, positive)` counts; nondegeneracy guarantees they sum to `n`.
    pub fn signature(&self) -> (usize, usize) {
        let (neg, pos, _) = congruence_signs(&self.gram);
        (neg, pos)
    }

    pub fn is_lorentzian(&self) -> bool {
        self.signature().0 == 1
    }

    pub fn is_euclidean(&self) -> bool {
        self.signature().0 == 0
    }

    fn check(&self, v: &[S]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::Dimension(format!("vector of length {} in dimension {}", v.len(), self.dim())));
        }
        Ok(())
    }

    fn check_endo(&self, a: &Endo<S>) -> Result<()> {
        if a.rows() != self.dim() || a.cols() != self.dim() {
            return Err(Error::Dimension(format!(
                "{}x{} endomorphism in dimension {}",
                a.rows(),
                a.cols(),
                self.dim()
            )));
        }
        Ok(())
    }
}

/// Signs of a symmetric matrix by congruence diagonalization (LDL^T with
/// symmetric pivoting). Returns `(negative, positive, zero)`.
pub fn congruence_signs<S: Scalar>(m: &Mat<S>) -> (usize, usize, usize) {
    let mut a = m.clone();
    let scale = m.max_magnitude();
    let n = a.rows();
    let mut alive: Vec<usize> = (0..n).collect();
    let (mut neg, mut pos) = (0, 0);
    while !alive.is_empty() {
        // best diagonal pivot
        let piv = alive
            .iter()
            .copied()
            .filter(|&i| !a[(i, i)].negligible(scale))
            .max_by(|&i, &j| a[(i, i)].magnitude().total_cmp(&a[(j, j)].magnitude()));
        let p = match piv {
            Some(p) => p,
            None => {
                // zero diagonal: e_i <- e_i + e_j makes a[i][i] = 2 a[i][j]
                let off = alive.iter().flat_map(|&i| alive.iter().map(move |&j| (i, j))).find(|&(i, j)| {
                    i != j && !a[(i, j)].negligible(scale)
                });
                let Some((i, j)) = off else { break };
                for k in 0..n {
                    let v = a[(i, k)].clone() + a[(j, k)].clone();
                    a[(i, k)] = v;
                }
                for k in 0..n {
                    let v = a[(k, i)].clone() + a[(k, j)].clone();
                    a[(k, i)] = v;
                }
                i
            }
        };
        let d = a[(p, p)].clone();
        if d.sign(scale) < 0 {
            neg += 1;
        } else {
            pos += 1;
        }
        alive.retain(|&i| i != p);
        for &i in &alive {
            let f = a[(i, p)].clone() / d.clone();
            for &j in &alive {
                let v = a[(i, j)].clone() - f.clone() * a[(p, j)].clone();
                a[(i, j)] = v;
            }
        }
    }
    (neg, pos, n - neg - pos)
}

/// `(u∧v)z = <v,z>u - <u,z>v`
pub fn wedge<S: Scalar>(u: &[S], v: &[S], ip: &InnerProduct<S>) -> Result<Endo<S>> {
    ip.check(u)?;
    ip.check(v)?;
    let (gu, gv) = (ip.lower(u), ip.lower(v));
    let n = ip.dim();
    Ok(Mat::from_fn(n, n, |i, j| u[i].clone() * gv[j].clone() - v[i].clone() * gu[j].clone()))
}

/// `A* = G^{-1} A^T G`
pub fn adjoint<S: Scalar>(a: &Endo<S>, ip: &InnerProduct<S>) -> Result<Endo<S>> {
    ip.check_endo(a)?;
    Ok(ip.gram_inv().mul(&a.transpose()).mul(ip.gram()))
}

pub fn is_skew<S: Scalar>(a: &Endo<S>, ip: &InnerProduct<S>) -> bool {
    let g = ip.gram();
    let lhs = a.transpose().mul(g).add(&g.mul(a));
    lhs.is_zero_at(a.max_magnitude() * g.max_magnitude())
}

pub fn is_symmetric<S: Scalar>(a: &Endo<S>, ip: &InnerProduct<S>) -> bool {
    let g = ip.gram();
    let lhs = a.transpose().mul(g).sub(&g.mul(a));
    lhs.is_zero_at(a.max_magnitude() * g.max_magnitude())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SymKind {
    Diag,
    ComplexPair,
    Alpha2,
    Alpha3,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymCanonicalType<S> {
    pub kind: SymKind,
    /// Eigenvalues with algebraic multiplicities.
    pub eigen: Vec<RootMult<S>>,
}

/// Smallest-degree monic `m` with `m(f) = 0`, found from the first linear
/// dependency among `I, f, f^2, ...` (columns rescaled in float mode so the
/// rank test sees comparable magnitudes).
pub fn minimal_polynomial<S: Scalar>(f: &Endo<S>) -> Poly<S> {
    let n = f.rows();
    let mut cols: Vec<Vector<S>> = Vec::new();
    let mut scales: Vec<S> = Vec::new();
    let mut p: Mat<S> = Mat::identity(n);
    for _ in 0..=n {
        let s = if S::EXACT {
            S::one()
        } else {
            let m = p.max_magnitude();
            S::lift(if m > 0.0 { 1.0 / m } else { 1.0 }, &|_| true).unwrap()
        };
        cols.push(p.entries().iter().map(|x| x.clone() * s.clone()).collect());
        scales.push(s);
        let null = Mat::from_cols(&cols).nullspace();
        if let Some(y) = null.first() {
            let k = cols.len() - 1;
            let lead = y[k].clone() * scales[k].clone();
            let coeffs = (0..=k).map(|i| y[i].clone() * scales[i].clone() / lead.clone()).collect();
            return Poly::new(coeffs);
        }
        p = p.mul(f);
    }
    f.charpoly()
}

pub fn symmetric_canonical_type<S: Scalar>(f: &Endo<S>, ip: &InnerProduct<S>) -> Result<SymCanonicalType<S>> {
    ip.check_endo(f)?;
    if !is_symmetric(f, ip) {
        return Err(Error::NotSymmetric("endomorphism is not self-adjoint".into()));
    }
    let eigen = real_poly_roots(&f.charpoly())?;
    let scale = eigen.iter().map(|r| {
        let (a, b) = r.root.c64();
        a.hypot(b)
    });
    let scale = scale.fold(1.0, f64::max);
    let nonreal = eigen.iter().any(|r| match &r.root {
        Root::Exact(z) => !z.im.is_zero(),
        Root::Approx(_, im) => im.abs() > crate::scalar::tolerance().cbrt() * scale,
    });
    if nonreal {
        return Ok(SymCanonicalType { kind: SymKind::ComplexPair, eigen });
    }
    let m = minimal_polynomial(f);
    let block = if S::EXACT {
        m.squarefree_factors().iter().map(|(_, k)| *k).max().unwrap_or(1)
    } else {
        real_poly_roots(&m)?.iter().map(|r| r.mult).max().unwrap_or(1)
    };
    let kind = match block {
        1 => SymKind::Diag,
        2 => SymKind::Alpha2,
        3 => SymKind::Alpha3,
        k => {
            return Err(Error::Precondition(format!(
                "Jordan block of size {k} cannot occur for a self-adjoint map of a Lorentzian space"
            )))
        }
    };
    Ok(SymCanonicalType { kind, eigen })
}
