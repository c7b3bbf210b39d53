//! Homogeneous pairs `(ḡ, g)` with `ḡ = g ⊕ m`: isotropy representation,
//! invariant metrics on `m`, the invariant Levi-Civita connection, curvature
//! and Ricci data.
//!
//! The basis of `ḡ` is `e_1..e_r` (spanning `g`) followed by `u_1..u_n`
//! (spanning `m`). Curvature is reported in the same convention as
//! [`MetricLieAlgebra::curvature`](crate::lie::MetricLieAlgebra::curvature),
//! i.e. `K(a,b) = ∇([a,b]_m) + ρ([a,b]_g) - [∇(a), ∇(b)]`.

use crate::curvature::{CurvatureTensor, Violation};
use crate::error::{Error, Result};
use crate::lie::MetricLieAlgebra;
use crate::matrix::{unit, vis_zero, Mat, Vector};
use crate::petrov::{classify_einstein_semisym, EinsteinBranch};
use crate::pseudo::{is_skew, Endo, InnerProduct};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousPair<S> {
    r: usize,
    n: usize,
    /// `[x_i, x_j] = Σ_k c[(i*N + j)*N + k] x_k` over the whole basis, `N = r + n`.
    c: Vec<S>,
    pub name: Option<String>,
    pub basis_names: Vec<String>,
    pub params: Vec<(String, String)>,
}

impl<S: Scalar> HomogeneousPair<S> {
    /// Brackets on ordered pairs of the total basis; reversed pairs follow by
    /// antisymmetry. Validation is separate.
    pub fn from_brackets(r: usize, n: usize, brackets: &[(usize, usize, Vector<S>)]) -> Result<Self> {
        let big = r + n;
        let mut c = vec![S::zero(); big.pow(3)];
        for (i, j, v) in brackets {
            if *i >= big || *j >= big || v.len() != big {
                return Err(Error::Dimension(format!("bracket ({i}, {j}) out of range for dimension {big}")));
            }
            for k in 0..big {
                c[(i * big + j) * big + k] = v[k].clone();
                c[(j * big + i) * big + k] = -v[k].clone();
            }
        }
        let names = (1..=r).map(|i| format!("e{i}")).chain((1..=n).map(|i| format!("u{i}"))).collect();
        Ok(HomogeneousPair { r, n, c, name: None, basis_names: names, params: Vec::new() })
    }

    /// `ḡ = m = g_lie`, `g = 0`.
    pub fn trivial_isotropy(lie: &MetricLieAlgebra<S>) -> Self {
        HomogeneousPair {
            r: 0,
            n: lie.dim(),
            c: lie.constants().to_vec(),
            name: lie.name.clone(),
            basis_names: lie.basis_names.clone(),
            params: lie.params.clone(),
        }
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

    /// Dimension of the isotropy algebra `g`.
    pub fn isotropy_dim(&self) -> usize {
        self.r
    }

    /// Dimension of `m`.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn constants(&self) -> &[S] {
        &self.c
    }

    fn total(&self) -> usize {
        self.r + self.n
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector<S> {
        let big = self.total();
        self.c[(i * big + j) * big..(i * big + j + 1) * big].to_vec()
    }

    /// `([u_a, u_b]_g, [u_a, u_b]_m)` for complement indices `a, b < n`.
    pub fn bracket_split(&self, a: usize, b: usize) -> (Vector<S>, Vector<S>) {
        let v = self.bracket_basis(self.r + a, self.r + b);
        (v[..self.r].to_vec(), v[self.r..].to_vec())
    }

    fn scale(&self) -> f64 {
        self.c.iter().map(|x| x.magnitude()).fold(1.0, f64::max)
    }

    /// Antisymmetry, Jacobi on `ḡ`, and closure of `g`.
    pub fn validate(&self) -> Vec<Violation> {
        let big = self.total();
        let s = self.scale();
        let mut out = Vec::new();
        for i in 0..big {
            for j in i..big {
                for k in 0..big {
                    let sum = self.c[(i * big + j) * big + k].clone() + self.c[(j * big + i) * big + k].clone();
                    if !sum.negligible(s) {
                        out.push(Violation { identity: "antisymmetry", indices: vec![i, j, k] });
                    }
                }
            }
        }
        for i in 0..self.r {
            for j in i + 1..self.r {
                if !vis_zero(&self.bracket_basis(i, j)[self.r..], s) {
                    out.push(Violation { identity: "subalgebra", indices: vec![i, j] });
                }
            }
        }
        let br = |u: &[S], v: &[S]| -> Vector<S> {
            let mut w = vec![S::zero(); big];
            for i in (0..big).filter(|&i| !u[i].is_zero()) {
                for j in (0..big).filter(|&j| !v[j].is_zero()) {
                    let f = u[i].clone() * v[j].clone();
                    for (k, x) in self.bracket_basis(i, j).into_iter().enumerate() {
                        w[k] = w[k].clone() + f.clone() * x;
                    }
                }
            }
            w
        };
        for i in 0..big {
            for j in i + 1..big {
                for k in j + 1..big {
                    let (a, b, c) = (unit(big, i), unit(big, j), unit(big, k));
                    let t1 = br(&a, &br(&b, &c));
                    let t2 = br(&b, &br(&c, &a));
                    let t3 = br(&c, &br(&a, &b));
                    let jac: Vector<S> = (0..big).map(|x| t1[x].clone() + t2[x].clone() + t3[x].clone()).collect();
                    if !vis_zero(&jac, s * s) {
                        out.push(Violation { identity: "Jacobi", indices: vec![i, j, k] });
                    }
                }
            }
        }
        out
    }

    /// `ρ(e_i) y = [e_i, y]_m` on `m`.
    pub fn isotropy(&self, i: usize) -> Endo<S> {
        let mut m = Mat::zeros(self.n, self.n);
        for j in 0..self.n {
            m.set_col(j, &self.bracket_basis(i, self.r + j)[self.r..]);
        }
        m
    }

    pub fn isotropy_rep(&self) -> Vec<Endo<S>> {
        (0..self.r).map(|i| self.isotropy(i)).collect()
    }

    /// Basis of the symmetric `B` with `ρ(e_i)ᵀ B + B ρ(e_i) = 0` for all `i`.
    pub fn invariant_metric_space(&self) -> Vec<Mat<S>> {
        let n = self.n;
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let sym = |k: usize| {
            let (i, j) = slots[k];
            Mat::from_fn(n, n, |a, b| if (a, b) == (i, j) || (a, b) == (j, i) { S::one() } else { S::zero() })
        };
        let rho = self.isotropy_rep();
        // one column per unknown, rows = all entries of all invariance equations
        let cols: Vec<Vector<S>> = (0..slots.len())
            .map(|k| {
                let e = sym(k);
                rho.iter().flat_map(|p| p.transpose().mul(&e).add(&e.mul(p)).entries().to_vec()).collect()
            })
            .collect();
        if rho.is_empty() {
            return (0..slots.len()).map(sym).collect();
        }
        Mat::from_cols(&cols)
            .nullspace()
            .into_iter()
            .map(|x| {
                x.iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(Mat::zeros(n, n), |acc, (k, c)| {
                    acc.add(&sym(k).scale(c))
                })
            })
            .collect()
    }

    pub fn is_invariant(&self, b: &Mat<S>) -> bool {
        let s = b.max_magnitude() * self.scale();
        self.isotropy_rep().iter().all(|p| p.transpose().mul(b).add(&b.mul(p)).is_zero_at(s))
    }

    fn metric(&self, b: &Mat<S>) -> Result<InnerProduct<S>> {
        if b.rows() != self.n || b.cols() != self.n {
            return Err(Error::Dimension(format!("{}x{} metric on a {}-dimensional complement", b.rows(), b.cols(), self.n)));
        }
        let ip = InnerProduct::new(b.clone())?;
        if !self.is_invariant(b) {
            return Err(Error::Precondition("metric is not invariant under the isotropy representation".into()));
        }
        Ok(ip)
    }

    /// `∇(u_y) z = ½[y,z]_m + ν(y,z)` with
    /// `2B(ν(a,b),c) = B([c,a]_m, b) + B([c,b]_m, a)`.
    pub fn connection(&self, b: &Mat<S>) -> Result<HomConnection<S>> {
        let ip = self.metric(b)?;
        let n = self.n;
        let half = S::one() / S::from_i64(2);
        let bm = |a: usize, c: usize| self.bracket_split(a, c).1;
        let nabla: Vec<Endo<S>> = (0..n)
            .map(|y| {
                let mut m = Mat::zeros(n, n);
                for z in 0..n {
                    let rhs: Vector<S> = (0..n)
                        .map(|w| (ip.dot(&bm(w, y), &unit(n, z)) + ip.dot(&bm(w, z), &unit(n, y))) * half.clone())
                        .collect();
                    let nu = ip.raise(&rhs);
                    let col: Vector<S> =
                        bm(y, z).into_iter().zip(nu).map(|(p, q)| p * half.clone() + q).collect();
                    m.set_col(z, &col);
                }
                m
            })
            .collect();
        for (y, m) in nabla.iter().enumerate() {
            if !is_skew(m, &ip) {
                return Err(Error::Inconsistent(format!("∇(u{}) is not skew for the metric", y + 1)));
            }
        }
        Ok(HomConnection { ip, rho: self.isotropy_rep(), nabla })
    }

    pub fn curvature(&self, b: &Mat<S>) -> Result<CurvatureTensor<S>> {
        Ok(self.curvature_with(&self.connection(b)?))
    }

    pub fn curvature_with(&self, conn: &HomConnection<S>) -> CurvatureTensor<S> {
        let n = self.n;
        CurvatureTensor::from_upper(&conn.ip, |a, b| {
            let (g, m) = self.bracket_split(a, b);
            let mut t = conn.nabla[a].commutator(&conn.nabla[b]).neg();
            for (k, x) in m.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                t = t.add(&conn.nabla[k].scale(x));
            }
            for (k, x) in g.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                t = t.add(&conn.rho[k].scale(x));
            }
            debug_assert_eq!(t.rows(), n);
            t
        })
    }

    /// `ric_ij = Σ_r` (coordinate `r` of `K'(u_r, u_i) u_j`) where
    /// `K' = [∇a, ∇b] - ∇[a,b]_m - ρ[a,b]_g = -K`; then `Ric = B⁻¹ ric`.
    pub fn ricci(&self, b: &Mat<S>) -> Result<(Mat<S>, Endo<S>)> {
        let k = self.curvature(b)?;
        ricci_of(&k)
    }

    pub fn analyze(&self, b: &Mat<S>) -> Result<HomogeneousAnalysis<S>> {
        let violations = self.validate();
        if let Some(v) = violations.first() {
            return Err(Error::Invalid(format!("pair fails validation: {v}")));
        }
        let conn = self.connection(b)?;
        let k = self.curvature_with(&conn);
        if let Some(v) = k.validate().first() {
            return Err(Error::Inconsistent(format!("curvature fails {v}")));
        }
        let (ric, ricci) = ricci_of(&k)?;
        let witness = k.semi_symmetry_witness();
        let ricci_flat = ricci.is_zero();
        let scale = ricci.max_magnitude();
        let ricci_isotropic = !ricci_flat && ricci.mul(&ricci).is_zero_at(scale * scale);
        let n = self.n;
        let lam = ricci.trace() / S::from_i64(n as i64);
        let einstein = ricci.approx_eq(&Mat::identity(n).scale(&lam)).then_some(lam);
        let lorentzian = conn.ip.is_lorentzian();
        let petrov = if n == 4 && lorentzian && einstein.is_some() && witness.is_none() && !k.is_zero() {
            Some(classify_einstein_semisym(&k)?)
        } else {
            None
        };
        Ok(HomogeneousAnalysis {
            lorentzian,
            dim_hk: k.primitive_holonomy().len(),
            semi_symmetric: witness.is_none(),
            semi_symmetry_witness: witness,
            ricci_flat,
            ricci_isotropic,
            einstein,
            petrov,
            nabla: conn.nabla,
            curvature: k,
            ric,
            ricci,
        })
    }
}

fn ricci_of<S: Scalar>(k: &CurvatureTensor<S>) -> Result<(Mat<S>, Endo<S>)> {
    let n = k.dim();
    let ric = Mat::from_fn(n, n, |i, j| {
        (0..n).fold(S::zero(), |acc, r| acc - k.op(r, i)[(r, j)].clone())
    });
    if !ric.approx_eq(&ric.transpose()) {
        return Err(Error::Inconsistent("Ricci form of the pair is not symmetric".into()));
    }
    let ricci = k.ip().gram_inv().mul(&ric);
    Ok((ric, ricci))
}

/// `ρ` on `g` and `∇` on the complement, for a fixed invariant metric.
#[derive(Clone, Debug, PartialEq)]
pub struct HomConnection<S> {
    pub ip: InnerProduct<S>,
    pub rho: Vec<Endo<S>>,
    pub nabla: Vec<Endo<S>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousAnalysis<S> {
    pub lorentzian: bool,
    pub semi_symmetric: bool,
    pub semi_symmetry_witness: Option<[usize; 4]>,
    pub ricci_flat: bool,
    pub ricci_isotropic: bool,
    /// `Some(λ)` when `Ric = λ Id`.
    pub einstein: Option<S>,
    pub dim_hk: usize,
    pub petrov: Option<EinsteinBranch>,
    pub nabla: Vec<Endo<S>>,
    pub curvature: CurvatureTensor<S>,
    pub ric: Mat<S>,
    pub ricci: Endo<S>,
}
