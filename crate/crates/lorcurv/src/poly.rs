//! Univariate polynomials, square-free decomposition, Sturm counts and root
//! extraction (numeric seeds, exact verification in rational mode).

use crate::error::{Error, Result};
use crate::scalar::{tolerance, Cplx, Field, Scalar};

/// Coefficients stored lowest degree first; leading coefficient never negligible.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    c: Vec<T>,
}

impl<T: Field> Poly<T> {
    pub fn new(mut c: Vec<T>) -> Self {
        let scale = c.iter().map(Field::magnitude).fold(0.0, f64::max);
        while c.last().is_some_and(|x| x.negligible(scale * 1e-3)) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: vec![] }
    }

    pub fn constant(v: T) -> Self {
        Self::new(vec![v])
    }

    /// `x - r`
    pub fn linear(r: T) -> Self {
        Poly { c: vec![-r, T::one()] }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn lead(&self) -> T {
        self.c.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        self.c.iter().rev().fold(T::zero(), |acc, a| acc * x.clone() + a.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.c.iter().map(|a| a.clone() * s.clone()).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).cloned().unwrap_or_else(T::zero);
                    let b = o.c.get(i).cloned().unwrap_or_else(T::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-T::one()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![T::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(c)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = T::one() / self.lead();
        self.scale(&l)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c.iter().enumerate().skip(1).map(|(i, a)| a.clone() * T::from_i64(i as i64)).collect(),
        )
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![T::zero(); r.len() - dd];
        let inv = T::one() / d.lead();
        for k in (0..q.len()).rev() {
            let f = r[k + dd].clone() * inv.clone();
            for (j, dj) in d.c.iter().enumerate() {
                r[k + j] = r[k + j].clone() - f.clone() * dj.clone();
            }
            r[k + dd] = T::zero();
            q[k] = f;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Monic gcd. Only meaningful in exact arithmetic.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: `[(f1, 1), (f2, 2), ...]` with
    /// `self = lead * Π fi^i` and every `fi` square-free and monic.
    pub fn squarefree_factors(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.divrem(&a0).0;
        let c = df.divrem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            let nb = b.divrem(&a).0;
            let nc = d.divrem(&a).0;
            if !a.is_constant() {
                out.push((a, i));
            }
            d = nc.sub(&nb.derivative());
            b = nb;
            i += 1;
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        self.squarefree_factors().iter().all(|(_, m)| *m == 1)
    }
}

impl<S: Scalar> Poly<S> {
    pub fn complexify(&self) -> Poly<Cplx<S>> {
        Poly { c: self.c.iter().map(|a| Cplx::real(a.clone())).collect() }
    }

    /// Number of distinct real roots, by a Sturm sequence (exact mode).
    pub fn distinct_real_roots(&self) -> usize {
        if self.is_constant() {
            return 0;
        }
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            let r = seq[n - 2].divrem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&-S::one()));
        }
        let sign_changes = |signs: Vec<i32>| {
            let s: Vec<i32> = signs.into_iter().filter(|s| *s != 0).collect();
            s.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let at_pos = seq.iter().map(|p| p.lead().sign(1.0)).collect();
        let at_neg = seq
            .iter()
            .map(|p| {
                let s = p.lead().sign(1.0);
                if p.degree().unwrap_or(0) % 2 == 1 {
                    -s
                } else {
                    s
                }
            })
            .collect();
        sign_changes(at_neg) - sign_changes(at_pos)
    }
}

/// A root of a polynomial: exact when it could be verified in the backend,
/// otherwise a float approximation.
#[derive(Clone, Debug, PartialEq)]
pub enum Root<S> {
    Exact(Cplx<S>),
    Approx(f64, f64),
}

impl<S: Scalar> Root<S> {
    pub fn c64(&self) -> (f64, f64) {
        match self {
            Root::Exact(z) => z.to_c64(),
            Root::Approx(a, b) => (*a, *b),
        }
    }
    pub fn exact(&self) -> Option<&Cplx<S>> {
        match self {
            Root::Exact(z) => Some(z),
            Root::Approx(..) => None,
        }
    }
}

/// `~` marks an approximate root.
impl<S: Scalar> std::fmt::Display for Root<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Root::Exact(z) => write!(f, "{z}"),
            Root::Approx(a, b) if *b == 0.0 => write!(f, "~{a}"),
            Root::Approx(a, b) => write!(f, "~{a}{b:+}i"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootMult<S> {
    pub root: Root<S>,
    pub mult: usize,
}

type C = Cplx<f64>;

fn c(re: f64, im: f64) -> C {
    Cplx { re, im }
}

/// Durand–Kerner iteration on the float image of a polynomial.
pub fn numeric_roots<T: Field>(p: &Poly<T>) -> Vec<(f64, f64)> {
    let Some(n) = p.degree() else { return vec![] };
    if n == 0 {
        return vec![];
    }
    let lead = {
        let (a, b) = p.lead().to_c64();
        c(a, b)
    };
    let coeffs: Vec<C> = p
        .coeffs()
        .iter()
        .map(|a| {
            let (x, y) = a.to_c64();
            c(x, y) / lead.clone()
        })
        .collect();
    let eval = |z: &C| coeffs.iter().rev().fold(c(0.0, 0.0), |acc, a| acc * z.clone() + a.clone());
    let radius = 1.0 + coeffs[..n].iter().map(|a| a.re.hypot(a.im)).fold(0.0, f64::max);
    let seed = c(0.4, 0.9);
    let mut z: Vec<C> = (0..n)
        .map(|k| {
            let mut w = c(1.0, 0.0);
            for _ in 0..k {
                w = w * seed.clone();
            }
            w * c(radius.min(10.0), 0.0)
        })
        .collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let mut den = c(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den = den * (z[i].clone() - z[j].clone());
                }
            }
            if den.re == 0.0 && den.im == 0.0 {
                den = c(1e-300, 0.0);
            }
            let step = eval(&z[i]) / den;
            delta = delta.max(step.re.hypot(step.im));
            z[i] = z[i].clone() - step;
        }
        if delta < 1e-16 {
            break;
        }
    }
    z.into_iter().map(|w| (w.re, w.im)).collect()
}

fn lift_root<S: Scalar>(z: (f64, f64), f: &Poly<Cplx<S>>) -> Option<Cplx<S>> {
    let im_guess = if z.1.abs() < 1e-9 * z.0.abs().max(1.0) { 0.0 } else { z.1 };
    let ok = |re: &S, im: &S| f.eval(&Cplx::new(re.clone(), im.clone())).is_zero();
    let re = S::lift(z.0, &|re| S::lift(im_guess, &|im| ok(re, im)).is_some())?;
    let im = S::lift(im_guess, &|im| ok(&re, im))?;
    Some(Cplx::new(re, im))
}

/// Roots with multiplicities. Exact mode decomposes square-free first and
/// verifies every lifted root exactly; float mode clusters numeric roots at
/// `cbrt(tau)` and refuses to guess inside the ambiguity band.
pub fn roots<S: Scalar>(p: &Poly<Cplx<S>>) -> Result<Vec<RootMult<S>>> {
    if S::EXACT {
        let mut out = Vec::new();
        for (f, m) in p.squarefree_factors() {
            if f.degree() == Some(1) {
                let r = -f.coeffs()[0].clone() / f.coeffs()[1].clone();
                out.push(RootMult { root: Root::Exact(r), mult: m });
                continue;
            }
            for z in numeric_roots(&f) {
                let root = match lift_root::<S>(z, &f) {
                    Some(r) => Root::Exact(r),
                    None => Root::Approx(z.0, z.1),
                };
                out.push(RootMult { root, mult: m });
            }
        }
        return Ok(out);
    }
    let zs = numeric_roots(p);
    cluster_float(zs)
}

fn cluster_float<S: Scalar>(zs: Vec<(f64, f64)>) -> Result<Vec<RootMult<S>>> {
    let s = zs.iter().map(|z| z.0.hypot(z.1)).fold(1.0, f64::max);
    // an m-fold root splits like eps^(1/m); cube root covers the multiplicities met here
    let merge = tolerance().cbrt() * s;
    let n = zs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = (zs[i].0 - zs[j].0).hypot(zs[i].1 - zs[j].1);
            if d <= merge {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            } else if d <= 10.0 * merge {
                return Err(Error::Ambiguous(format!(
                    "roots {:?} and {:?} are {:.3e} apart, inside the tolerance band",
                    zs[i], zs[j], d
                )));
            }
        }
    }
    let mut groups: Vec<(usize, Vec<(f64, f64)>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(k, _)| *k == r) {
            Some((_, g)) => g.push(zs[i]),
            None => groups.push((r, vec![zs[i]])),
        }
    }
    Ok(groups
        .into_iter()
        .map(|(_, g)| {
            let k = g.len() as f64;
            let re = g.iter().map(|z| z.0).sum::<f64>() / k;
            let im = g.iter().map(|z| z.1).sum::<f64>() / k;
            let im = if im.abs() <= merge { 0.0 } else { im };
            RootMult {
                root: match (S::lift(re, &|_| true), S::lift(im, &|_| true)) {
                    (Some(a), Some(b)) => Root::Exact(Cplx::new(a, b)),
                    _ => Root::Approx(re, im),
                },
                mult: g.len(),
            }
        })
        .collect())
}

/// Roots of a real polynomial, with realness decided exactly (Sturm) in
/// rational mode and by tolerance in float mode.
pub fn real_poly_roots<S: Scalar>(p: &Poly<S>) -> Result<Vec<RootMult<S>>> {
    let mut rs = roots(&p.complexify())?;
    if S::EXACT {
        // force approximations of real roots onto the real axis
        let sq: Poly<S> = p.squarefree_factors().into_iter().fold(Poly::constant(S::one()), |acc, (f, _)| {
            acc.mul(&f)
        });
        let n_real = sq.distinct_real_roots();
        let mut approx: Vec<usize> = (0..rs.len()).filter(|&i| rs[i].root.exact().is_none()).collect();
        let exact_real = rs.iter().filter(|r| r.root.exact().is_some_and(|z| z.im.is_zero())).count();
        approx.sort_by(|&a, &b| rs[a].root.c64().1.abs().total_cmp(&rs[b].root.c64().1.abs()));
        for (k, &i) in approx.iter().enumerate() {
            if k < n_real.saturating_sub(exact_real) {
                let (re, _) = rs[i].root.c64();
                rs[i].root = Root::Approx(re, 0.0);
            }
        }
    }
    Ok(rs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi, Q};

    fn p(c: &[i64]) -> Poly<Q> {
        Poly::new(c.iter().map(|&x| qi(x)).collect())
    }

    #[test]
    fn yun_factors() {
        // (x-1)^2 (x+2)^3 (x-3)
        let f = Poly::linear(qi(1))
            .mul(&Poly::linear(qi(1)))
            .mul(&Poly::linear(qi(-2)).mul(&Poly::linear(qi(-2))).mul(&Poly::linear(qi(-2))))
            .mul(&Poly::linear(qi(3)));
        let fs = f.squarefree_factors();
        let mults: Vec<usize> = fs.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![1, 2, 3]);
        assert_eq!(fs[1].0, Poly::linear(qi(1)));
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(p(&[-2, 0, 1]).distinct_real_roots(), 2);
        assert_eq!(p(&[1, 0, 1]).distinct_real_roots(), 0);
        assert_eq!(p(&[0, -1, 0, 1]).distinct_real_roots(), 3);
    }

    #[test]
    fn exact_roots_found() {
        // (x - 5/2)(x + 7/2)(x^2 + 1)
        let f = Poly::linear(q(5, 2)).mul(&Poly::linear(q(-7, 2))).mul(&p(&[1, 0, 1]));
        let rs = real_poly_roots(&f).unwrap();
        assert_eq!(rs.len(), 4);
        let exact: Vec<_> = rs.iter().filter_map(|r| r.root.exact().cloned()).collect();
        assert!(exact.contains(&Cplx::real(q(5, 2))));
        assert!(exact.contains(&Cplx::new(qi(0), qi(1))));
    }

    #[test]
    fn irrational_roots_stay_approximate() {
        let rs = real_poly_roots(&p(&[-2, 0, 1])).unwrap();
        assert!(rs.iter().all(|r| r.root.exact().is_none()));
        assert!(rs.iter().all(|r| r.root.c64().1 == 0.0));
    }

    #[test]
    fn float_clusters_multiple_roots() {
        let f: Poly<f64> = Poly::new(vec![-1.0, 3.0, -3.0, 1.0]); // (x-1)^3
        let rs = real_poly_roots(&f).unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].mult, 3);
    }
}
