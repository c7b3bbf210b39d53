//! Dense row-major matrices over any [`Field`], with elimination-based rank,
//! null spaces, inverses and characteristic polynomials.

use std::ops::{Index, IndexMut};

use crate::poly::Poly;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type Vector<T> = Vec<T>;

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Field> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: &[Vector<T>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        Self::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn diag(d: &[T]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vector<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vector<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[T]) {
        for (i, x) in v.iter().enumerate() {
            self[(i, j)] = x.clone();
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() && T::EXACT {
                    continue;
                }
                for j in 0..o.cols {
                    let t = a.clone() * o[(k, j)].clone();
                    let cur = std::mem::replace(&mut out[(i, j)], T::zero());
                    out[(i, j)] = cur + t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vector<T> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(T::zero(), |acc, j| acc + self[(i, j)].clone() * v[j].clone())
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    /// `[a, b] = ab - ba`
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(Field::magnitude).fold(0.0, f64::max)
    }

    pub fn is_zero_at(&self, scale: f64) -> bool {
        self.data.iter().all(|x| x.negligible(scale))
    }

    pub fn is_zero(&self) -> bool {
        self.is_zero_at(1.0)
    }

    /// Entrywise equality, exact for rationals, relative to the larger operand for floats.
    pub fn approx_eq(&self, o: &Self) -> bool {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return false;
        }
        let scale = self.max_magnitude().max(o.max_magnitude());
        self.data.iter().zip(&o.data).all(|(a, b)| (a.clone() - b.clone()).negligible(scale))
    }

    /// Reduced row echelon form with magnitude pivoting; returns pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        self.rref_at(self.max_magnitude())
    }

    /// As [`Mat::rref`], judging pivots against `scale` instead of the
    /// matrix's own size; `A - λI` built from a large `A` needs this.
    pub fn rref_at(&self, scale: f64) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut best = None;
            let mut best_mag = -1.0;
            for i in r..m.rows {
                if m[(i, c)].negligible(scale) {
                    continue;
                }
                let mag = m[(i, c)].magnitude();
                if best.is_none() || (!T::EXACT && mag > best_mag) {
                    best = Some(i);
                    best_mag = mag;
                    if T::EXACT {
                        break;
                    }
                }
            }
            let Some(p) = best else {
                for i in r..m.rows {
                    m[(i, c)] = T::zero();
                }
                continue;
            };
            m.swap_rows(r, p);
            let inv = T::one() / m[(r, c)].clone();
            for j in c..m.cols {
                let v = m[(r, j)].clone() * inv.clone();
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m[(i, c)].clone();
                if f.is_zero() && T::EXACT {
                    continue;
                }
                for j in c..m.cols {
                    let v = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    m[(i, j)] = v;
                }
                m[(i, c)] = T::zero();
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self x = 0}`.
    pub fn nullspace(&self) -> Vec<Vector<T>> {
        self.nullspace_at(self.max_magnitude())
    }

    pub fn nullspace_at(&self, scale: f64) -> Vec<Vector<T>> {
        let (r, pivots) = self.rref_at(scale);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }

    /// Solve `self x = b` for one solution, if consistent.
    pub fn solve(&self, b: &[T]) -> Option<Vector<T>> {
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn det(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let scale = self.max_magnitude();
        let mut det = T::one();
        for c in 0..n {
            let mut p = None;
            let mut best = -1.0;
            for i in c..n {
                let mag = m[(i, c)].magnitude();
                if !m[(i, c)].negligible(scale) && (p.is_none() || (!T::EXACT && mag > best)) {
                    p = Some(i);
                    best = mag;
                    if T::EXACT {
                        break;
                    }
                }
            }
            let Some(p) = p else { return T::zero() };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = det * piv.clone();
            for i in c + 1..n {
                let f = m[(i, c)].clone() / piv.clone();
                for j in c..n {
                    let v = m[(i, j)].clone() - f.clone() * m[(c, j)].clone();
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    /// `det(x I - self)` by Faddeev–LeVerrier.
    pub fn charpoly(&self) -> Poly<T> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = T::one();
        let mut m = Self::zeros(n, n);
        let id = Self::identity(n);
        let mut c = T::one();
        for k in 1..=n {
            m = self.mul(&m.add(&id.scale(&c)));
            c = -(m.trace() / T::from_i64(k as i64));
            coeffs[n - k] = c.clone();
        }
        Poly::new(coeffs)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.rows), |acc, _| acc.mul(self))
    }
}

pub fn dot<T: Field>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn vadd<T: Field>(a: &[T], b: &[T]) -> Vector<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn vsub<T: Field>(a: &[T], b: &[T]) -> Vector<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vscale<T: Field>(a: &[T], s: &T) -> Vector<T> {
    a.iter().map(|x| x.clone() * s.clone()).collect()
}

pub fn unit<T: Field>(n: usize, i: usize) -> Vector<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}

pub fn vmax_magnitude<T: Field>(v: &[T]) -> f64 {
    v.iter().map(Field::magnitude).fold(0.0, f64::max)
}

pub fn vis_zero<T: Field>(v: &[T], scale: f64) -> bool {
    v.iter().all(|x| x.negligible(scale))
}

/// Incrementally maintained echelon basis of a subspace of `T^d`, used to
/// extract maximal independent subsets and test span membership.
#[derive(Clone, Debug)]
pub struct SpanBuilder<T> {
    dim: usize,
    rows: Vec<(usize, Vector<T>)>,
    scale: f64,
}

impl<T: Field> SpanBuilder<T> {
    pub fn new(dim: usize) -> Self {
        SpanBuilder { dim, rows: Vec::new(), scale: 0.0 }
    }

    pub fn with_scale(dim: usize, scale: f64) -> Self {
        SpanBuilder { dim, rows: Vec::new(), scale }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[T]) -> Vector<T> {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            let f = w[*p].clone();
            if f.is_zero() && T::EXACT {
                continue;
            }
            for j in 0..self.dim {
                w[j] = w[j].clone() - f.clone() * row[j].clone();
            }
        }
        w
    }

    pub fn contains(&self, v: &[T]) -> bool {
        let scale = self.scale.max(vmax_magnitude(v));
        vis_zero(&self.reduce(v), scale)
    }

    /// Adds `v` if it is independent of what is already spanned.
    pub fn insert(&mut self, v: &[T]) -> bool {
        assert_eq!(v.len(), self.dim);
        let scale = self.scale.max(vmax_magnitude(v));
        let w = self.reduce(v);
        let mut piv = None;
        let mut best = -1.0;
        for (j, x) in w.iter().enumerate() {
            if x.negligible(scale) {
                continue;
            }
            let m = x.magnitude();
            if piv.is_none() || (!T::EXACT && m > best) {
                piv = Some(j);
                best = m;
                if T::EXACT {
                    break;
                }
            }
        }
        let Some(p) = piv else { return false };
        let inv = T::one() / w[p].clone();
        let w: Vector<T> = w.into_iter().map(|x| x * inv.clone()).collect();
        for (_, row) in self.rows.iter_mut() {
            let f = row[p].clone();
            if f.is_zero() && T::EXACT {
                continue;
            }
            for j in 0..self.dim {
                row[j] = row[j].clone() - f.clone() * w[j].clone();
            }
        }
        self.rows.push((p, w));
        self.scale = self.scale.max(scale);
        true
    }
}
