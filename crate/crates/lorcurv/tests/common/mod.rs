//! Random exact data shared by the acceptance and property suites.
#![allow(dead_code)]

use lorcurv::lie::MetricLieAlgebra;
use lorcurv::pseudo::InnerProduct;
use lorcurv::scalar::{q, qi};
use lorcurv::{Mat, Q};
use rand::Rng;

pub fn rand_q<R: Rng>(rng: &mut R) -> Q {
    q(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn rand_nonzero_q<R: Rng>(rng: &mut R) -> Q {
    loop {
        let x = rand_q(rng);
        if x != qi(0) {
            return x;
        }
    }
}

/// Integer matrix with determinant 1, as a product of elementary shears.
pub fn unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> Mat<Q> {
    let mut p = Mat::<Q>::identity(n);
    for _ in 0..steps {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let f = qi(rng.gen_range(-2..=2));
        let e = Mat::from_fn(n, n, |r, c| if r == i && c == j { f.clone() } else if r == c { qi(1) } else { qi(0) });
        p = e.mul(&p);
    }
    p
}

/// `Pᵀ diag(signs) P` for unimodular `P`, so `|det G| = 1`.
pub fn rand_metric<R: Rng>(rng: &mut R, signs: &[i64]) -> InnerProduct<Q> {
    let n = signs.len();
    let p = unimodular(rng, n, 2 * n);
    let d = Mat::diag(&signs.iter().map(|&s| qi(s)).collect::<Vec<_>>());
    InnerProduct::new(p.transpose().mul(&d).mul(&p)).unwrap()
}

/// Euclidean or Lorentzian signs, the negative entry placed at random.
pub fn rand_signs<R: Rng>(rng: &mut R, n: usize) -> Vec<i64> {
    let mut s = vec![1; n];
    if n > 1 && rng.gen_bool(0.6) {
        s[rng.gen_range(0..n)] = -1;
    }
    s
}

type Brackets = Vec<(usize, usize, Vec<Q>)>;

fn vec_with(n: usize, entries: &[(usize, Q)]) -> Vec<Q> {
    let mut v = vec![qi(0); n];
    for (i, x) in entries {
        v[*i] = x.clone();
    }
    v
}

/// `ℝ ⋉_D ℝ^{n-1}`: `[e0, ei] = D ei`.
fn semidirect(n: usize, d: &Mat<Q>) -> Brackets {
    (1..n).map(|i| (0, i, std::iter::once(qi(0)).chain(d.col(i - 1)).collect())).collect()
}

/// Brackets of a random Lie algebra of dimension `n`, drawn from shapes that
/// satisfy Jacobi by construction.
pub fn rand_brackets<R: Rng>(rng: &mut R, n: usize) -> Brackets {
    let m = n - 1;
    match rng.gen_range(0..6) {
        0 | 1 => semidirect(n, &Mat::from_fn(m, m, |_, _| rand_q(rng))),
        // hyperbolic-space type, the commonest semi-symmetric source
        2 => semidirect(n, &Mat::identity(m).scale(&rand_nonzero_q(rng))),
        3 if n == 4 => {
            // ℝ² ⋉ ℝ² with commuting actions D and pD + rI
            let d = Mat::from_fn(2, 2, |_, _| rand_q(rng));
            let d2 = d.scale(&rand_q(rng)).add(&Mat::identity(2).scale(&rand_q(rng)));
            let act = |a: usize, m: &Mat<Q>| {
                (2..4).map(move |i| (a, i, [vec![qi(0), qi(0)], m.col(i - 2)].concat())).collect::<Vec<_>>()
            };
            [act(0, &d), act(1, &d2)].concat()
        }
        4 if n >= 3 => {
            // Heisenberg, times an abelian factor
            vec![(0, 1, vec_with(n, &[(2, rand_nonzero_q(rng))]))]
        }
        5 if n >= 3 => {
            // sl(2) or so(3), times an abelian factor
            let s = if rng.gen_bool(0.5) { qi(1) } else { qi(-1) };
            vec![
                (0, 1, vec_with(n, &[(2, qi(1))])),
                (0, 2, vec_with(n, &[(1, -s.clone())])),
                (1, 2, vec_with(n, &[(0, s)])),
            ]
        }
        _ => semidirect(n, &Mat::from_fn(m, m, |r, c| if r <= c { rand_q(rng) } else { qi(0) })),
    }
}

pub fn rand_algebra<R: Rng>(rng: &mut R, n: usize, signs: &[i64]) -> MetricLieAlgebra<Q> {
    let ip = rand_metric(rng, signs);
    MetricLieAlgebra::from_brackets(ip, &rand_brackets(rng, n)).expect("generated brackets are well-formed")
}
