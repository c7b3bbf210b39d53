//! Every printed bracket family of the classification, with the properties
//! claimed for it, rational sampling plans, and a verifier that pushes each
//! sample through [`report::analyze`](crate::report::analyze).
//!
//! Ids: `plane.*` (two-dimensional cases), `3d-cc.N` (three-dimensional
//! constant curvature), `S4lambda.N` (four-dimensional Einstein),
//! `S40.N` / `S40.h1` (four-dimensional Ricci-isotropic, `dim h(K)` = 2 / 1),
//! `S30.i|ii` (three-dimensional Ricci-isotropic), product types
//! `S30lambda`, `S4mulambda`, `S40-1lambda.N`, `S40-2lambda`, Komrakov pairs
//! `komrakov.<label>`, their Ricci-flat specialisations `table1.<label>`, and
//! metadata-only rows `table1.meta.<label>`.

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homogeneous::HomogeneousPair;
use crate::lie::{LeviCivita, MetricLieAlgebra};
use crate::matrix::{unit, vis_zero, Mat, Vector};
use crate::petrov::EinsteinBranch;
use crate::pseudo::{wedge, InnerProduct};
use crate::report::{analyze, same_span, Analysis, Subject};
use crate::scalar::{fmt_q, q, qi, Mode, Scalar, Q};

pub type Params = BTreeMap<String, Q>;

/// Parameter map from `(name, value)` pairs.
pub fn params(kv: &[(&str, Q)]) -> Params {
    kv.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum RicciClaim {
    Einstein(Q),
    /// `Ric ≠ 0`, `Ric² = 0`.
    Isotropic,
    /// `K = 0`.
    Flat,
    /// `Ric = 0`.
    RicciFlat,
    /// Nonzero-dimensional blocks `(eigenvalue, dim)` of the Ricci splitting.
    Split(Vec<(Q, usize)>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneCase {
    Abelian,
    Euclid,
    LorPos,
    LorNeg,
    Null,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expectation {
    pub lorentzian: bool,
    pub semi_symmetric: bool,
    pub ricci: RicciClaim,
    /// Allowed values of `dim h(K)`.
    pub dim_hk: Option<Vec<usize>>,
    pub dim_holonomy: Option<usize>,
    pub holonomy_equals_hk: Option<bool>,
    /// `h` spanned by these basis wedges.
    pub holonomy_span: Option<Vec<(usize, usize)>>,
    pub locally_symmetric: Option<bool>,
    pub second_order_symmetric: Option<bool>,
    pub petrov: Option<EinsteinBranch>,
    /// `A + B` of the isotropic normal form.
    pub normal_form_sum: Option<Q>,
    /// Levi-Civita products between different Ricci blocks vanish.
    pub blocks_decouple: bool,
    /// `L` and `K` equal the listed closed forms for `[e,f]` with coefficient λ.
    pub plane_closed_form: Option<(PlaneCase, Q)>,
    pub statement: String,
}

impl Expectation {
    fn new(lorentzian: bool, ricci: RicciClaim, statement: &str) -> Self {
        Expectation {
            lorentzian,
            semi_symmetric: true,
            ricci,
            dim_hk: None,
            dim_holonomy: None,
            holonomy_equals_hk: None,
            holonomy_span: None,
            locally_symmetric: None,
            second_order_symmetric: None,
            petrov: None,
            normal_form_sum: None,
            blocks_decouple: false,
            plane_closed_form: None,
            statement: statement.to_string(),
        }
    }
    fn hk(mut self, dims: &[usize]) -> Self {
        self.dim_hk = Some(dims.to_vec());
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    /// Satisfies every printed condition; must match the expectation.
    Sample,
    /// Violates a printed condition; the family's classification must fail
    /// (or the datum must be rejected outright).
    Boundary,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub params: Params,
    pub role: Role,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kom {
    K11_1,
    K11_2,
    K11_5,
    K14_2,
    K14_9,
    K14_10,
    K14_11,
    K14_12,
    K14_13,
    K14_14,
    K14_15,
    K14_18,
    K14_21,
    K14_24,
    K25_2,
    K25_3,
    K25_4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Def {
    Plane(PlaneCase),
    Cc3(u8),
    S4Lambda(u8),
    S40(u8),
    H1,
    Pr30(u8),
    S30Lambda,
    S4MuLambda,
    S401Lambda(u8),
    S402Lambda,
    Komrakov(Kom),
    /// Ricci-flat row of the flat-pair table, on the bracket template of a pair.
    Flat(Kom, u8),
    Meta,
}

#[derive(Clone, Debug)]
pub struct Family {
    pub id: String,
    pub params: Vec<&'static str>,
    pub statement: &'static str,
    /// Why a row has no instances, or a caveat about its encoding.
    pub note: Option<&'static str>,
    def: Def,
    pub samples: Vec<Sample>,
}

impl Family {
    pub fn is_metadata(&self) -> bool {
        self.def == Def::Meta
    }

    pub fn instantiate<S: Scalar>(&self, p: &Params) -> Result<Subject<S>> {
        check_conditions(self.def, p)?;
        self.instantiate_unchecked(p)
    }

    /// Builds the brackets without checking the printed conditions.
    pub fn instantiate_unchecked<S: Scalar>(&self, p: &Params) -> Result<Subject<S>> {
        let subj = build::<S>(self.def, p)?;
        let bind: Vec<(String, String)> = p.iter().map(|(k, v)| (k.clone(), fmt_q(v))).collect();
        Ok(match subj {
            Subject::Lie(g) => Subject::Lie(g.named(self.id.clone()).with_params(bind)),
            Subject::Pair { pair, metric } => {
                Subject::Pair { pair: pair.named(self.id.clone()).with_params(bind), metric }
            }
        })
    }

    pub fn expected(&self, p: &Params) -> Result<Expectation> {
        check_conditions(self.def, p)?;
        expectation(self.def, self.statement, p)
    }
}

// ---------------------------------------------------------------------------
// parameters and small builders

fn get(p: &Params, k: &str) -> Result<Q> {
    p.get(k).cloned().ok_or_else(|| Error::Invalid(format!("missing parameter `{k}`")))
}

fn sign_param(p: &Params, k: &str) -> Result<Q> {
    let v = get(p, k)?;
    if v == qi(1) || v == qi(-1) {
        Ok(v)
    } else {
        Err(Error::Precondition(format!("`{k}` must be 1 or -1")))
    }
}

fn cv<S: Scalar>(x: &Q) -> S {
    S::from_rational(x)
}

/// `√x` in the backend; exact mode insists on a rational square.
fn root<S: Scalar>(x: &Q, what: &str) -> Result<S> {
    if x < &qi(0) {
        return Err(Error::Precondition(format!("{what} = {} is negative", fmt_q(x))));
    }
    cv::<S>(x).sqrt().ok_or_else(|| {
        Error::Irrational(format!("√({what}) = √{} is irrational; use float mode", fmt_q(x)))
    })
}

fn need(cond: bool, text: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(format!("printed condition `{text}` violated")))
    }
}

fn v<S: Scalar>(n: usize, terms: &[(usize, S)]) -> Vector<S> {
    let mut out = vec![S::zero(); n];
    for (i, x) in terms {
        out[*i] = out[*i].clone() + x.clone();
    }
    out
}

fn qmat(rows: &[&[Q]]) -> Mat<Q> {
    Mat::from_rows(rows.iter().map(|r| r.to_vec()).collect())
}

fn idiag(d: &[i64]) -> Mat<Q> {
    Mat::diag(&d.iter().map(|&x| qi(x)).collect::<Vec<_>>())
}

/// `<e,e> = <f,f> = <g,h> = 1` on `(e, f, g, h)`.
fn null4() -> Mat<Q> {
    let (o, z) = (qi(1), qi(0));
    qmat(&[&[o.clone(), z.clone(), z.clone(), z.clone()], &[z.clone(), o.clone(), z.clone(), z.clone()], &[z.clone(), z.clone(), z.clone(), o.clone()], &[z.clone(), z.clone(), o, z]])
}

/// `<e,e> = <f,g> = 1` on `(e, f, g)`.
fn null3() -> Mat<Q> {
    let (o, z) = (qi(1), qi(0));
    qmat(&[&[o.clone(), z.clone(), z.clone()], &[z.clone(), z.clone(), o.clone()], &[z.clone(), o, z]])
}

type Br<S> = Vec<(usize, usize, Vector<S>)>;

fn lie<S: Scalar>(gram: Mat<Q>, br: Br<S>, names: &[&str]) -> Result<Subject<S>> {
    let ip = InnerProduct::new(gram.map(cv::<S>))?;
    let g = MetricLieAlgebra::from_brackets(ip, &br)?;
    let g = if names.len() == g.dim() { g.with_basis_names(names.iter().map(|s| s.to_string()).collect()) } else { g };
    Ok(Subject::Lie(g))
}

// ---------------------------------------------------------------------------
// printed conditions

fn check_conditions(def: Def, p: &Params) -> Result<()> {
    let z = qi(0);
    match def {
        Def::Plane(PlaneCase::Abelian) | Def::Meta => Ok(()),
        Def::Plane(_) => need(get(p, "lambda")? != z, "λ≠0"),
        Def::Cc3(i) => {
            let l = get(p, "lambda")?;
            match i {
                2 => need(l > z, "λ>0"),
                4 => {
                    need(l < z, "λ<0")?;
                    need(get(p, "a")? < z, "a<0")
                }
                _ => need(l < z, "λ<0"),
            }
        }
        Def::S4Lambda(i) => {
            let a = get(p, "a")?;
            need(a != z, "a≠0")?;
            match i {
                1 | 6 => {
                    sign_param(p, "eps")?;
                    if i == 1 {
                        sign_param(p, "delta")?;
                    }
                    Ok(())
                }
                2 => {
                    let (b, d) = (get(p, "b")?, sign_param(p, "delta")?);
                    sign_param(p, "eps")?;
                    need(b != -(d * a.clone()), "b≠-δa")?;
                    need(a.clone() * a.clone() >= get(p, "b")? * get(p, "b")?, "a²≥b²")
                }
                3 => {
                    let b = get(p, "b")?;
                    sign_param(p, "eps")?;
                    need(b != z, "b≠0")?;
                    need(b != a && b != -a.clone(), "b≠±a")?;
                    need(a.clone() * a >= b.clone() * b, "a²≥b²")
                }
                4 => {
                    let b = get(p, "b")?;
                    sign_param(p, "eps")?;
                    need(a.clone() * a >= b.clone() * b, "a²≥b²")
                }
                _ => get(p, "b").map(|_| ()),
            }
        }
        Def::S40(i) => {
            let a = get(p, "a")?;
            match i {
                1 => {
                    sign_param(p, "eps")?;
                    let b = get(p, "b")?;
                    need(a != b, "a≠b")?;
                    need(a * b + q(1, 2) >= z, "ab+½≥0")
                }
                2 => {
                    need(a != z, "a≠0")?;
                    let (b, c) = (get(p, "b")?, get(p, "c")?);
                    let t = (qi(2) * b * c - qi(1)) / (qi(2) * a.clone());
                    need(a != t, "a-(2bc-1)/(2a)≠0")
                }
                3 => need(a != z, "a≠0"),
                4 => sign_param(p, "eps").map(|_| ()),
                _ => {
                    let (b, c) = (get(p, "b")?, get(p, "c")?);
                    need(b.clone() + c.clone() != z, "b+c≠0")?;
                    need(b.clone() * b != c.clone() * c, "b²≠c²")
                }
            }
        }
        Def::H1 => {
            let a = get(p, "a")?;
            need(a != z, "a≠0")?;
            need(qi(2) * a.clone() * a != qi(1), "2a²≠1")
        }
        Def::Pr30(_) => need(get(p, "a")? != z, "a≠0"),
        Def::S30Lambda | Def::S402Lambda => need(get(p, "a")? != z, "a≠0"),
        Def::S4MuLambda => {
            need(get(p, "a")? != z, "a≠0")?;
            need(get(p, "b")? != z, "b≠0")
        }
        Def::S401Lambda(i) => {
            let l = get(p, "lambda")?;
            if i == 1 {
                need(l < z, "λ<0")
            } else {
                need(l > z, "λ>0")
            }
        }
        Def::Komrakov(k) => komrakov_conditions(k, p),
        Def::Flat(k, _) => flat_conditions(k, p),
    }
}

fn b0_ok(p: &Params) -> Result<()> {
    need(get(p, "a")? * get(p, "b")? != qi(0), "ab≠0")
}

fn b1_ok(p: &Params) -> Result<()> {
    need(get(p, "a")? * get(p, "c")? != qi(0), "ac≠0")
}

fn b2_ok(p: &Params) -> Result<()> {
    need(get(p, "a")? != qi(0), "a≠0")
}

fn komrakov_conditions(k: Kom, p: &Params) -> Result<()> {
    let z = qi(0);
    use Kom::*;
    match k {
        K11_1 | K11_5 => b0_ok(p),
        K11_2 => {
            b0_ok(p)?;
            need(get(p, "p")? != qi(1), "p≠1")
        }
        K14_2 => b1_ok(p),
        K14_9 | K14_10 | K14_11 | K14_12 | K14_13 | K14_14 => {
            b1_ok(p)?;
            let (a, c, r) = (get(p, "a")?, get(p, "c")?, get(p, "r")?);
            match k {
                K14_9 => {
                    let pp = get(p, "p")?;
                    need(c + qi(2) * a * (r + pp.clone() * pp.clone() + pp) != z, "c+2ra+2ap²+2pa≠0")
                }
                K14_10 => {
                    let pp = get(p, "p")?;
                    need(r + pp.clone() * pp.clone() + pp != z, "r+p²+p≠0")
                }
                K14_11 => need(c + qi(2) * r * a != z, "c+2ra≠0"),
                K14_12 => need(r != z, "r≠0"),
                K14_13 => need(c + qi(2) * a * (r + qi(1)) != z, "c+2ra+2a≠0"),
                _ => need(r + qi(1) != z, "r+1≠0"),
            }
        }
        K14_15 | K14_18 => {
            b1_ok(p)?;
            let e = get(p, "eps")?;
            need(e == z || e == qi(1) || e == qi(-1), "ε=0,1,-1")?;
            need(get(p, "c")? + qi(2) * e * get(p, "a")? != z, "c+2εa≠0")
        }
        K14_21 | K14_24 => {
            b1_ok(p)?;
            sign_param(p, "eps").map(|_| ())
        }
        K25_2 => {
            b2_ok(p)?;
            let (pp, r, s) = (get(p, "p")?, get(p, "r")?, get(p, "s")?);
            need(r >= z, "r≥0")?;
            need(s >= z, "s≥0")?;
            need(pp + r.clone() * r != z, "p+r²≠0")
        }
        K25_3 => {
            b2_ok(p)?;
            need(qi(4) * get(p, "r")? != qi(1), "4r-1≠0")?;
            need(get(p, "s")? >= z, "s≥0")
        }
        K25_4 => {
            b2_ok(p)?;
            need(get(p, "s")? >= z, "s≥0")?;
            sign_param(p, "eps").map(|_| ())
        }
    }
}

/// Flat-table conditions: the pair's own metric condition plus the row's
/// specialisation.
fn flat_conditions(k: Kom, p: &Params) -> Result<()> {
    use Kom::*;
    let z = qi(0);
    match k {
        K14_2 => {
            b1_ok(p)?;
            need(get(p, "b")? == z, "b=0")
        }
        K14_9 => {
            b1_ok(p)?;
            let (a, c, r, pp) = (get(p, "a")?, get(p, "c")?, get(p, "r")?, get(p, "p")?);
            need(c + qi(2) * a * (pp.clone() * pp.clone() + pp + r) == z, "c=-2a(p²+p+r)")
        }
        K14_10 => {
            b1_ok(p)?;
            let (r, pp) = (get(p, "r")?, get(p, "p")?);
            need(pp.clone() * pp.clone() + pp + r == z, "p²+p+r=0")
        }
        K14_11 => {
            b1_ok(p)?;
            need(get(p, "c")? + qi(2) * get(p, "a")? * get(p, "r")? == z, "c=-2ar")
        }
        K14_12 => {
            b1_ok(p)?;
            need(get(p, "r")? == z, "r=0")
        }
        K14_13 => {
            b1_ok(p)?;
            need(get(p, "c")? + qi(2) * get(p, "a")? * (get(p, "r")? + qi(1)) == z, "c=-2a(r+1)")
        }
        K14_14 => {
            b1_ok(p)?;
            need(get(p, "r")? == qi(-1), "r=-1")
        }
        K14_15 | K14_18 => {
            b1_ok(p)?;
            need(get(p, "eps")? == qi(-1), "ε=-1")?;
            need(get(p, "c")? == qi(2) * get(p, "a")?, "c=2a")
        }
        K25_2 => {
            b2_ok(p)?;
            let (pp, r, s) = (get(p, "p")?, get(p, "r")?, get(p, "s")?);
            need(r >= z && s >= z, "r≥0, s≥0")?;
            need(pp + r.clone() * r == z, "p=-r²")
        }
        K25_3 => {
            b2_ok(p)?;
            need(get(p, "s")? >= z, "s≥0")?;
            need(qi(4) * get(p, "r")? == qi(1), "4r=1")
        }
        _ => Err(Error::Invalid("no flat row for this template".into())),
    }
}

// ---------------------------------------------------------------------------
// bracket templates

fn build<S: Scalar>(def: Def, p: &Params) -> Result<Subject<S>> {
    let c = |x: &Q| cv::<S>(x);
    let g = |k: &str| get(p, k);
    match def {
        Def::Meta => Err(Error::Invalid("metadata-only row has no brackets".into())),
        Def::Plane(case) => {
            let l = if case == PlaneCase::Abelian { qi(0) } else { g("lambda")? };
            let (gram, coef) = match case {
                PlaneCase::Abelian => (idiag(&[1, -1]), qi(0)),
                PlaneCase::Euclid => (idiag(&[1, 1]), l),
                PlaneCase::LorPos => (idiag(&[1, -1]), -l),
                PlaneCase::LorNeg => (idiag(&[-1, 1]), l),
                PlaneCase::Null => (qmat(&[&[qi(0), qi(1)], &[qi(1), qi(0)]]), -l),
            };
            lie(gram, vec![(0, 1, v(2, &[(0, c(&coef))]))], &["e", "f"])
        }
        Def::Cc3(i) => {
            let l = g("lambda")?;
            let names = ["e", "f", "g"];
            match i {
                1..=3 => {
                    let rad = if i == 2 { l / qi(2) } else { -l / qi(2) };
                    let s: S = root(&rad, if i == 2 { "λ/2" } else { "-λ/2" })?;
                    let cc = c(&g("c")?);
                    let gram = match i {
                        1 => idiag(&[1, 1, 1]),
                        2 => idiag(&[-1, 1, 1]),
                        _ => idiag(&[1, 1, -1]),
                    };
                    let sign = if i == 3 { -cc.clone() } else { cc.clone() };
                    lie(gram, vec![(0, 1, v(3, &[(1, s.clone()), (2, -cc)])), (0, 2, v(3, &[(1, sign), (2, s)]))], &names)
                }
                _ => {
                    let s: S = root(&(-l / qi(2)), "-λ/2")?;
                    let a = c(&g("a")?);
                    lie(null3(), vec![(0, 1, v(3, &[(1, S::from_i64(2) * s)])), (0, 2, v(3, &[(1, a)]))], &names)
                }
            }
        }
        Def::S4Lambda(i) => s4lambda::<S>(i, p),
        Def::S40(i) => s40::<S>(i, p),
        Def::H1 => {
            let (a, x, y) = (g("a")?, g("x")?, g("y")?);
            let two_a2 = qi(2) * a.clone() * a.clone();
            let ef = (two_a2.clone() + qi(1)) / (qi(2) * a.clone());
            let eh = qi(1) / (qi(2) * a.clone() * (two_a2.clone() - qi(1)));
            let fh = qi(2) * a.clone() * (a.clone() * a - qi(1)) / (two_a2 - qi(1));
            lie(
                null4(),
                vec![
                    (0, 1, v(4, &[(2, c(&ef))])),
                    (0, 3, v(4, &[(1, c(&eh)), (2, c(&x))])),
                    (1, 3, v(4, &[(0, c(&fh)), (2, c(&y))])),
                ],
                &["e", "f", "g", "h"],
            )
        }
        Def::Pr30(i) => {
            let (a, b) = (g("a")?, g("b")?);
            let names = ["e", "f", "g"];
            if i == 1 {
                let fc = (qi(1) + qi(2) * b.clone() * b.clone()) / (qi(2) * a.clone());
                lie(
                    null3(),
                    vec![
                        (0, 1, v(3, &[(1, c(&a))])),
                        (0, 2, v(3, &[(0, c(&b)), (1, c(&fc)), (2, c(&-a.clone()))])),
                        (1, 2, v(3, &[(1, c(&-b))])),
                    ],
                    &names,
                )
            } else {
                let fc = (qi(1) + a.clone() * a.clone()) / a.clone();
                lie(null3(), vec![(0, 2, v(3, &[(0, c(&a)), (1, c(&b))])), (1, 2, v(3, &[(1, c(&fc))]))], &names)
            }
        }
        Def::S30Lambda => {
            let a = g("a")?;
            lie(idiag(&[1, 1, -1]), vec![(1, 2, v(3, &[(1, c(&a))]))], &["u", "e", "f"])
        }
        Def::S4MuLambda => {
            let (a, b) = (g("a")?, g("b")?);
            lie(
                idiag(&[1, 1, 1, -1]),
                vec![(0, 1, v(4, &[(0, c(&a))])), (2, 3, v(4, &[(2, c(&b))]))],
                &["e", "f", "g", "h"],
            )
        }
        Def::S401Lambda(i) => {
            let l = g("lambda")?;
            let cc = c(&g("c")?);
            let (gram, rad) = if i == 1 { (idiag(&[-1, 1, 1, 1]), -l / qi(2)) } else { (idiag(&[1, -1, 1, 1]), l / qi(2)) };
            let s: S = root(&rad, if i == 1 { "-λ/2" } else { "λ/2" })?;
            lie(
                gram,
                vec![(1, 2, v(4, &[(2, s.clone()), (3, -cc.clone())])), (1, 3, v(4, &[(2, cc), (3, s)]))],
                &["u", "e", "f", "g"],
            )
        }
        Def::S402Lambda => {
            let a = g("a")?;
            lie(idiag(&[1, 1, 1, -1]), vec![(0, 1, v(4, &[(0, c(&a))]))], &["e", "f", "g", "h"])
        }
        Def::Komrakov(k) | Def::Flat(k, _) => komrakov::<S>(k, p),
    }
}

fn s4lambda<S: Scalar>(i: u8, p: &Params) -> Result<Subject<S>> {
    let c = |x: &Q| cv::<S>(x);
    let a = get(p, "a")?;
    let n = 4;
    let (e0, e1, e2) = (0, 1, 2);
    let br: Br<S> = match i {
        1 => {
            let (eps, d) = (get(p, "eps")?, get(p, "delta")?);
            vec![
                (0, 1, v(n, &[(e0, c(&(eps.clone() * a.clone())))])),
                (0, 2, v(n, &[(e0, c(&a))])),
                (0, 3, v(n, &[(e0, c(&(d.clone() * a.clone())))])),
                (2, 3, v(n, &[(e1, c(&(qi(-2) * a.clone() * d.clone() * eps))), (e2, c(&(qi(2) * a * d)))])),
            ]
        }
        2 => {
            let (b, eps, d) = (get(p, "b")?, get(p, "eps")?, get(p, "delta")?);
            let s: S = root(&(a.clone() * a.clone() - b.clone() * b.clone()), "a²-b²")?;
            let half = S::one() / S::from_i64(2);
            vec![
                (0, 1, v(n, &[(e0, c(&eps) * s.clone() * half.clone())])),
                (0, 2, v(n, &[(e0, -(c(&d) * c(&eps) * s * half))])),
                (0, 3, v(n, &[(e0, c(&((d.clone() * a.clone() + b.clone()) / qi(2))))])),
                (1, 3, v(n, &[(e1, c(&b)), (e2, c(&(b * d.clone())))])),
                (2, 3, v(n, &[(e1, c(&a)), (e2, c(&(a * d)))])),
            ]
        }
        3 => {
            let (b, eps) = (get(p, "b")?, get(p, "eps")?);
            let s: S = root(&(a.clone() * a.clone() - b.clone() * b.clone()), "a²-b²")?;
            vec![
                (0, 1, v(n, &[(e0, c(&(eps.clone() * a.clone() / b.clone())) * s.clone())])),
                (0, 2, v(n, &[(e0, c(&eps) * s)])),
                (1, 3, v(n, &[(e1, c(&b)), (e2, c(&-a.clone()))])),
                (2, 3, v(n, &[(e1, c(&a)), (e2, c(&(-(a.clone() * a) / b)))])),
            ]
        }
        4 => {
            let (b, eps) = (get(p, "b")?, get(p, "eps")?);
            let s: S = root(&(a.clone() * a.clone() - b.clone() * b.clone()), "a²-b²")?;
            vec![(0, 1, v(n, &[(e0, c(&eps) * s), (e1, c(&b))])), (2, 3, v(n, &[(e2, c(&a))]))]
        }
        5 => {
            let b = get(p, "b")?;
            vec![
                (0, 3, v(n, &[(e0, c(&a))])),
                (1, 3, v(n, &[(e1, c(&a)), (e2, c(&b))])),
                (2, 3, v(n, &[(e1, c(&b)), (e2, c(&a))])),
            ]
        }
        _ => {
            let eps = get(p, "eps")?;
            let t = eps * q(2, 3) * a.clone();
            vec![
                (0, 3, v(n, &[(e0, c(&t))])),
                (1, 3, v(n, &[(e1, c(&t)), (e2, c(&a))])),
                (2, 3, v(n, &[(e1, c(&a)), (e2, c(&t))])),
            ]
        }
    };
    lie(idiag(&[1, 1, -1, 1]), br, &["e1", "e2", "e3", "e4"])
}

fn s40<S: Scalar>(i: u8, p: &Params) -> Result<Subject<S>> {
    let c = |x: &Q| cv::<S>(x);
    let g = |k: &str| get(p, k);
    let n = 4;
    let (e, f, gg) = (0, 1, 2);
    let br: Br<S> = match i {
        1 => {
            let (a, b, x, y, z, eps) = (g("a")?, g("b")?, g("x")?, g("y")?, g("z")?, g("eps")?);
            let s = c(&eps) * root::<S>(&(a.clone() * b.clone() + q(1, 2)), "ab+½")?;
            vec![
                (0, 1, v(n, &[(gg, c(&(a.clone() - b.clone())))])),
                (0, 3, v(n, &[(e, s.clone()), (f, c(&(b + x.clone()))), (gg, c(&z))])),
                (1, 3, v(n, &[(e, c(&(a - x))), (f, s.clone()), (gg, c(&y))])),
                (2, 3, v(n, &[(gg, S::from_i64(2) * s)])),
            ]
        }
        2 => {
            let (a, b, cc, y, z) = (g("a")?, g("b")?, g("c")?, g("y")?, g("z")?);
            let t = (qi(2) * b.clone() * cc.clone() - qi(1)) / (qi(2) * a.clone());
            vec![
                (0, 1, v(n, &[(gg, c(&(a.clone() - t.clone())))])),
                (0, 3, v(n, &[(e, c(&cc)), (f, c(&t)), (gg, c(&z))])),
                (1, 3, v(n, &[(e, c(&a)), (f, c(&b)), (gg, c(&y))])),
                (2, 3, v(n, &[(gg, c(&(cc + b)))])),
            ]
        }
        3 => {
            let (a, x, y) = (g("a")?, g("x")?, g("y")?);
            let k = (qi(2) * a.clone() * a.clone() + qi(1)) / (qi(2) * a.clone());
            vec![
                (0, 3, v(n, &[(e, c(&a)), (f, c(&x)), (gg, c(&a))])),
                (1, 3, v(n, &[(e, c(&-x)), (f, c(&a)), (gg, c(&y))])),
                (2, 3, v(n, &[(gg, c(&k))])),
            ]
        }
        4 => {
            let (a, x, y, z, eps) = (g("a")?, g("x")?, g("y")?, g("z")?, g("eps")?);
            let s = c(&eps) * root::<S>(&((qi(2) * a.clone() * a.clone() + qi(1)) / qi(2)), "(2a²+1)/2")?;
            vec![
                (0, 3, v(n, &[(e, s.clone()), (f, c(&(a.clone() + x.clone()))), (gg, c(&z))])),
                (1, 3, v(n, &[(e, c(&(a - x))), (f, s.clone()), (gg, c(&y))])),
                (2, 3, v(n, &[(gg, S::from_i64(2) * s)])),
            ]
        }
        _ => {
            let (a, b, cc, y, z) = (g("a")?, g("b")?, g("c")?, g("y")?, g("z")?);
            let t = (qi(2) * a.clone() * a.clone() * a.clone() + a.clone() - qi(2) * a.clone() * b.clone() * cc.clone())
                / (b.clone() * b.clone() - cc.clone() * cc.clone());
            let k = (qi(2) * a.clone() * a.clone() + b.clone() * b.clone() + cc.clone() * cc.clone() + qi(1))
                / (b.clone() + cc.clone());
            vec![
                (0, 3, v(n, &[(e, c(&cc)), (f, c(&(a.clone() + t.clone()))), (gg, c(&z))])),
                (1, 3, v(n, &[(e, c(&(a - t))), (f, c(&b)), (gg, c(&y))])),
                (2, 3, v(n, &[(gg, c(&k))])),
            ]
        }
    };
    lie(null4(), br, &["e", "f", "g", "h"])
}

fn komrakov<S: Scalar>(k: Kom, p: &Params) -> Result<Subject<S>> {
    use Kom::*;
    let g = |key: &str| get(p, key);
    let z = qi(0);
    let (r_dim, metric): (usize, Mat<Q>) = match k {
        K11_1 | K11_2 | K11_5 => {
            let (a, b, d) = (g("a")?, g("b")?, g("d")?);
            let rows = [
                [a.clone(), z.clone(), z.clone(), z.clone()],
                [z.clone(), z.clone(), z.clone(), b.clone()],
                [z.clone(), z.clone(), a, z.clone()],
                [z.clone(), b, z.clone(), d],
            ];
            (1, Mat::from_rows(rows.iter().map(|r| r.to_vec()).collect()))
        }
        K25_2 | K25_3 | K25_4 => {
            let (a, b) = (g("a")?, g("b")?);
            let rows = [
                [z.clone(), z.clone(), a.clone(), z.clone()],
                [z.clone(), a.clone(), z.clone(), z.clone()],
                [a.clone(), z.clone(), b, z.clone()],
                [z.clone(), z.clone(), z.clone(), a],
            ];
            (2, Mat::from_rows(rows.iter().map(|r| r.to_vec()).collect()))
        }
        _ => {
            let (a, b, c, d) = (g("a")?, g("b")?, g("c")?, g("d")?);
            let rows = [
                [z.clone(), z.clone(), -a.clone(), z.clone()],
                [z.clone(), a.clone(), z.clone(), z.clone()],
                [-a, z.clone(), b, d.clone()],
                [z.clone(), z.clone(), d, c],
            ];
            (1, Mat::from_rows(rows.iter().map(|r| r.to_vec()).collect()))
        }
    };
    let nn = r_dim + 4;
    let c = |x: &Q| cv::<S>(x);
    let one = S::one();
    let mut br: Br<S> = Vec::new();
    let mut add = |i: usize, j: usize, terms: Vec<(usize, S)>| br.push((i, j, v(nn, &terms)));
    if r_dim == 1 {
        let (e1, u1, u2, u3, u4) = (0, 1, 2, 3, 4);
        match k {
            K11_1 | K11_2 | K11_5 => {
                add(e1, u1, vec![(u3, one.clone())]);
                add(e1, u3, vec![(u1, -one.clone())]);
                match k {
                    K11_5 => add(u1, u3, vec![(u2, one.clone())]),
                    _ => {
                        if k == K11_1 {
                            add(u1, u3, vec![(u2, -one.clone())]);
                        }
                        let pc = if k == K11_1 { S::from_i64(2) } else { c(&g("p")?) };
                        add(u1, u4, vec![(u1, one.clone())]);
                        add(u2, u4, vec![(u2, pc)]);
                        add(u3, u4, vec![(u3, one.clone())]);
                    }
                }
            }
            K14_2 => {
                add(e1, u2, vec![(u1, one.clone())]);
                add(e1, u3, vec![(u2, one.clone())]);
                add(e1, u4, vec![(e1, one.clone())]);
                add(u1, u4, vec![(u1, one.clone())]);
                add(u3, u4, vec![(u3, -one.clone())]);
            }
            _ => {
                add(e1, u2, vec![(u1, one.clone())]);
                add(e1, u3, vec![(u2, one.clone())]);
                match k {
                    K14_9 | K14_10 | K14_11 | K14_12 => {
                        let r = c(&g("r")?);
                        add(u1, u3, vec![(u1, one.clone())]);
                        let mut t = vec![(e1, r), (u2, one.clone())];
                        if matches!(k, K14_9 | K14_11) {
                            t.push((u4, one.clone()));
                        }
                        add(u2, u3, t);
                        if matches!(k, K14_9 | K14_10) {
                            add(u3, u4, vec![(u4, c(&g("p")?))]);
                        } else {
                            add(u3, u4, vec![(u1, one.clone()), (u4, -one.clone())]);
                        }
                    }
                    K14_13 => {
                        add(u2, u3, vec![(e1, c(&g("r")?)), (u4, one.clone())]);
                        add(u3, u4, vec![(u4, one.clone())]);
                    }
                    K14_14 => {
                        add(u2, u3, vec![(e1, c(&g("r")?))]);
                        add(u3, u4, vec![(u4, one.clone())]);
                    }
                    _ => {
                        let eps = c(&g("eps")?);
                        if matches!(k, K14_15 | K14_18) {
                            add(u2, u3, vec![(e1, eps), (u4, one.clone())]);
                        } else {
                            add(u2, u3, vec![(e1, eps)]);
                        }
                        if matches!(k, K14_15 | K14_21) {
                            add(u3, u4, vec![(u1, one.clone())]);
                        }
                    }
                }
            }
        }
    } else {
        let (f1, f2, v1, v2, v3, v4) = (0, 1, 2, 3, 4, 5);
        add(f1, v2, vec![(v1, one.clone())]);
        add(f1, v3, vec![(v2, -one.clone())]);
        add(f2, v3, vec![(v4, one.clone())]);
        add(f2, v4, vec![(v1, -one.clone())]);
        match k {
            K25_2 => {
                let (pp, r, s) = (g("p")?, g("r")?, g("s")?);
                let two_r = qi(2) * r.clone();
                add(v1, v3, vec![(v1, one.clone())]);
                add(
                    v2,
                    v3,
                    vec![(f1, c(&(pp.clone() + s.clone()))), (f2, c(&r)), (v2, one.clone()), (v4, c(&-two_r.clone()))],
                );
                add(v2, v4, vec![(v1, c(&two_r))]);
                add(v3, v4, vec![(f1, c(&-r)), (f2, c(&(pp - s))), (v2, c(&-two_r)), (v4, -one.clone())]);
            }
            K25_3 => {
                let (r, s) = (g("r")?, g("s")?);
                add(v2, v3, vec![(f1, c(&-(r.clone() + s.clone()))), (v4, -one.clone())]);
                add(v2, v4, vec![(v1, one.clone())]);
                add(v3, v4, vec![(f2, c(&(s - r))), (v2, -one.clone())]);
            }
            _ => {
                let (eps, s) = (g("eps")?, g("s")?);
                add(v2, v3, vec![(f1, c(&(eps.clone() * (qi(1) + s.clone()))))]);
                add(v3, v4, vec![(f2, c(&(eps * (qi(1) - s))))]);
            }
        }
    }
    let names: Vec<String> = if r_dim == 1 {
        ["e1", "u1", "u2", "u3", "u4"].iter().map(|s| s.to_string()).collect()
    } else {
        ["e1", "e2", "u1", "u2", "u3", "u4"].iter().map(|s| s.to_string()).collect()
    };
    let pair = HomogeneousPair::from_brackets(r_dim, 4, &br)?.with_basis_names(names);
    Ok(Subject::Pair { pair, metric: metric.map(cv::<S>) })
}

// ---------------------------------------------------------------------------
// claims

fn expectation(def: Def, statement: &str, p: &Params) -> Result<Expectation> {
    use RicciClaim::*;
    let e = match def {
        Def::Meta => return Err(Error::Invalid("metadata-only row has no expectation".into())),
        Def::Plane(case) => {
            let l = if case == PlaneCase::Abelian { qi(0) } else { get(p, "lambda")? };
            let l2 = l.clone() * l.clone();
            let ricci = match case {
                PlaneCase::Abelian | PlaneCase::Null => Flat,
                PlaneCase::LorPos => Einstein(l2),
                _ => Einstein(-l2),
            };
            let mut x = Expectation::new(case != PlaneCase::Euclid, ricci, statement);
            x.plane_closed_form = Some((case, l));
            x.locally_symmetric = Some(true);
            x
        }
        Def::Cc3(i) => {
            let mut x = Expectation::new(i != 1, Einstein(get(p, "lambda")?), statement).hk(&[3]);
            x.locally_symmetric = Some(true);
            x
        }
        Def::S4Lambda(i) => {
            let a = get(p, "a")?;
            let a2 = a.clone() * a.clone();
            let lam = match i {
                1 | 5 => qi(-3) * a2,
                2 => {
                    let t = a + get(p, "delta")? * get(p, "b")?;
                    qi(-3) * t.clone() * t / qi(4)
                }
                3 => {
                    let b2 = get(p, "b")? * get(p, "b")?;
                    let d = a2 - b2.clone();
                    -(d.clone() * d) / b2
                }
                4 => -a2,
                _ => q(-4, 3) * a2,
            };
            let cc = matches!(i, 1 | 2 | 5 | 6);
            let mut x = Expectation::new(true, Einstein(lam), statement).hk(if cc { &[6] } else { &[2] });
            x.locally_symmetric = Some(true);
            x.second_order_symmetric = Some(false);
            x.petrov = Some(if cc { EinsteinBranch::ConstantCurvature6 } else { EinsteinBranch::TypeI2 });
            x
        }
        Def::S40(_) => {
            let mut x = Expectation::new(true, Isotropic, statement).hk(&[2]);
            x.holonomy_equals_hk = Some(true);
            x.locally_symmetric = Some(false);
            x.second_order_symmetric = Some(false);
            x.normal_form_sum = Some(qi(-1));
            x
        }
        Def::H1 => {
            let mut x = Expectation::new(true, Isotropic, statement).hk(&[1]);
            x.dim_holonomy = Some(2);
            x.holonomy_span = Some(vec![(0, 2), (1, 2)]);
            x.locally_symmetric = Some(false);
            x.second_order_symmetric = Some(false);
            x
        }
        Def::Pr30(_) => {
            let mut x = Expectation::new(true, Isotropic, statement).hk(&[1]);
            x.holonomy_equals_hk = Some(true);
            x.holonomy_span = Some(vec![(0, 1)]);
            x.locally_symmetric = Some(false);
            x.second_order_symmetric = Some(false);
            x
        }
        Def::S30Lambda => {
            let a = get(p, "a")?;
            let mut x = Expectation::new(true, Split(vec![(qi(0), 1), (a.clone() * a, 2)]), statement);
            x.blocks_decouple = true;
            x
        }
        Def::S4MuLambda => {
            let (a, b) = (get(p, "a")?, get(p, "b")?);
            let mut x = Expectation::new(true, Split(vec![(-(a.clone() * a), 2), (b.clone() * b, 2)]), statement);
            x.blocks_decouple = true;
            x
        }
        Def::S401Lambda(_) => {
            let mut x = Expectation::new(true, Split(vec![(qi(0), 1), (get(p, "lambda")?, 3)]), statement);
            x.blocks_decouple = true;
            x
        }
        Def::S402Lambda => {
            let a = get(p, "a")?;
            let mut x = Expectation::new(true, Split(vec![(qi(0), 2), (-(a.clone() * a), 2)]), statement);
            x.blocks_decouple = true;
            x
        }
        Def::Komrakov(_) => Expectation::new(true, Isotropic, statement),
        Def::Flat(k, dim) => {
            let dims: Vec<usize> = match (k, dim) {
                (Kom::K25_2 | Kom::K25_3, _) => vec![if get(p, "s")? == qi(0) { 0 } else { 2 }],
                (Kom::K14_10, _) => vec![0, 2],
                (_, d) => vec![d as usize],
            };
            Expectation::new(true, RicciFlat, statement).hk(&dims)
        }
    };
    Ok(e)
}

// ---------------------------------------------------------------------------
// comparison

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

fn chk(out: &mut Vec<Check>, name: &str, expected: impl ToString, actual: impl ToString, ok: bool) {
    out.push(Check { name: name.to_string(), expected: expected.to_string(), actual: actual.to_string(), ok });
}

fn close<S: Scalar>(x: &S, y: &Q) -> bool {
    let y = cv::<S>(y);
    (x.clone() - y.clone()).negligible(x.magnitude().max(y.magnitude()))
}

/// Compare an analysis with the claims; one entry per claimed property.
pub fn compare<S: Scalar>(exp: &Expectation, a: &Analysis<S>) -> Vec<Check> {
    let mut out = Vec::new();
    chk(&mut out, "lorentzian", exp.lorentzian, a.lorentzian, exp.lorentzian == a.lorentzian);
    chk(&mut out, "semi-symmetric", exp.semi_symmetric, a.semi_symmetric(), exp.semi_symmetric == a.semi_symmetric());
    if let Some(ids) = &a.identities {
        let failed: Vec<&str> = ids.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        chk(&mut out, "structural identities", "all hold", if failed.is_empty() { "all hold".to_string() } else { failed.join(", ") }, failed.is_empty());
    }
    match &exp.ricci {
        RicciClaim::Einstein(l) => {
            let got = a.einstein.as_ref().map(|x| x.to_string()).unwrap_or_else(|| "not Einstein".into());
            let ok = a.einstein.as_ref().is_some_and(|x| close(x, l));
            chk(&mut out, "Ric = λ Id", fmt_q(l), got, ok);
        }
        RicciClaim::Isotropic => {
            chk(&mut out, "Ricci isotropic", true, a.ricci_isotropic, a.ricci_isotropic);
        }
        RicciClaim::Flat => chk(&mut out, "flat", true, a.flat, a.flat),
        RicciClaim::RicciFlat => chk(&mut out, "Ricci flat", true, a.ricci_flat, a.ricci_flat),
        RicciClaim::Split(blocks) => {
            let mut want: Vec<(f64, usize)> = blocks.iter().map(|(l, d)| (crate::scalar::q_to_f64(l), *d)).collect();
            want.sort_by(|x, y| x.partial_cmp(y).unwrap());
            let fmt = |v: &[(String, usize)]| v.iter().map(|(l, d)| format!("{l}:{d}")).collect::<Vec<_>>().join(" ");
            let want_s: Vec<(String, usize)> = {
                let mut w: Vec<(Q, usize)> = blocks.clone();
                w.sort_by(|x, y| x.0.cmp(&y.0));
                w.into_iter().map(|(l, d)| (fmt_q(&l), d)).collect()
            };
            match &a.splitting {
                None => chk(&mut out, "Ricci splitting", fmt(&want_s), "none", false),
                Some(sp) => {
                    let mut got: Vec<(S, usize)> = sp
                        .blocks
                        .iter()
                        .filter(|b| !b.basis.is_empty())
                        .map(|b| (b.eigenvalue.clone(), b.basis.len()))
                        .collect();
                    got.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal));
                    let ok = got.len() == blocks.len() && {
                        let mut w = blocks.clone();
                        w.sort_by(|x, y| x.0.cmp(&y.0));
                        got.iter().zip(&w).all(|((gl, gd), (wl, wd))| gd == wd && close(gl, wl))
                    };
                    let got_s: Vec<(String, usize)> = got.iter().map(|(l, d)| (l.to_string(), *d)).collect();
                    chk(&mut out, "Ricci splitting", fmt(&want_s), fmt(&got_s), ok);
                }
            }
            let _ = want;
        }
    }
    if let Some(dims) = &exp.dim_hk {
        let s = dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" or ");
        chk(&mut out, "dim h(K)", s, a.dim_hk, dims.contains(&a.dim_hk));
    }
    if let Some(d) = exp.dim_holonomy {
        chk(&mut out, "dim h", d, a.dim_holonomy, d == a.dim_holonomy);
    }
    if let Some(b) = exp.holonomy_equals_hk {
        chk(&mut out, "h = h(K)", b, a.holonomy_equals_hk(), b == a.holonomy_equals_hk());
    }
    if let Some(ws) = &exp.holonomy_span {
        let ip = a.curvature.ip();
        let n = a.dim;
        let want: Vec<_> = ws.iter().map(|&(i, j)| wedge(&unit::<S>(n, i), &unit::<S>(n, j), ip).unwrap()).collect();
        let names = ws.iter().map(|(i, j)| format!("e{i}∧e{j}")).collect::<Vec<_>>().join(", ");
        let ok = same_span(&want, &a.holonomy);
        chk(&mut out, "h spanned by", format!("span{{{names}}}"), if ok { "equal".to_string() } else { format!("dim {}", a.dim_holonomy) }, ok);
    }
    if let Some(b) = exp.locally_symmetric {
        chk(&mut out, "locally symmetric", b, a.locally_symmetric, b == a.locally_symmetric);
    }
    if let Some(b) = exp.second_order_symmetric {
        chk(&mut out, "second-order locally symmetric", b, a.second_order_symmetric(), b == a.second_order_symmetric());
    }
    if let Some(br) = exp.petrov {
        let got = a.petrov.as_ref().and_then(|p| p.branch);
        chk(&mut out, "Einstein branch", format!("{br:?}"), format!("{got:?}"), got == Some(br));
    }
    if let Some(sum) = &exp.normal_form_sum {
        let got = a.normal_form_sum();
        let ok = got.as_ref().is_some_and(|x| close(x, sum));
        chk(&mut out, "normal form A+B", fmt_q(sum), got.map(|x| x.to_string()).unwrap_or_else(|| "n/a".into()), ok);
    }
    if exp.blocks_decouple {
        let bad = decoupling_violation(a);
        chk(&mut out, "products vanish between Ricci blocks", "none escape", bad.clone().unwrap_or_else(|| "none escape".into()), bad.is_none());
    }
    if let Some((case, l)) = &exp.plane_closed_form {
        let bad = plane_violation(*case, l, a);
        chk(&mut out, "closed forms of L and K", "literal match", bad.clone().unwrap_or_else(|| "literal match".into()), bad.is_none());
    }
    out
}

fn decoupling_violation<S: Scalar>(a: &Analysis<S>) -> Option<String> {
    let sp = a.splitting.as_ref()?;
    let lc = LeviCivita { left: a.nomizu.clone() };
    let blocks: Vec<_> = sp.blocks.iter().filter(|b| !b.basis.is_empty()).collect();
    for (i, bi) in blocks.iter().enumerate() {
        for (j, bj) in blocks.iter().enumerate() {
            if i == j {
                continue;
            }
            for x in &bi.basis {
                for y in &bj.basis {
                    if !vis_zero(&lc.product(x, y), 1.0) {
                        return Some(format!("block {} . block {} ≠ 0", bi.eigenvalue, bj.eigenvalue));
                    }
                }
            }
        }
    }
    None
}

fn plane_violation<S: Scalar>(case: PlaneCase, l: &Q, a: &Analysis<S>) -> Option<String> {
    let ip = a.curvature.ip();
    let ef = wedge(&unit::<S>(2, 0), &unit::<S>(2, 1), ip).unwrap();
    let lam = cv::<S>(l);
    let zero = Mat::<S>::zeros(2, 2);
    let (le, lf, kc) = match case {
        PlaneCase::Abelian => (zero.clone(), zero.clone(), S::zero()),
        PlaneCase::Euclid | PlaneCase::LorNeg => (ef.scale(&lam), zero.clone(), lam.clone() * lam),
        PlaneCase::LorPos => (ef.scale(&lam), zero.clone(), -(lam.clone() * lam)),
        PlaneCase::Null => (zero.clone(), ef.scale(&lam), S::zero()),
    };
    if !a.nomizu[0].approx_eq(&le) {
        return Some("L_e differs".into());
    }
    if !a.nomizu[1].approx_eq(&lf) {
        return Some("L_f differs".into());
    }
    if !a.curvature.op(0, 1).approx_eq(&ef.scale(&kc)) {
        return Some("K(e,f) differs".into());
    }
    None
}

/// Boundary samples: the family's classification (semi-symmetric with the
/// claimed Ricci type) must fail.
fn boundary_flipped<S: Scalar>(exp_kind: &RicciClaim, a: &Analysis<S>) -> bool {
    let holds = a.lorentzian
        && a.semi_symmetric()
        && match exp_kind {
            RicciClaim::Isotropic => a.ricci_isotropic,
            RicciClaim::RicciFlat => a.ricci_flat,
            RicciClaim::Flat => a.flat,
            RicciClaim::Einstein(_) => a.einstein.is_some(),
            RicciClaim::Split(_) => a.splitting.is_some(),
        };
    !holds
}

// ---------------------------------------------------------------------------
// verification

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceResult {
    pub params: BTreeMap<String, String>,
    pub role: Role,
    pub status: Status,
    pub checks: Vec<Check>,
    pub error: Option<String>,
    /// Set when the failure is an internal inconsistency rather than a mismatch.
    pub inconsistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyResult {
    pub id: String,
    pub statement: String,
    pub note: Option<String>,
    pub status: Status,
    pub instances: Vec<InstanceResult>,
    pub millis: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub mode: Mode,
    pub families: usize,
    pub instances: usize,
    pub mismatches: usize,
    pub skipped: usize,
    pub results: Vec<FamilyResult>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }

    pub fn any_inconsistent(&self) -> bool {
        self.results.iter().flat_map(|f| &f.instances).any(|i| i.inconsistent)
    }

    pub fn text(&self) -> Vec<String> {
        let mut out = Vec::new();
        for f in &self.results {
            let tag = match f.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            if f.status == Status::Skipped {
                out.push(format!("{tag} {:<24} skipped (metadata-only): {}", f.id, f.note.as_deref().unwrap_or("")));
                continue;
            }
            out.push(format!("{tag} {:<24} {:>3} instances {:>9.1} ms", f.id, f.instances.len(), f.millis));
            for inst in f.instances.iter().filter(|i| i.status == Status::Fail) {
                let ps: Vec<String> = inst.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                out.push(format!("     {:?} ({})", inst.role, ps.join(", ")));
                if let Some(e) = &inst.error {
                    out.push(format!("       error: {e}"));
                }
                for c in inst.checks.iter().filter(|c| !c.ok) {
                    out.push(format!("       {}: expected {}, got {}", c.name, c.expected, c.actual));
                }
            }
        }
        out.push(format!(
            "{} families, {} instances, {} mismatches, {} skipped ({} mode)",
            self.families, self.instances, self.mismatches, self.skipped, self.mode
        ));
        out
    }
}

fn run_sample<S: Scalar>(f: &Family, s: &Sample) -> InstanceResult {
    let params = s.params.iter().map(|(k, v)| (k.clone(), fmt_q(v))).collect();
    let mut res = InstanceResult { params, role: s.role, status: Status::Pass, checks: vec![], error: None, inconsistent: false };
    match s.role {
        Role::Sample => {
            let run = || -> Result<Vec<Check>> {
                let exp = f.expected(&s.params)?;
                let subj = f.instantiate::<S>(&s.params)?;
                let a = analyze(&subj)?;
                Ok(compare(&exp, &a))
            };
            match run() {
                Ok(checks) => {
                    if checks.iter().any(|c| !c.ok) {
                        res.status = Status::Fail;
                    }
                    res.checks = checks;
                }
                Err(e) => {
                    res.inconsistent = matches!(e, Error::Inconsistent(_));
                    res.status = Status::Fail;
                    res.error = Some(e.to_string());
                }
            }
        }
        Role::Boundary => {
            let printed = check_conditions(f.def, &s.params);
            let mut ok = printed.is_err();
            chk(&mut res.checks, "printed condition violated", true, printed.is_err(), printed.is_err());
            let claim = match expectation_kind(f.def) {
                Some(k) => k,
                None => RicciClaim::Isotropic,
            };
            let outcome = f.instantiate_unchecked::<S>(&s.params).and_then(|subj| analyze(&subj));
            let (flipped, desc) = match outcome {
                Ok(a) => {
                    // off the printed locus some claimed property has to fail
                    let lost: Vec<String> = expectation(f.def, f.statement, &s.params)
                        .map(|e| compare(&e, &a).into_iter().filter(|c| !c.ok).map(|c| c.name).collect())
                        .unwrap_or_default();
                    if boundary_flipped(&claim, &a) {
                        (true, format!("{:?}, semi-symmetric {}", a.ricci_type(), a.semi_symmetric()))
                    } else if !lost.is_empty() {
                        (true, format!("loses: {}", lost.join(", ")))
                    } else {
                        (false, format!("{:?}, semi-symmetric {}, all claims still hold", a.ricci_type(), a.semi_symmetric()))
                    }
                }
                Err(e @ (Error::Degenerate | Error::Precondition(_) | Error::Invalid(_))) => (true, format!("rejected: {e}")),
                Err(e) => {
                    res.inconsistent = matches!(e, Error::Inconsistent(_));
                    (false, format!("error: {e}"))
                }
            };
            ok &= flipped;
            chk(&mut res.checks, "classification flips", "flips", desc, flipped);
            if !ok {
                res.status = Status::Fail;
            }
        }
    }
    res
}

fn expectation_kind(def: Def) -> Option<RicciClaim> {
    match def {
        Def::Komrakov(_) | Def::S40(_) | Def::H1 | Def::Pr30(_) => Some(RicciClaim::Isotropic),
        Def::Flat(..) => Some(RicciClaim::RicciFlat),
        _ => None,
    }
}

pub fn verify_family<S: Scalar>(f: &Family) -> FamilyResult {
    let start = Instant::now();
    let instances: Vec<InstanceResult> = f.samples.iter().map(|s| run_sample::<S>(f, s)).collect();
    let status = if f.is_metadata() {
        Status::Skipped
    } else if instances.iter().all(|i| i.status == Status::Pass) {
        Status::Pass
    } else {
        Status::Fail
    };
    FamilyResult {
        id: f.id.clone(),
        statement: f.statement.to_string(),
        note: f.note.map(str::to_string),
        status,
        instances,
        millis: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// `*` matches any run of characters; everything else is literal.
pub fn glob_match(pattern: &str, text: &str) -> bool {
    let (p, t): (Vec<char>, Vec<char>) = (pattern.chars().collect(), text.chars().collect());
    let (mut pi, mut ti, mut star, mut mark) = (0, 0, None, 0);
    while ti < t.len() {
        if pi < p.len() && p[pi] != '*' && p[pi] == t[ti] {
            pi += 1;
            ti += 1;
        } else if pi < p.len() && p[pi] == '*' {
            star = Some(pi);
            mark = ti;
            pi += 1;
        } else if let Some(s) = star {
            pi = s + 1;
            mark += 1;
            ti = mark;
        } else {
            return false;
        }
    }
    p[pi..].iter().all(|&c| c == '*')
}

pub fn select(filter: Option<&str>) -> Result<Vec<&'static Family>> {
    let all = catalog();
    let Some(pat) = filter else { return Ok(all.iter().collect()) };
    let hits: Vec<&Family> = all.iter().filter(|f| glob_match(pat, &f.id)).collect();
    if hits.is_empty() {
        return Err(Error::UnknownFamily(pat.to_string()));
    }
    Ok(hits)
}

pub fn find(id: &str) -> Result<&'static Family> {
    catalog().iter().find(|f| f.id == id).ok_or_else(|| Error::UnknownFamily(id.to_string()))
}

/// Runs the selected families in parallel; results keep catalog order.
pub fn verify_all(mode: Mode, filter: Option<&str>) -> Result<Summary> {
    let fams = select(filter)?;
    let results: Vec<FamilyResult> = fams
        .par_iter()
        .map(|f| match mode {
            Mode::Exact => verify_family::<Q>(f),
            Mode::Float => verify_family::<f64>(f),
        })
        .collect();
    let instances = results.iter().map(|r| r.instances.len()).sum();
    let mismatches = results.iter().flat_map(|r| &r.instances).filter(|i| i.status == Status::Fail).count();
    let skipped = results.iter().filter(|r| r.status == Status::Skipped).count();
    Ok(Summary { mode, families: results.len(), instances, mismatches, skipped, results })
}

// ---------------------------------------------------------------------------
// the table of families

fn pts(names: &[&str], rows: &[&[Q]]) -> Vec<Sample> {
    rows.iter()
        .map(|r| Sample { params: names.iter().zip(r.iter()).map(|(k, v)| (k.to_string(), v.clone())).collect(), role: Role::Sample })
        .collect()
}

fn boundary(names: &[&str], rows: &[&[Q]]) -> Vec<Sample> {
    pts(names, rows).into_iter().map(|mut s| {
        s.role = Role::Boundary;
        s
    }).collect()
}

/// Cartesian product with `±1` for each listed sign parameter.
fn with_signs(samples: Vec<Sample>, signs: &[&str]) -> Vec<Sample> {
    let mut out = samples;
    for &name in signs {
        out = out
            .into_iter()
            .flat_map(|s| {
                [1, -1].into_iter().map(move |e| {
                    let mut t = s.clone();
                    t.params.insert(name.to_string(), qi(e));
                    t
                })
            })
            .collect();
    }
    out
}

fn fam(id: &str, params: &[&'static str], def: Def, statement: &'static str, samples: Vec<Sample>) -> Family {
    Family { id: id.to_string(), params: params.to_vec(), statement, note: None, def, samples }
}

fn meta(id: &str, note: &'static str, statement: &'static str) -> Family {
    Family { id: id.to_string(), params: vec![], statement, note: Some(note), def: Def::Meta, samples: vec![] }
}

pub fn catalog() -> &'static [Family] {
    static CATALOG: OnceLock<Vec<Family>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

#[rustfmt::skip]
fn build_catalog() -> Vec<Family> {
    let i = qi;
    let lam = |xs: &[i64]| xs.iter().map(|&x| vec![i(x)]).collect::<Vec<_>>();
    let lambdas = lam(&[1, 2, -3]);
    let lrows: Vec<&[Q]> = lambdas.iter().map(|r| r.as_slice()).collect();
    let mut v = vec![
        fam("plane.abelian", &[], Def::Plane(PlaneCase::Abelian),
            "abelian: the Levi-Civita product is trivial", pts(&[], &[&[]])),
        fam("plane.euclid", &["lambda"], Def::Plane(PlaneCase::Euclid),
            "Euclidean, e∈[g,g]: L_f=0, L_e=λe∧f, K(e,f)=λ²e∧f", pts(&["lambda"], &lrows)),
        fam("plane.lor-pos", &["lambda"], Def::Plane(PlaneCase::LorPos),
            "Lorentzian, [g,g] positive: L_f=0, L_e=λe∧f, K(e,f)=-λ²e∧f", pts(&["lambda"], &lrows)),
        fam("plane.lor-neg", &["lambda"], Def::Plane(PlaneCase::LorNeg),
            "Lorentzian, [g,g] negative: L_f=0, L_e=λe∧f, K(e,f)=λ²e∧f", pts(&["lambda"], &lrows)),
        fam("plane.null", &["lambda"], Def::Plane(PlaneCase::Null),
            "Lorentzian, [g,g] totally isotropic: L_f=λe∧f, L_e=0, K(e,f)=0", pts(&["lambda"], &lrows)),
    ];

    let neg = [&[i(-2), i(0)][..], &[i(-8), i(1)], &[q(-1, 2), i(-3)]];
    let pos = [&[i(2), i(0)][..], &[i(8), i(1)], &[q(1, 2), i(-3)]];
    v.push(fam("3d-cc.1", &["lambda", "c"], Def::Cc3(1),
        "Euclidean nonunimodular, Ric=λId: [e,f]=-cg+√(-λ/2)f, [e,g]=cf+√(-λ/2)g", pts(&["lambda", "c"], &neg)));
    v.push(fam("3d-cc.2", &["lambda", "c"], Def::Cc3(2),
        "Lorentzian, <h,h><0, Ric=λId: [e,f]=-cg+√(λ/2)f, [e,g]=cf+√(λ/2)g", pts(&["lambda", "c"], &pos)));
    v.push(fam("3d-cc.3", &["lambda", "c"], Def::Cc3(3),
        "Lorentzian, <h,h>>0, R_h diagonalizable, Ric=λId: [e,f]=-cg+√(-λ/2)f, [e,g]=-cf+√(-λ/2)g", pts(&["lambda", "c"], &neg)));
    v.push(fam("3d-cc.4", &["lambda", "a"], Def::Cc3(4),
        "Lorentzian, <h,h>>0, R_h not diagonalizable, Ric=λId: [e,f]=2√(-λ/2)f, [e,g]=af, a<0",
        pts(&["lambda", "a"], &[&[i(-2), i(-1)], &[i(-8), i(-2)], &[q(-1, 2), q(-1, 3)]])));

    v.push(fam("S4lambda.1", &["a", "eps", "delta"], Def::S4Lambda(1),
        "[e1,e2]=εae1, [e1,e3]=ae1, [e1,e4]=δae1, [e3,e4]=-2aδ(εe2-e3): constant sectional curvature -a²",
        with_signs(pts(&["a"], &[&[i(2)], &[i(-1)], &[q(1, 3)]]), &["eps", "delta"])));
    v.push(fam("S4lambda.2", &["a", "b", "eps", "delta"], Def::S4Lambda(2),
        "[e1,e2]=ε√(a²-b²)/2 e1, [e1,e3]=-δε√(a²-b²)/2 e1, [e1,e4]=(δa+b)/2 e1, [e2,e4]=b(e2+δe3), [e3,e4]=a(e2+δe3): constant sectional curvature -(a+δb)²/4",
        with_signs(pts(&["a", "b"], &[&[i(5), i(3)], &[i(5), i(-4)], &[i(13), i(12)]]), &["eps", "delta"])));
    v.push(fam("S4lambda.3", &["a", "b", "eps"], Def::S4Lambda(3),
        "[e1,e2]=εa√(a²-b²)/b e1, [e1,e3]=ε√(a²-b²)e1, [e2,e4]=be2-ae3, [e3,e4]=ae2-(a²/b)e3: λ=-(a²-b²)²/b², dim h(K)=2",
        with_signs(pts(&["a", "b"], &[&[i(5), i(3)], &[i(5), i(-4)], &[i(13), i(5)]]), &["eps"])));
    v.push(fam("S4lambda.4", &["a", "b", "eps"], Def::S4Lambda(4),
        "[e1,e2]=ε√(a²-b²)e1+be2, [e3,e4]=ae3: λ=-a², dim h(K)=2",
        with_signs(pts(&["a", "b"], &[&[i(5), i(3)], &[i(5), i(-4)], &[i(1), i(0)]]), &["eps"])));
    v.push(fam("S4lambda.5", &["a", "b"], Def::S4Lambda(5),
        "[e1,e4]=ae1, [e2,e4]=ae2+be3, [e3,e4]=be2+ae3: constant sectional curvature -a²",
        pts(&["a", "b"], &[&[i(1), i(0)], &[i(2), i(3)], &[q(-1, 2), i(1)]])));
    v.push(fam("S4lambda.6", &["a", "eps"], Def::S4Lambda(6),
        "[e1,e4]=ε(2/3)ae1, [e2,e4]=ε(2/3)ae2+ae3, [e3,e4]=ae2+ε(2/3)ae3: constant sectional curvature -4a²/9",
        with_signs(pts(&["a"], &[&[i(3)], &[i(-1)], &[q(3, 2)]]), &["eps"])));

    let s40_claim = "Ricci isotropic, semi-symmetric, dim h(K)=2: not second-order locally symmetric and h(K)=h(g)";
    let s40_1 = with_signs(pts(&["a", "b", "x", "y", "z"], &[
        &[i(1), q(1, 2), i(0), i(0), i(0)], &[i(2), q(1, 4), i(1), i(2), i(-1)], &[q(3, 2), q(1, 3), q(1, 2), i(0), i(0)]]), &["eps"]);
    v.push(Family { note: Some("ε√(ab+½): sampled where ab+½ is a rational square; a=b is the fourth form, not a degeneration"),
        ..fam("S40.1", &["a", "b", "x", "y", "z", "eps"], Def::S40(1), s40_claim, s40_1) });
    v.push(fam("S40.2", &["a", "b", "c", "y", "z"], Def::S40(2), s40_claim,
        pts(&["a", "b", "c", "y", "z"], &[&[i(1), i(1), i(1), i(0), i(0)], &[i(2), i(-1), q(1, 2), i(1), i(3)], &[i(1), i(0), i(3), i(0), i(0)]])));
    v.push(fam("S40.3", &["a", "x", "y"], Def::S40(3), s40_claim,
        pts(&["a", "x", "y"], &[&[i(1), i(0), i(0)], &[i(2), i(1), i(-1)], &[q(-1, 2), i(0), i(2)]])));
    v.push(Family { note: Some("ε√((2a²+1)/2): sampled where the radicand is a rational square"),
        ..fam("S40.4", &["a", "x", "y", "z", "eps"], Def::S40(4), s40_claim,
        with_signs(pts(&["a", "x", "y", "z"], &[&[q(1, 4), i(0), i(0), i(0)], &[q(7, 8), i(2), i(1), i(1)], &[q(-7, 12), i(0), i(0), i(0)]]), &["eps"])) });
    v.push(Family { note: Some("b²≠c² is imposed: the coefficient (2a³+a-2abc)/(b²-c²) needs it"),
        ..fam("S40.5", &["a", "b", "c", "y", "z"], Def::S40(5), s40_claim,
        pts(&["a", "b", "c", "y", "z"], &[&[i(1), i(2), i(0), i(0), i(0)], &[i(1), i(3), i(1), i(1), i(2)], &[q(1, 2), i(1), i(-2), i(0), i(0)]])) });
    v.push(fam("S40.h1", &["a", "x", "y"], Def::H1,
        "Ricci isotropic, indecomposable, dim h(K)=1: h(g)=span{e∧g, f∧g}, not second-order locally symmetric",
        pts(&["a", "x", "y"], &[&[i(2), i(0), i(0)], &[i(3), i(1), i(2)], &[q(1, 2), i(0), i(0)]])));
    let pr30_pts = [&[i(1), i(0)][..], &[i(2), i(1)], &[q(-1, 2), i(3)]];
    v.push(fam("S30.i", &["a", "b"], Def::Pr30(1),
        "3D Ricci isotropic: [e,f]=af, [e,g]=be-ag+(1+2b²)/(2a)f, [f,g]=-bf; not second-order locally symmetric, h(g)=h(K)=span{e∧f}",
        pts(&["a", "b"], &pr30_pts)));
    v.push(fam("S30.ii", &["a", "b"], Def::Pr30(2),
        "3D Ricci isotropic: [e,g]=ae+bf, [f,g]=(1+a²)/a f; not second-order locally symmetric, h(g)=h(K)=span{e∧f}",
        pts(&["a", "b"], &pr30_pts)));
    v.push(meta("S30.flat", "brackets not printed; the count claim is recorded only",
        "six three dimensional flat Lorentzian Lie algebras, three unimodular and three nonunimodular"));

    v.push(Family { note: Some("encoded as the product of ℝ with a 2D Lorentzian algebra"),
        ..fam("S30lambda", &["a"], Def::S30Lambda,
        "g = g0 ⊕ gλ with g0.g = g.g0 = 0: a product of g0 with gλ", pts(&["a"], &[&[i(1)], &[i(-2)], &[q(1, 3)]])) });
    v.push(Family { note: Some("encoded as the product of 2D Euclidean and 2D Lorentzian nonabelian algebras"),
        ..fam("S4mulambda", &["a", "b"], Def::S4MuLambda,
        "gλ.gμ = gμ.gλ = 0: product of a 2D Euclidean with a 2D Lorentzian Lie algebra",
        pts(&["a", "b"], &[&[i(1), i(1)], &[i(2), i(-1)], &[q(1, 2), i(3)]])) });
    v.push(Family { note: Some("trivial derivation: timelike line times the Euclidean constant-curvature algebra"),
        ..fam("S40-1lambda.1", &["lambda", "c"], Def::S401Lambda(1),
        "g.g0 = 0, gλ.gλ ⊂ gλ: semi-direct product of g0 with a 3D constant-curvature algebra", pts(&["lambda", "c"], &neg)) });
    v.push(Family { note: Some("trivial derivation: spacelike line times a Lorentzian constant-curvature algebra"),
        ..fam("S40-1lambda.2", &["lambda", "c"], Def::S401Lambda(2),
        "g.g0 = 0, gλ.gλ ⊂ gλ: semi-direct product of g0 with a 3D constant-curvature algebra", pts(&["lambda", "c"], &pos)) });
    v.push(Family { note: Some("trivial action: 2D Euclidean nonabelian algebra times Lorentzian ℝ²"),
        ..fam("S40-2lambda", &["a"], Def::S402Lambda,
        "g0.g = 0, gλ.gλ ⊂ gλ, gλ.g0 ⊂ g0: semi-direct product of gλ with the abelian g0",
        pts(&["a"], &[&[i(1)], &[i(-3)], &[q(2, 3)]])) });

    komrakov_families(&mut v);
    v
}

#[rustfmt::skip]
fn komrakov_families(v: &mut Vec<Family>) {
    use Kom::*;
    let i = qi;
    let iso = "Ricci isotropic homogeneous semi-symmetric Lorentzian model";
    let b0 = ["a", "b", "d"];
    let b0_pts: [&[Q]; 3] = [&[i(1), i(1), i(0)], &[i(2), i(3), i(1)], &[q(1, 2), i(-1), i(2)]];
    v.push(fam("komrakov.1.1^2:1", &["a", "b", "d"], Def::Komrakov(K11_1), iso,
        [pts(&b0, &b0_pts), boundary(&b0, &[&[i(1), i(0), i(1)]])].concat()));
    let b0p = ["a", "b", "d", "p"];
    v.push(Family { note: Some("the metric is printed empty; the B0 of the neighbouring items is assumed"),
        ..fam("komrakov.1.1^2:2", &["a", "b", "d", "p"], Def::Komrakov(K11_2), iso,
        [pts(&b0p, &[&[i(1), i(1), i(0), i(2)], &[i(2), i(3), i(1), i(0)], &[q(1, 2), i(-1), i(2), q(-1, 2)]]),
         boundary(&b0p, &[&[i(1), i(1), i(0), i(1)]])].concat()) });
    v.push(fam("komrakov.1.1^2:5", &["a", "b", "d"], Def::Komrakov(K11_5), iso,
        [pts(&b0, &b0_pts), boundary(&b0, &[&[i(1), i(0), i(1)]])].concat()));

    let b1 = ["a", "b", "c", "d"];
    let b1_pts: [&[Q]; 3] = [&[i(1), i(1), i(1), i(0)], &[i(2), i(1), i(3), i(1)], &[i(1), i(-2), q(1, 2), i(2)]];
    v.push(fam("komrakov.1.4^1:2", &["a", "b", "c", "d"], Def::Komrakov(K14_2), iso,
        [pts(&b1, &b1_pts), boundary(&b1, &[&[i(1), i(1), i(0), i(1)]])].concat()));
    let b1rp = ["a", "b", "c", "d", "r", "p"];
    v.push(fam("komrakov.1.4^1:9", &["a", "b", "c", "d", "r", "p"], Def::Komrakov(K14_9), iso,
        [pts(&b1rp, &[&[i(1), i(1), i(1), i(0), i(1), i(1)], &[i(2), i(1), i(3), i(1), i(0), i(2)], &[i(1), i(0), i(2), i(-1), i(-1), q(1, 2)]]),
         boundary(&b1rp, &[&[i(1), i(1), i(2), i(0), i(-1), i(0)]])].concat()));
    v.push(fam("komrakov.1.4^1:10", &["a", "b", "c", "d", "r", "p"], Def::Komrakov(K14_10), iso,
        [pts(&b1rp, &[&[i(1), i(1), i(1), i(0), i(1), i(1)], &[i(2), i(1), i(3), i(1), i(0), i(2)], &[i(1), i(0), i(2), i(-1), i(-1), q(1, 2)]]),
         boundary(&b1rp, &[&[i(1), i(1), i(1), i(0), i(-2), i(1)]])].concat()));
    let b1r = ["a", "b", "c", "d", "r"];
    let r_pts = |rs: [Q; 3]| -> Vec<Vec<Q>> {
        b1_pts.iter().zip(rs).map(|(m, r)| { let mut x = m.to_vec(); x.push(r); x }).collect()
    };
    let as_rows = |xs: &Vec<Vec<Q>>| xs.to_vec();
    let mk = |rs: [Q; 3]| { let rows = as_rows(&r_pts(rs)); pts(&b1r, &rows.iter().map(|r| r.as_slice()).collect::<Vec<_>>()) };
    v.push(fam("komrakov.1.4^1:11", &["a", "b", "c", "d", "r"], Def::Komrakov(K14_11), iso,
        [mk([i(1), i(0), q(-1, 2)]), boundary(&b1r, &[&[i(1), i(1), i(2), i(0), i(-1)]])].concat()));
    v.push(fam("komrakov.1.4^1:12", &["a", "b", "c", "d", "r"], Def::Komrakov(K14_12), iso,
        [mk([i(1), i(2), q(-1, 3)]), boundary(&b1r, &[&[i(1), i(1), i(1), i(0), i(0)]])].concat()));
    v.push(fam("komrakov.1.4^1:13", &["a", "b", "c", "d", "r"], Def::Komrakov(K14_13), iso,
        [mk([i(1), i(0), q(-1, 2)]), boundary(&b1r, &[&[i(1), i(1), i(4), i(0), i(-3)]])].concat()));
    v.push(fam("komrakov.1.4^1:14", &["a", "b", "c", "d", "r"], Def::Komrakov(K14_14), iso,
        [mk([i(1), i(0), i(2)]), boundary(&b1r, &[&[i(1), i(1), i(1), i(0), i(-1)]])].concat()));
    let b1e = ["a", "b", "c", "d", "eps"];
    let eps_all = |xs: &[i64]| -> Vec<Sample> {
        let mut out = Vec::new();
        for &e in xs {
            for m in &b1_pts {
                let mut row = m.to_vec();
                row.push(i(e));
                out.extend(pts(&b1e, &[row.as_slice()]));
            }
        }
        out
    };
    v.push(fam("komrakov.1.4^1:15-17", &["a", "b", "c", "d", "eps"], Def::Komrakov(K14_15), iso,
        [eps_all(&[0, 1, -1]), boundary(&b1e, &[&[i(1), i(1), i(2), i(0), i(-1)]])].concat()));
    v.push(fam("komrakov.1.4^1:18-20", &["a", "b", "c", "d", "eps"], Def::Komrakov(K14_18), iso,
        [eps_all(&[0, 1, -1]), boundary(&b1e, &[&[i(1), i(1), i(2), i(0), i(-1)]])].concat()));
    v.push(fam("komrakov.1.4^1:21-22", &["a", "b", "c", "d", "eps"], Def::Komrakov(K14_21), iso, eps_all(&[1, -1])));
    v.push(fam("komrakov.1.4^1:24-25", &["a", "b", "c", "d", "eps"], Def::Komrakov(K14_24), iso, eps_all(&[1, -1])));

    let b2prs = ["a", "b", "p", "r", "s"];
    v.push(fam("komrakov.2.5^2:2", &["a", "b", "p", "r", "s"], Def::Komrakov(K25_2), iso,
        [pts(&b2prs, &[&[i(1), i(1), i(1), i(1), i(1)], &[i(2), i(-1), i(0), q(1, 2), i(0)], &[i(1), i(0), i(2), i(0), i(3)]]),
         boundary(&b2prs, &[&[i(1), i(1), i(-1), i(1), i(1)]])].concat()));
    let b2rs = ["a", "b", "r", "s"];
    v.push(fam("komrakov.2.5^2:3", &["a", "b", "r", "s"], Def::Komrakov(K25_3), iso,
        [pts(&b2rs, &[&[i(1), i(1), i(1), i(1)], &[i(2), i(-1), i(0), i(0)], &[i(1), i(0), q(1, 2), i(2)]]),
         boundary(&b2rs, &[&[i(1), i(1), q(1, 4), i(1)]])].concat()));
    let b2es = ["a", "b", "s"];
    v.push(fam("komrakov.2.5^2:4-5", &["a", "b", "s", "eps"], Def::Komrakov(K25_4), iso,
        with_signs(pts(&b2es, &[&[i(1), i(1), i(0)], &[i(2), i(-1), i(2)], &[i(1), i(0), q(1, 2)]]), &["eps"])));

    // Ricci-flat specialisations
    let flat = "Ricci flat homogeneous semi-symmetric Lorentzian model; dim h(K) as tabulated";
    v.push(Family { note: Some("row condition (p,b)=(1,0): the pair has no p, only b=0 is used"),
        ..fam("table1.1.4^1:2", &["a", "b", "c", "d"], Def::Flat(K14_2, 0), flat,
        pts(&b1, &[&[i(1), i(0), i(1), i(0)], &[i(2), i(0), i(3), i(1)], &[i(1), i(0), q(1, 2), i(-1)]])) });
    v.push(Family { note: Some("tabulated 2a(p²-p+r)=c read as c=-2a(p²+p+r), matching the pair's own condition"),
        ..fam("table1.1.4^1:9", &["a", "b", "c", "d", "r", "p"], Def::Flat(K14_9, 2), flat,
        pts(&b1rp, &[&[i(1), i(1), i(2), i(0), i(-1), i(0)], &[i(2), i(0), i(4), i(1), i(-3), i(1)], &[q(1, 2), i(1), q(5, 4), i(0), i(-1), q(-1, 2)]])) });
    v.push(fam("table1.1.4^1:10", &["a", "b", "c", "d", "r", "p"], Def::Flat(K14_10, 2), flat,
        pts(&b1rp, &[&[i(1), i(1), i(1), i(0), i(-2), i(1)], &[i(2), i(1), i(3), i(1), i(0), i(0)], &[i(1), i(0), i(2), i(-1), q(-3, 4), q(1, 2)]])));
    v.push(fam("table1.1.4^1:11", &["a", "b", "c", "d", "r"], Def::Flat(K14_11, 2), flat,
        pts(&b1r, &[&[i(1), i(1), i(2), i(0), i(-1)], &[i(2), i(0), i(2), i(1), q(-1, 2)], &[i(1), i(0), i(4), i(-1), i(-2)]])));
    v.push(fam("table1.1.4^1:12", &["a", "b", "c", "d", "r"], Def::Flat(K14_12, 0), flat, mk([i(0), i(0), i(0)])));
    v.push(fam("table1.1.4^1:13", &["a", "b", "c", "d", "r"], Def::Flat(K14_13, 2), flat,
        pts(&b1r, &[&[i(1), i(1), i(4), i(0), i(-3)], &[i(2), i(0), i(4), i(1), i(-2)], &[i(1), i(0), i(1), i(-1), q(-3, 2)]])));
    v.push(fam("table1.1.4^1:14", &["a", "b", "c", "d", "r"], Def::Flat(K14_14, 2), flat, mk([i(-1), i(-1), i(-1)])));
    let e_flat = [&[i(1), i(1), i(2), i(0), i(-1)][..], &[i(2), i(0), i(4), i(1), i(-1)], &[q(1, 2), i(-1), i(1), i(3), i(-1)]];
    v.push(Family { note: Some("the row's 2a+c=0 is in the tabulated metric, whose a is the negative of the pair's"),
        ..fam("table1.1.4^1:16", &["a", "b", "c", "d", "eps"], Def::Flat(K14_15, 2), flat, pts(&b1e, &e_flat)) });
    v.push(Family { note: Some("the row's 2a+c=0 is in the tabulated metric, whose a is the negative of the pair's"),
        ..fam("table1.1.4^1:19", &["a", "b", "c", "d", "eps"], Def::Flat(K14_18, 2), flat, pts(&b1e, &e_flat)) });
    v.push(fam("table1.2.5^2:2", &["a", "b", "p", "r", "s"], Def::Flat(K25_2, 2), flat,
        pts(&b2prs, &[&[i(1), i(1), i(-1), i(1), i(1)], &[i(1), i(1), i(-1), i(1), i(0)], &[i(2), i(-1), q(-1, 4), q(1, 2), i(2)]])));
    v.push(fam("table1.2.5^2:3", &["a", "b", "r", "s"], Def::Flat(K25_3, 2), flat,
        pts(&b2rs, &[&[i(1), i(1), q(1, 4), i(1)], &[i(1), i(1), q(1, 4), i(0)], &[i(2), i(-1), q(1, 4), i(3)]])));

    let none = "brackets not printed";
    for (id, dims) in [
        ("table1.meta.1.1^2:2,8", "0"), ("table1.meta.1.1^2:12", "0"), ("table1.meta.1.1^3:1", "0"), ("table1.meta.1.1^4:1", "0"),
        ("table1.meta.1.4^1:23,26", "0"), ("table1.meta.2.1^2:6", "0"), ("table1.meta.2.4^1:3", "0"), ("table1.meta.2.5^2:6", "2"),
        ("table1.meta.2.5^2:7", "0"), ("table1.meta.3.2^2:2", "0"), ("table1.meta.3.5^1:4", "0"), ("table1.meta.3.5^2:4", "0"),
        ("table1.meta.4.1^2:1", "0"), ("table1.meta.6.1^3:3", "0"),
    ] {
        let statement: &'static str = Box::leak(format!("Ricci flat homogeneous semi-symmetric Lorentzian model, dim h(K) = {dims}").into_boxed_str());
        v.push(meta(id, none, statement));
    }
}

/// File name of a family's fixture document: `^` becomes `-`, `:` and `,` become `_`.
pub fn fixture_file_name(id: &str) -> String {
    format!("{}.json", id.replace('^', "-").replace([':', ','], "_"))
}
