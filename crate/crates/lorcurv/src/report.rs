//! One analysis pipeline for both kinds of input, and its JSON report.
//!
//! A metric Lie algebra is analysed through its Levi-Civita product; a
//! homogeneous pair through the Nomizu map `∇` of its invariant metric. Both
//! end in a [`CurvatureTensor`] and the downstream steps are shared: for an
//! invariant tensor `∇_u K = ∇(u)·K`, so covariant derivatives and the
//! holonomy closure use the same code for both.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::curvature::{CurvatureTensor, RicciSplitting};
use crate::error::{Error, Result};
use crate::homogeneous::HomogeneousPair;
use crate::lie::{holonomy_closure, CovariantDerivatives, IdentityReport, LeviCivita, MetricLieAlgebra};
use crate::matrix::{Mat, SpanBuilder};
use crate::petrov::{
    classify_einstein_semisym, isotropic_normal_form, petrov_tag, petrov_type, EinsteinBranch, IsotropicNormalForm,
    PetrovTag,
};
use crate::poly::{Root, RootMult};
use crate::pseudo::Endo;
use crate::scalar::{Mode, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum Subject<S> {
    Lie(MetricLieAlgebra<S>),
    Pair { pair: HomogeneousPair<S>, metric: Mat<S> },
}

impl<S: Scalar> Subject<S> {
    pub fn name(&self) -> Option<&str> {
        match self {
            Subject::Lie(g) => g.name.as_deref(),
            Subject::Pair { pair, .. } => pair.name.as_deref(),
        }
    }

    pub fn params(&self) -> &[(String, String)] {
        match self {
            Subject::Lie(g) => &g.params,
            Subject::Pair { pair, .. } => &pair.params,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Subject::Lie(_) => "lie_algebra",
            Subject::Pair { .. } => "homogeneous_pair",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RicciType {
    Flat,
    RicciFlat,
    Einstein,
    RicciIsotropic,
    Other,
}

/// Strongest rung of flat ⊂ locally symmetric ⊂ second-order ⊂ semi-symmetric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryLevel {
    Flat,
    LocallySymmetric,
    SecondOrderLocallySymmetric,
    SemiSymmetric,
    None,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PetrovData<S> {
    pub tag: PetrovTag,
    /// Complex eigenvalues of `K̃`, when `√(-det G)` is available.
    pub eigen: Option<Vec<RootMult<S>>>,
    /// Branch of the Einstein semi-symmetric classification.
    pub branch: Option<EinsteinBranch>,
}

#[derive(Clone, Debug)]
pub struct Analysis<S> {
    pub subject_kind: &'static str,
    pub dim: usize,
    pub isotropy_dim: usize,
    pub signature: (usize, usize),
    pub lorentzian: bool,
    /// `L_{e_i}` for an algebra, `∇(u_i)` for a pair.
    pub nomizu: Vec<Endo<S>>,
    pub curvature: CurvatureTensor<S>,
    pub ricci_form: Mat<S>,
    pub ricci: Endo<S>,
    pub scalar_curvature: S,
    pub flat: bool,
    pub ricci_flat: bool,
    pub ricci_isotropic: bool,
    pub einstein: Option<S>,
    pub semi_symmetry_witness: Option<[usize; 4]>,
    pub splitting: Option<RicciSplitting<S>>,
    pub dim_hk: usize,
    pub dim_holonomy: usize,
    /// Basis of the holonomy algebra `h`.
    pub holonomy: Vec<Endo<S>>,
    pub locally_symmetric: bool,
    /// `∇²K = 0`, including the locally symmetric case.
    pub nabla2_vanishes: bool,
    pub petrov: Option<PetrovData<S>>,
    pub normal_form: Option<IsotropicNormalForm<S>>,
    pub identities: Option<IdentityReport>,
}

impl<S: Scalar> Analysis<S> {
    pub fn semi_symmetric(&self) -> bool {
        self.semi_symmetry_witness.is_none()
    }

    /// `∇²K = 0` with `∇K ≠ 0`.
    pub fn second_order_symmetric(&self) -> bool {
        self.nabla2_vanishes && !self.locally_symmetric
    }

    pub fn holonomy_equals_hk(&self) -> bool {
        self.dim_holonomy == self.dim_hk
    }

    pub fn ricci_type(&self) -> RicciType {
        if self.flat {
            RicciType::Flat
        } else if self.ricci_flat {
            RicciType::RicciFlat
        } else if self.einstein.is_some() {
            RicciType::Einstein
        } else if self.ricci_isotropic {
            RicciType::RicciIsotropic
        } else {
            RicciType::Other
        }
    }

    pub fn symmetry_level(&self) -> SymmetryLevel {
        if self.flat {
            SymmetryLevel::Flat
        } else if self.locally_symmetric {
            SymmetryLevel::LocallySymmetric
        } else if self.nabla2_vanishes {
            SymmetryLevel::SecondOrderLocallySymmetric
        } else if self.semi_symmetric() {
            SymmetryLevel::SemiSymmetric
        } else {
            SymmetryLevel::None
        }
    }

    /// `A + B` of the isotropic normal form, when both are exact.
    pub fn normal_form_sum(&self) -> Option<S> {
        let nf = self.normal_form.as_ref()?;
        match (&nf.a, &nf.b) {
            (Root::Exact(a), Root::Exact(b)) => Some(a.re.clone() + b.re.clone()),
            _ => None,
        }
    }
}

pub fn analyze<S: Scalar>(subject: &Subject<S>) -> Result<Analysis<S>> {
    let (nomizu, k, ricci_form, isotropy_dim, identities) = match subject {
        Subject::Lie(g) => {
            if let Some(v) = g.validate().first() {
                return Err(Error::Invalid(format!("not a Lie algebra: {v}")));
            }
            let lc = g.levi_civita();
            let k = g.curvature_with(&lc);
            let rf = k.ricci_form();
            (lc.left, k, rf, 0, Some(g.identity_suite()))
        }
        Subject::Pair { pair, metric } => {
            if let Some(v) = pair.validate().first() {
                return Err(Error::Invalid(format!("not a valid pair: {v}")));
            }
            let conn = pair.connection(metric)?;
            let k = pair.curvature_with(&conn);
            if let Some(v) = k.validate().first() {
                return Err(Error::Inconsistent(format!("curvature fails {v}")));
            }
            let (ric, _) = pair.ricci(metric)?;
            (conn.nabla, k, ric, pair.isotropy_dim(), None)
        }
    };
    let ip = k.ip().clone();
    let n = ip.dim();
    let ricci = ip.gram_inv().mul(&ricci_form);
    let scalar_curvature = ricci.trace();
    let flat = k.is_zero();
    let ricci_flat = ricci.is_zero();
    let rs = ricci.max_magnitude();
    let ricci_isotropic = !ricci_flat && ricci.mul(&ricci).is_zero_at(rs * rs);
    let lam = scalar_curvature.clone() / S::from_i64(n as i64);
    let einstein = ricci.approx_eq(&Mat::identity(n).scale(&lam)).then_some(lam);
    let witness = k.semi_symmetry_witness();
    let splitting = if witness.is_none() { Some(k.ricci_splitting()?) } else { None };

    let hk = k.primitive_holonomy();
    let hol = holonomy_closure(&hk, &nomizu);
    let lc = LeviCivita { left: nomizu };
    let cov = CovariantDerivatives::compute(&lc, &k);
    let lorentzian = ip.is_lorentzian();

    let petrov = if n == 4 && lorentzian && einstein.is_some() && !flat {
        let tag = petrov_tag(&k)?;
        let eigen = match petrov_type(&k) {
            Ok(p) => Some(p.eigen),
            Err(Error::Irrational(_)) => None,
            Err(e) => return Err(e),
        };
        let branch = if witness.is_none() { Some(classify_einstein_semisym(&k)?) } else { None };
        Some(PetrovData { tag, eigen, branch })
    } else {
        None
    };
    let normal_form = if n == 4 && lorentzian && ricci_isotropic && witness.is_none() {
        match isotropic_normal_form(&k) {
            Ok(nf) => Some(nf),
            Err(Error::Precondition(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(Analysis {
        subject_kind: subject.kind(),
        dim: n,
        isotropy_dim,
        signature: ip.signature(),
        lorentzian,
        nomizu: lc.left,
        ricci_form,
        ricci,
        scalar_curvature,
        flat,
        ricci_flat,
        ricci_isotropic,
        einstein,
        semi_symmetry_witness: witness,
        splitting,
        dim_hk: hk.len(),
        dim_holonomy: hol.len(),
        holonomy: hol,
        locally_symmetric: cov.locally_symmetric,
        nabla2_vanishes: cov.second_order,
        petrov,
        normal_form,
        identities,
        curvature: k,
    })
}

/// Whether two families of endomorphisms span the same subspace.
pub fn same_span<S: Scalar>(a: &[Endo<S>], b: &[Endo<S>]) -> bool {
    let Some(first) = a.first().or(b.first()) else { return true };
    let dim = first.rows() * first.cols();
    let scale = a.iter().chain(b).map(Mat::max_magnitude).fold(1.0, f64::max);
    let rank = |ms: &mut dyn Iterator<Item = &Endo<S>>| {
        let mut sp = SpanBuilder::with_scale(dim, scale);
        ms.filter(|m| sp.insert(m.entries())).count()
    };
    let ra = rank(&mut a.iter());
    ra == rank(&mut b.iter()) && ra == rank(&mut a.iter().chain(b))
}

// ---------------------------------------------------------------------------
// JSON report

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvatureEntry {
    pub i: usize,
    pub j: usize,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockReport {
    pub eigenvalue: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenReport {
    pub value: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PetrovReport {
    pub tag: PetrovTag,
    pub eigenvalues: Option<Vec<EigenReport>>,
    pub branch: Option<EinsteinBranch>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalFormReport {
    pub a: String,
    pub b: String,
    pub ricci_sign: i32,
    pub rational_basis: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub name: Option<String>,
    pub kind: String,
    pub mode: Mode,
    pub dim: usize,
    pub isotropy_dim: usize,
    pub params: BTreeMap<String, String>,
    pub basis: Vec<String>,
    /// `[negative, positive]` counts.
    pub signature: [usize; 2],
    pub lorentzian: bool,
    pub levi_civita: Vec<Vec<Vec<String>>>,
    pub curvature: Vec<CurvatureEntry>,
    pub ricci_form: Vec<Vec<String>>,
    pub ricci: Vec<Vec<String>>,
    pub scalar_curvature: String,
    pub ricci_type: RicciType,
    pub einstein_lambda: Option<String>,
    pub semi_symmetric: bool,
    pub semi_symmetry_witness: Option<[usize; 4]>,
    pub splitting: Option<Vec<BlockReport>>,
    pub dim_hk: usize,
    pub dim_holonomy: usize,
    pub holonomy_equals_hk: bool,
    pub locally_symmetric: bool,
    pub second_order_symmetric: bool,
    pub symmetry: SymmetryLevel,
    pub petrov: Option<PetrovReport>,
    pub normal_form: Option<NormalFormReport>,
    pub identities: Option<IdentityReport>,
    pub statement: Option<String>,
}

fn mat_strings<S: Scalar>(m: &Mat<S>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

impl<S: Scalar> Analysis<S> {
    pub fn report(&self, subject: &Subject<S>, statement: Option<String>) -> Report {
        let n = self.dim;
        let mut curvature = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let m = self.curvature.op(i, j);
                if !m.is_zero() {
                    curvature.push(CurvatureEntry { i, j, matrix: mat_strings(m) });
                }
            }
        }
        let basis = match subject {
            Subject::Lie(g) => g.basis_names.clone(),
            Subject::Pair { pair, .. } => pair.basis_names.clone(),
        };
        Report {
            name: subject.name().map(str::to_string),
            kind: subject.kind().to_string(),
            mode: S::MODE,
            dim: n,
            isotropy_dim: self.isotropy_dim,
            params: subject.params().iter().cloned().collect(),
            basis,
            signature: [self.signature.0, self.signature.1],
            lorentzian: self.lorentzian,
            levi_civita: self.nomizu.iter().map(mat_strings).collect(),
            curvature,
            ricci_form: mat_strings(&self.ricci_form),
            ricci: mat_strings(&self.ricci),
            scalar_curvature: self.scalar_curvature.to_string(),
            ricci_type: self.ricci_type(),
            einstein_lambda: self.einstein.as_ref().map(|l| l.to_string()),
            semi_symmetric: self.semi_symmetric(),
            semi_symmetry_witness: self.semi_symmetry_witness,
            splitting: self.splitting.as_ref().map(|sp| {
                sp.blocks.iter().map(|b| BlockReport { eigenvalue: b.eigenvalue.to_string(), dim: b.basis.len() }).collect()
            }),
            dim_hk: self.dim_hk,
            dim_holonomy: self.dim_holonomy,
            holonomy_equals_hk: self.holonomy_equals_hk(),
            locally_symmetric: self.locally_symmetric,
            second_order_symmetric: self.second_order_symmetric(),
            symmetry: self.symmetry_level(),
            petrov: self.petrov.as_ref().map(|p| PetrovReport {
                tag: p.tag,
                eigenvalues: p.eigen.as_ref().map(|es| {
                    es.iter().map(|e| EigenReport { value: e.root.to_string(), multiplicity: e.mult }).collect()
                }),
                branch: p.branch,
            }),
            normal_form: self.normal_form.as_ref().map(|nf| NormalFormReport {
                a: nf.a.to_string(),
                b: nf.b.to_string(),
                ricci_sign: nf.ricci_sign,
                rational_basis: nf.basis.is_some(),
                note: nf.note.clone(),
            }),
            identities: self.identities.clone(),
            statement,
        }
    }
}

impl Report {
    /// A few human-readable lines.
    pub fn summary_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        let name = self.name.clone().unwrap_or_else(|| "(unnamed)".into());
        out.push(format!("{name}: {} of dimension {}, signature ({}, {}), {} mode", self.kind, self.dim, self.signature[0], self.signature[1], self.mode));
        let ricci = match (&self.ricci_type, &self.einstein_lambda) {
            (RicciType::Einstein, Some(l)) => format!("Einstein λ={l}"),
            (t, _) => serde_json::to_value(t).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default(),
        };
        out.push(format!("  Ricci: {ricci}; scalar curvature {}", self.scalar_curvature));
        match &self.semi_symmetry_witness {
            None => out.push("  semi-symmetric".into()),
            Some(w) => out.push(format!("  NOT semi-symmetric: [K(e{},e{}), K(e{},e{})] fails the derivation rule", w[0], w[1], w[2], w[3])),
        }
        let level = serde_json::to_value(self.symmetry).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
        out.push(format!("  symmetry: {level}; locally symmetric: {}; second-order: {}", self.locally_symmetric, self.second_order_symmetric));
        out.push(format!("  dim h(K) = {}, dim h = {}", self.dim_hk, self.dim_holonomy));
        if let Some(sp) = &self.splitting {
            let parts: Vec<String> = sp.iter().filter(|b| b.dim > 0).map(|b| format!("{}:{}", b.eigenvalue, b.dim)).collect();
            out.push(format!("  Ricci splitting (eigenvalue:dim) {}", parts.join(" ")));
        }
        if let Some(p) = &self.petrov {
            let eig = p.eigenvalues.as_ref().map(|es| {
                es.iter().map(|e| format!("{}^{}", e.value, e.multiplicity)).collect::<Vec<_>>().join(", ")
            });
            out.push(format!(
                "  Petrov {:?}{}{}",
                p.tag,
                eig.map(|e| format!(" {{{e}}}")).unwrap_or_default(),
                p.branch.map(|b| format!(", branch {b:?}")).unwrap_or_default()
            ));
        }
        if let Some(nf) = &self.normal_form {
            out.push(format!("  isotropic normal form A={}, B={} (Ricci sign {})", nf.a, nf.b, nf.ricci_sign));
        }
        if let Some(ids) = &self.identities {
            let failed: Vec<&str> = ids.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
            if failed.is_empty() {
                out.push(format!("  identities: all {} hold", ids.checks.len()));
            } else {
                out.push(format!("  identities FAILED: {}", failed.join(", ")));
            }
        }
        if let Some(s) = &self.statement {
            out.push(format!("  claim: {s}"));
        }
        out
    }
}
