//! JSON input documents.
//!
//! ```json
//! {
//!   "kind": "lie_algebra",
//!   "dim": 2,
//!   "basis": ["e", "f"],
//!   "metric": [["1", "0"], ["0", "-1"]],
//!   "brackets": { "e,f": { "e": "-2" } }
//! }
//! ```
//!
//! Coefficients are either all strings (exact rationals such as `"-3/4"` or
//! `"0.25"`) or all JSON numbers (a float document). Bracket keys name basis
//! elements `"a,b"` with `a` before `b`; omitted brackets are zero. A
//! homogeneous pair lists `isotropy_dim` isotropy elements first, and its
//! metric is the `dim × dim` form on the complement.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::homogeneous::HomogeneousPair;
use crate::lie::MetricLieAlgebra;
use crate::matrix::Mat;
use crate::pseudo::InnerProduct;
use crate::report::Subject;
use crate::scalar::{fmt_q, parse_q, Mode, Scalar, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    LieAlgebra,
    HomogeneousPair,
}

impl Kind {
    fn as_str(self) -> &'static str {
        match self {
            Kind::LieAlgebra => "lie_algebra",
            Kind::HomogeneousPair => "homogeneous_pair",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Num {
    Exact(Q),
    Float(f64),
}

impl Num {
    fn is_zero(&self) -> bool {
        match self {
            Num::Exact(q) => q == &Q::from_integer(0.into()),
            Num::Float(x) => *x == 0.0,
        }
    }

    fn to_value(&self) -> Value {
        match self {
            Num::Exact(q) => Value::String(fmt_q(q)),
            Num::Float(x) => json!(x),
        }
    }

    fn to_scalar<S: Scalar>(&self) -> S {
        match self {
            Num::Exact(q) => S::from_rational(q),
            Num::Float(x) => S::lift(*x, &|_| true).expect("float backend accepts any value"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub kind: Kind,
    pub name: Option<String>,
    /// Dimension of the algebra, or of the complement for a pair.
    pub dim: usize,
    pub isotropy_dim: usize,
    pub basis: Vec<String>,
    pub metric: Vec<Vec<Num>>,
    /// `(i, j)` with `i < j` → `k` → coefficient of basis element `k`.
    pub brackets: BTreeMap<(usize, usize), BTreeMap<usize, Num>>,
    pub params: BTreeMap<String, String>,
    /// `Float` when the numbers are JSON numbers.
    pub mode: Mode,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    kind: String,
    #[serde(default)]
    name: Option<String>,
    dim: usize,
    #[serde(default)]
    isotropy_dim: Option<usize>,
    #[serde(default)]
    basis: Option<Vec<String>>,
    metric: Vec<Vec<Value>>,
    #[serde(default)]
    brackets: BTreeMap<String, BTreeMap<String, Value>>,
    #[serde(default)]
    params: BTreeMap<String, Value>,
}

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Tracks whether a document uses strings, numbers, or (illegally) both.
#[derive(Default)]
struct Seen {
    exact: bool,
    float: bool,
}

impl Seen {
    fn num(&mut self, v: &Value, at: &str) -> Result<Num> {
        match v {
            Value::String(s) => {
                self.exact = true;
                parse_q(s).map(Num::Exact).ok_or_else(|| perr(format!("{at}: `{s}` is not a rational")))
            }
            Value::Number(n) => {
                self.float = true;
                n.as_f64().map(Num::Float).ok_or_else(|| perr(format!("{at}: number out of range")))
            }
            other => Err(perr(format!("{at}: expected a rational string or a number, found {other}"))),
        }
    }
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: Raw = serde_json::from_str(text).map_err(|e| perr(e.to_string()))?;
        let kind = match raw.kind.as_str() {
            "lie_algebra" => Kind::LieAlgebra,
            "homogeneous_pair" => Kind::HomogeneousPair,
            k => return Err(perr(format!("unknown kind `{k}`"))),
        };
        let r = match (kind, raw.isotropy_dim) {
            (Kind::LieAlgebra, Some(r)) if r > 0 => {
                return Err(perr("a lie_algebra document has no isotropy"));
            }
            (Kind::LieAlgebra, _) => 0,
            (Kind::HomogeneousPair, r) => r.ok_or_else(|| perr("homogeneous_pair needs `isotropy_dim`"))?,
        };
        let total = r + raw.dim;
        let basis = match raw.basis {
            Some(b) => b,
            None if kind == Kind::LieAlgebra => (1..=total).map(|i| format!("e{i}")).collect(),
            None => (1..=r).map(|i| format!("e{i}")).chain((1..=raw.dim).map(|i| format!("u{i}"))).collect(),
        };
        if basis.len() != total {
            return Err(perr(format!("{} basis names for dimension {total}", basis.len())));
        }
        let index: BTreeMap<&str, usize> = basis.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != total {
            return Err(perr("basis names must be distinct"));
        }
        let lookup = |name: &str| index.get(name.trim()).copied().ok_or_else(|| perr(format!("unknown basis element `{name}`")));

        let mut seen = Seen::default();
        if raw.metric.len() != raw.dim || raw.metric.iter().any(|row| row.len() != raw.dim) {
            return Err(perr(format!("metric must be {0}×{0}", raw.dim)));
        }
        let metric = raw
            .metric
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().enumerate().map(|(j, v)| seen.num(v, &format!("metric[{i}][{j}]"))).collect())
            .collect::<Result<Vec<Vec<Num>>>>()?;

        let mut brackets = BTreeMap::new();
        for (key, coeffs) in &raw.brackets {
            let (a, b) = key.split_once(',').ok_or_else(|| perr(format!("bracket key `{key}` is not `a,b`")))?;
            let (i, j) = (lookup(a)?, lookup(b)?);
            if i >= j {
                return Err(perr(format!("bracket key `{key}`: only ordered pairs a<b may appear")));
            }
            let mut out = BTreeMap::new();
            for (name, v) in coeffs {
                let x = seen.num(v, &format!("bracket `{key}`"))?;
                if !x.is_zero() {
                    out.insert(lookup(name)?, x);
                }
            }
            if !out.is_empty() {
                brackets.insert((i, j), out);
            }
        }
        let params = raw
            .params
            .iter()
            .map(|(k, v)| {
                let s = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                (k.clone(), s)
            })
            .collect();
        if seen.exact && seen.float {
            return Err(perr("document mixes rational strings and float numbers"));
        }
        let mode = if seen.float { Mode::Float } else { Mode::Exact };
        Ok(Document { kind, name: raw.name, dim: raw.dim, isotropy_dim: r, basis, metric, brackets, params, mode })
    }

    /// Canonical JSON: sorted keys, ordered bracket pairs, no zero entries.
    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("kind".into(), json!(self.kind.as_str()));
        if let Some(n) = &self.name {
            obj.insert("name".into(), json!(n));
        }
        obj.insert("dim".into(), json!(self.dim));
        if self.kind == Kind::HomogeneousPair {
            obj.insert("isotropy_dim".into(), json!(self.isotropy_dim));
        }
        obj.insert("basis".into(), json!(self.basis));
        let metric: Vec<Vec<Value>> = self.metric.iter().map(|r| r.iter().map(Num::to_value).collect()).collect();
        obj.insert("metric".into(), json!(metric));
        let mut br = Map::new();
        for ((i, j), coeffs) in &self.brackets {
            let c: Map<String, Value> = coeffs.iter().map(|(k, x)| (self.basis[*k].clone(), x.to_value())).collect();
            br.insert(format!("{},{}", self.basis[*i], self.basis[*j]), Value::Object(c));
        }
        obj.insert("brackets".into(), Value::Object(br));
        if !self.params.is_empty() {
            obj.insert("params".into(), json!(self.params));
        }
        Value::Object(obj)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("document serializes")
    }

    /// Builds the subject in backend `S`; a float document cannot run exactly.
    pub fn subject<S: Scalar>(&self) -> Result<Subject<S>> {
        if self.mode == Mode::Float && S::EXACT {
            return Err(Error::Invalid("float document cannot be analysed in exact mode".into()));
        }
        let total = self.isotropy_dim + self.dim;
        let gram = Mat::from_rows(self.metric.iter().map(|r| r.iter().map(Num::to_scalar::<S>).collect()).collect());
        let br: Vec<_> = self
            .brackets
            .iter()
            .map(|(&(i, j), coeffs)| {
                let mut v = vec![S::zero(); total];
                for (&k, x) in coeffs {
                    v[k] = x.to_scalar();
                }
                (i, j, v)
            })
            .collect();
        let params: Vec<(String, String)> = self.params.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        match self.kind {
            Kind::LieAlgebra => {
                let mut g = MetricLieAlgebra::from_brackets(InnerProduct::new(gram)?, &br)?
                    .with_basis_names(self.basis.clone())
                    .with_params(params);
                g.name = self.name.clone();
                Ok(Subject::Lie(g))
            }
            Kind::HomogeneousPair => {
                let mut pair = HomogeneousPair::from_brackets(self.isotropy_dim, self.dim, &br)?
                    .with_basis_names(self.basis.clone())
                    .with_params(params);
                pair.name = self.name.clone();
                Ok(Subject::Pair { pair, metric: gram })
            }
        }
    }

    /// Exact document of a rational subject.
    pub fn from_subject(subject: &Subject<Q>) -> Self {
        let zero = Q::from_integer(0.into());
        let collect = |total: usize, f: &dyn Fn(usize, usize) -> Vec<Q>| {
            let mut out = BTreeMap::new();
            for i in 0..total {
                for j in i + 1..total {
                    let c: BTreeMap<usize, Num> =
                        f(i, j).into_iter().enumerate().filter(|(_, x)| x != &zero).map(|(k, x)| (k, Num::Exact(x))).collect();
                    if !c.is_empty() {
                        out.insert((i, j), c);
                    }
                }
            }
            out
        };
        let to_rows = |m: &Mat<Q>| m.to_rows().into_iter().map(|r| r.into_iter().map(Num::Exact).collect()).collect();
        match subject {
            Subject::Lie(g) => Document {
                kind: Kind::LieAlgebra,
                name: g.name.clone(),
                dim: g.dim(),
                isotropy_dim: 0,
                basis: g.basis_names.clone(),
                metric: to_rows(g.ip().gram()),
                brackets: collect(g.dim(), &|i, j| g.bracket_basis(i, j)),
                params: g.params.iter().cloned().collect(),
                mode: Mode::Exact,
            },
            Subject::Pair { pair, metric } => {
                let total = pair.isotropy_dim() + pair.dim();
                Document {
                    kind: Kind::HomogeneousPair,
                    name: pair.name.clone(),
                    dim: pair.dim(),
                    isotropy_dim: pair.isotropy_dim(),
                    basis: pair.basis_names.clone(),
                    metric: to_rows(metric),
                    brackets: collect(total, &|i, j| pair.bracket_basis(i, j)),
                    params: pair.params.iter().cloned().collect(),
                    mode: Mode::Exact,
                }
            }
        }
    }
}
