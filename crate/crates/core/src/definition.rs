//! JSON definition files: named dialgebras, maps, actions, crossed modules
//! and action data with sparse structure constants.
//!
//! ```json
//! {
//!   "scalars": "rational",
//!   "algebras": {
//!     "D2": { "dim": 2, "left": [[0, 0, 0, "1"], [1, 0, 1, "1"]],
//!             "right": [[0, 0, 0, "1"], [0, 1, 1, "1"]] }
//!   },
//!   "crossed_modules": { "id_D2": { "kind": "identity", "algebra": "D2" } }
//! }
//! ```
//!
//! Scalars are strings `"p/q"` or integers. Matrices are lists of rows,
//! one row per target basis vector.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::action::{Action, CrossedModule};
use crate::actor::XModActionData;
use crate::dialgebra::{default_labels, from_associative, Dialgebra};
use crate::error::{Error, Result};
use crate::identity::Op;
use crate::linalg::{Matrix, SubspaceBasis};
use crate::scalar::Field;
use crate::tensor::Bilinear;

/// A scalar literal as written in a file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn literal(&self) -> String {
        match self {
            Scalar::Int(n) => n.to_string(),
            Scalar::Text(s) => s.clone(),
        }
    }
}

/// `[i, j, k, value]`: the coefficient of `e_k` in `e_i ∗ e_j`.
pub type Entry = (usize, usize, usize, Scalar);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<Vec<Entry>>,
    /// One associative product used for both `⊣` and `⊢`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub associative: Option<Vec<Entry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub from: String,
    pub to: String,
    pub matrix: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ActionSpec {
    /// Four sparse tensors: actor ⊣ module, module ⊣ actor, and the ⊢ pair.
    Explicit {
        actor: String,
        module: String,
        dl: Vec<Entry>,
        ld: Vec<Entry>,
        dl_r: Vec<Entry>,
        ld_r: Vec<Entry>,
    },
    /// An algebra acting on itself by its products.
    Products { algebra: String },
    Trivial { actor: String, module: String },
    /// The action inside a named crossed module.
    OfXmod { xmod: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum XModSpec {
    Explicit { l: String, d: String, mu: String, action: String },
    /// `(D, D, id)`
    Identity { algebra: String },
    /// `(I, D, ι)` for the ideal spanned by `basis`.
    Ideal { algebra: String, basis: Vec<Vec<Scalar>> },
    /// `(0, D, 0)`
    ZeroOver { algebra: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ActionDataSpec {
    Explicit {
        source: String,
        target: String,
        p_on_l: String,
        p_on_d: String,
        xi1_l: Vec<Entry>,
        xi1_r: Vec<Entry>,
        xi2_l: Vec<Entry>,
        xi2_r: Vec<Entry>,
    },
    /// A crossed module acting on itself.
    Conjugation { xmod: String },
    /// `(0, P, 0)` acting through actions of `P` alone.
    ZeroSource {
        algebra: String,
        target: String,
        p_on_l: String,
        p_on_d: String,
    },
}

/// The parsed document. Cross-references are kept by name; [`Model`] holds
/// the resolved objects.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefinitionFile {
    /// `"rational"` or `"mod-p"`; absent means the caller's default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalars: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, MapSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub actions: BTreeMap<String, ActionSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub crossed_modules: BTreeMap<String, XModSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub action_data: BTreeMap<String, ActionDataSpec>,
}

/// The ground field requested by a file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarMode {
    Rational,
    ModP(u64),
}

impl ScalarMode {
    /// `"rational"`, `"mod-p"` with a separate prime, or `"mod-7"`.
    pub fn parse(name: &str, p: Option<u64>) -> Result<Self> {
        match (name, p) {
            ("rational", None) => Ok(ScalarMode::Rational),
            ("rational", Some(_)) => Err(Error::Input("p: only meaningful with \"mod-p\" scalars".into())),
            ("mod-p", Some(p)) => Ok(ScalarMode::ModP(p)),
            ("mod-p", None) => Err(Error::Input("p: required with \"mod-p\" scalars".into())),
            (other, None) => other
                .strip_prefix("mod-")
                .and_then(|s| s.parse().ok())
                .map(ScalarMode::ModP)
                .ok_or_else(|| Error::Input(format!("scalars: unknown mode {other:?}, expected \"rational\" or \"mod-p\""))),
            (other, Some(_)) => Err(Error::Input(format!("scalars: unknown mode {other:?}"))),
        }
    }

    pub fn name(self) -> String {
        match self {
            ScalarMode::Rational => "rational".into(),
            ScalarMode::ModP(p) => format!("mod-{p}"),
        }
    }
}

impl DefinitionFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// The mode named in the file, if any.
    pub fn scalar_mode(&self) -> Result<Option<ScalarMode>> {
        match &self.scalars {
            None if self.p.is_some() => Err(Error::Input("p: given without \"scalars\"".into())),
            None => Ok(None),
            Some(s) => ScalarMode::parse(s, self.p).map(Some),
        }
    }

    /// Resolves every object over `F`.
    pub fn build<F: Field>(&self) -> Result<Model<F>> {
        let mut r = Resolver {
            file: self,
            model: Model::default(),
            visiting: BTreeSet::new(),
        };
        for name in self.algebras.keys() {
            r.algebra(name, "algebras")?;
        }
        for name in self.maps.keys() {
            r.map(name, "maps")?;
        }
        for name in self.actions.keys() {
            r.action(name, "actions")?;
        }
        for name in self.crossed_modules.keys() {
            r.xmod(name, "crossed_modules")?;
        }
        for name in self.action_data.keys() {
            r.action_data(name, "action_data")?;
        }
        Ok(r.model)
    }

    /// Canonical JSON: sorted names, sorted and merged entries with zeros
    /// dropped, scalars in lowest terms in `F`.
    pub fn normalize<F: Field>(&self) -> Result<DefinitionFile> {
        let mut out = self.clone();
        let entries = |path: &str, es: &mut Vec<Entry>| -> Result<()> {
            let mut acc: BTreeMap<(usize, usize, usize), F> = BTreeMap::new();
            for (n, (i, j, k, v)) in es.iter().enumerate() {
                let x = scalar::<F>(v, &format!("{path}[{n}]"))?;
                let cur = acc.remove(&(*i, *j, *k)).unwrap_or_else(F::zero);
                acc.insert((*i, *j, *k), cur + x);
            }
            *es = acc
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|((i, j, k), v)| (i, j, k, Scalar::Text(v.to_string())))
                .collect();
            Ok(())
        };
        let rows = |path: &str, rows: &mut Vec<Vec<Scalar>>| -> Result<()> {
            for (r, row) in rows.iter_mut().enumerate() {
                for (c, v) in row.iter_mut().enumerate() {
                    *v = Scalar::Text(scalar::<F>(v, &format!("{path}[{r}][{c}]"))?.to_string());
                }
            }
            Ok(())
        };
        for (name, a) in out.algebras.iter_mut() {
            for (field, es) in [("left", &mut a.left), ("right", &mut a.right), ("associative", &mut a.associative)] {
                if let Some(es) = es {
                    entries(&format!("algebras.{name}.{field}"), es)?;
                }
            }
        }
        for (name, m) in out.maps.iter_mut() {
            rows(&format!("maps.{name}.matrix"), &mut m.matrix)?;
        }
        for (name, a) in out.actions.iter_mut() {
            if let ActionSpec::Explicit { dl, ld, dl_r, ld_r, .. } = a {
                for (field, es) in [("dl", dl), ("ld", ld), ("dl_r", dl_r), ("ld_r", ld_r)] {
                    entries(&format!("actions.{name}.{field}"), es)?;
                }
            }
        }
        for (name, x) in out.crossed_modules.iter_mut() {
            if let XModSpec::Ideal { basis, .. } = x {
                rows(&format!("crossed_modules.{name}.basis"), basis)?;
            }
        }
        for (name, d) in out.action_data.iter_mut() {
            if let ActionDataSpec::Explicit { xi1_l, xi1_r, xi2_l, xi2_r, .. } = d {
                for (field, es) in [("xi1_l", xi1_l), ("xi1_r", xi1_r), ("xi2_l", xi2_l), ("xi2_r", xi2_r)] {
                    entries(&format!("action_data.{name}.{field}"), es)?;
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Canonical text of a file: `serialize(parse(f))` equals this for every
/// valid `f`.
pub fn normalize_text<F: Field>(text: &str) -> Result<String> {
    Ok(DefinitionFile::from_json(text)?.normalize::<F>()?.to_json())
}

/// Writes the entries of `t` in canonical form.
pub fn tensor_entries<F: Field>(t: &Bilinear<F>) -> Vec<Entry> {
    t.entries()
        .into_iter()
        .map(|(i, j, k, v)| (i, j, k, Scalar::Text(v.to_string())))
        .collect()
}

/// Rebuilds a definition file from resolved objects: tensors and matrices
/// come from `model`, references and ideal bases from `file`.
pub fn serialize<F: Field>(file: &DefinitionFile, model: &Model<F>) -> Result<DefinitionFile> {
    let mut out = file.normalize::<F>()?;
    for (name, spec) in out.algebras.iter_mut() {
        let d = &model.algebras[name];
        let labels =
            (spec.labels.is_some() || d.labels() != default_labels(d.dim()).as_slice()).then(|| d.labels().to_vec());
        let (left, right) = (tensor_entries(d.product(Op::Left)), tensor_entries(d.product(Op::Right)));
        *spec = if spec.associative.is_some() {
            AlgebraSpec {
                dim: d.dim(),
                labels,
                left: None,
                right: None,
                associative: Some(left),
            }
        } else {
            // omitted tables stay omitted when they are still zero
            let keep = |given: bool, t: Vec<Entry>| (given || !t.is_empty()).then_some(t);
            AlgebraSpec {
                dim: d.dim(),
                labels,
                left: keep(spec.left.is_some(), left),
                right: keep(spec.right.is_some(), right),
                associative: None,
            }
        };
    }
    for (name, spec) in out.maps.iter_mut() {
        let (_, _, m) = &model.maps[name];
        spec.matrix = (0..m.rows())
            .map(|r| m.row(r).iter().map(|v| Scalar::Text(v.to_string())).collect())
            .collect();
    }
    for (name, spec) in out.actions.iter_mut() {
        if let ActionSpec::Explicit { dl, ld, dl_r, ld_r, .. } = spec {
            let a = &model.actions[name].2;
            *dl = tensor_entries(&a.dl);
            *ld = tensor_entries(&a.ld);
            *dl_r = tensor_entries(&a.dl_r);
            *ld_r = tensor_entries(&a.ld_r);
        }
    }
    for (name, spec) in out.action_data.iter_mut() {
        if let ActionDataSpec::Explicit { xi1_l, xi1_r, xi2_l, xi2_r, .. } = spec {
            let d = &model.action_data[name];
            *xi1_l = tensor_entries(&d.xi1_l);
            *xi1_r = tensor_entries(&d.xi1_r);
            *xi2_l = tensor_entries(&d.xi2_l);
            *xi2_r = tensor_entries(&d.xi2_r);
        }
    }
    Ok(out)
}

/// An action with the actor and module it was resolved against.
pub type ResolvedAction<F> = (Dialgebra<F>, Dialgebra<F>, Action<F>);

/// Resolved objects by name.
#[derive(Clone, Debug)]
pub struct Model<F> {
    pub algebras: BTreeMap<String, Dialgebra<F>>,
    /// `(from, to, matrix)`
    pub maps: BTreeMap<String, (String, String, Matrix<F>)>,
    /// `(actor, module, action)`
    pub actions: BTreeMap<String, ResolvedAction<F>>,
    pub crossed_modules: BTreeMap<String, CrossedModule<F>>,
    pub action_data: BTreeMap<String, XModActionData<F>>,
}

impl<F> Default for Model<F> {
    fn default() -> Self {
        Model {
            algebras: BTreeMap::new(),
            maps: BTreeMap::new(),
            actions: BTreeMap::new(),
            crossed_modules: BTreeMap::new(),
            action_data: BTreeMap::new(),
        }
    }
}

impl<F: Field> Model<F> {
    pub fn algebra(&self, name: &str) -> Result<&Dialgebra<F>> {
        self.algebras.get(name).ok_or_else(|| Error::Input(format!("unknown algebra {name:?}")))
    }

    pub fn xmod(&self, name: &str) -> Result<&CrossedModule<F>> {
        self.crossed_modules
            .get(name)
            .ok_or_else(|| Error::Input(format!("unknown crossed module {name:?}")))
    }

    pub fn data(&self, name: &str) -> Result<&XModActionData<F>> {
        self.action_data.get(name).ok_or_else(|| Error::Input(format!("unknown action data {name:?}")))
    }
}

fn scalar<F: Field>(v: &Scalar, path: &str) -> Result<F> {
    F::parse_literal(&v.literal()).map_err(|e| Error::Input(format!("{path}: {e}")))
}

fn tensor<F: Field>(entries: &[Entry], shape: (usize, usize, usize), path: &str) -> Result<Bilinear<F>> {
    let (a, b, c) = shape;
    let mut parsed = Vec::with_capacity(entries.len());
    for (n, (i, j, k, v)) in entries.iter().enumerate() {
        if *i >= a || *j >= b || *k >= c {
            return Err(Error::Input(format!(
                "{path}[{n}]: index [{i}, {j}, {k}] out of range for shape {a}×{b}→{c}"
            )));
        }
        parsed.push((*i, *j, *k, scalar(v, &format!("{path}[{n}]"))?));
    }
    Bilinear::from_entries(a, b, c, parsed)
}

fn rows<F: Field>(rows: &[Vec<Scalar>], cols: usize, path: &str) -> Result<Vec<Vec<F>>> {
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            if row.len() != cols {
                return Err(Error::Input(format!("{path}[{r}]: expected {cols} entries, found {}", row.len())));
            }
            row.iter()
                .enumerate()
                .map(|(c, v)| scalar(v, &format!("{path}[{r}][{c}]")))
                .collect()
        })
        .collect()
}

struct Resolver<'a, F> {
    file: &'a DefinitionFile,
    model: Model<F>,
    /// `kind:name` keys currently being resolved, for cycle detection
    visiting: BTreeSet<String>,
}

impl<F: Field> Resolver<'_, F> {
    fn enter(&mut self, key: String, path: &str) -> Result<()> {
        if !self.visiting.insert(key.clone()) {
            return Err(Error::Input(format!("{path}: reference cycle through {key}")));
        }
        Ok(())
    }

    fn algebra(&mut self, name: &str, path: &str) -> Result<Dialgebra<F>> {
        if let Some(d) = self.model.algebras.get(name) {
            return Ok(d.clone());
        }
        let spec = self
            .file
            .algebras
            .get(name)
            .ok_or_else(|| Error::Input(format!("{path}: unknown algebra {name:?}")))?;
        let here = format!("algebras.{name}");
        let n = spec.dim;
        let d = match (&spec.associative, &spec.left, &spec.right) {
            (Some(es), None, None) => {
                let t = tensor(es, (n, n, n), &format!("{here}.associative"))?;
                from_associative(t).map_err(|e| Error::Input(format!("{here}.associative: {e}")))?
            }
            (None, l, r) => {
                let empty = Vec::new();
                let left = tensor(l.as_ref().unwrap_or(&empty), (n, n, n), &format!("{here}.left"))?;
                let right = tensor(r.as_ref().unwrap_or(&empty), (n, n, n), &format!("{here}.right"))?;
                Dialgebra::from_tensors(left, right)?
            }
            _ => {
                return Err(Error::Input(format!(
                    "{here}: give either \"associative\" or \"left\"/\"right\", not both"
                )))
            }
        };
        let d = match &spec.labels {
            Some(labels) => d
                .with_labels(labels.clone())
                .map_err(|e| Error::Input(format!("{here}.labels: {e}")))?,
            None => d,
        };
        self.model.algebras.insert(name.to_string(), d.clone());
        Ok(d)
    }

    fn map(&mut self, name: &str, path: &str) -> Result<Matrix<F>> {
        if let Some((_, _, m)) = self.model.maps.get(name) {
            return Ok(m.clone());
        }
        let spec = self
            .file
            .maps
            .get(name)
            .ok_or_else(|| Error::Input(format!("{path}: unknown map {name:?}")))?;
        let here = format!("maps.{name}");
        let from = self.algebra(&spec.from, &format!("{here}.from"))?.dim();
        let to = self.algebra(&spec.to, &format!("{here}.to"))?.dim();
        if spec.matrix.len() != to {
            return Err(Error::Input(format!(
                "{here}.matrix: expected {to} rows (target dimension), found {}",
                spec.matrix.len()
            )));
        }
        let m = Matrix::from_rows(from, rows(&spec.matrix, from, &format!("{here}.matrix"))?)?;
        self.model.maps.insert(name.to_string(), (spec.from.clone(), spec.to.clone(), m.clone()));
        Ok(m)
    }

    fn action(&mut self, name: &str, path: &str) -> Result<Action<F>> {
        if let Some((_, _, a)) = self.model.actions.get(name) {
            return Ok(a.clone());
        }
        let spec = self
            .file
            .actions
            .get(name)
            .ok_or_else(|| Error::Input(format!("{path}: unknown action {name:?}")))?;
        let here = format!("actions.{name}");
        self.enter(format!("action:{name}"), path)?;
        let (actor, module, a) = match spec {
            ActionSpec::Explicit {
                actor,
                module,
                dl,
                ld,
                dl_r,
                ld_r,
            } => {
                let da = self.algebra(actor, &format!("{here}.actor"))?;
                let la = self.algebra(module, &format!("{here}.module"))?;
                let (d, l) = (da.dim(), la.dim());
                let a = Action::new(
                    tensor(dl, (d, l, l), &format!("{here}.dl"))?,
                    tensor(ld, (l, d, l), &format!("{here}.ld"))?,
                    tensor(dl_r, (d, l, l), &format!("{here}.dl_r"))?,
                    tensor(ld_r, (l, d, l), &format!("{here}.ld_r"))?,
                )?;
                (da, la, a)
            }
            ActionSpec::Products { algebra } => {
                let d = self.algebra(algebra, &format!("{here}.algebra"))?;
                let a = Action::by_products(&d);
                (d.clone(), d, a)
            }
            ActionSpec::Trivial { actor, module } => {
                let d = self.algebra(actor, &format!("{here}.actor"))?;
                let l = self.algebra(module, &format!("{here}.module"))?;
                let a = Action::trivial(d.dim(), l.dim());
                (d, l, a)
            }
            ActionSpec::OfXmod { xmod } => {
                let xm = self.xmod(xmod, &format!("{here}.xmod"))?;
                (xm.d, xm.l, xm.action)
            }
        };
        self.visiting.remove(&format!("action:{name}"));
        self.model.actions.insert(name.to_string(), (actor, module, a.clone()));
        Ok(a)
    }

    fn xmod(&mut self, name: &str, path: &str) -> Result<CrossedModule<F>> {
        if let Some(x) = self.model.crossed_modules.get(name) {
            return Ok(x.clone());
        }
        let spec = self
            .file
            .crossed_modules
            .get(name)
            .ok_or_else(|| Error::Input(format!("{path}: unknown crossed module {name:?}")))?;
        let here = format!("crossed_modules.{name}");
        self.enter(format!("xmod:{name}"), path)?;
        let xm = match spec {
            XModSpec::Explicit { l, d, mu, action } => {
                let la = self.algebra(l, &format!("{here}.l"))?;
                let da = self.algebra(d, &format!("{here}.d"))?;
                let m = self.map(mu, &format!("{here}.mu"))?;
                let (from, to, _) = &self.model.maps[mu];
                if from != l || to != d {
                    return Err(Error::Input(format!("{here}.mu: map goes {from} → {to}, expected {l} → {d}")));
                }
                let a = self.action(action, &format!("{here}.action"))?;
                CrossedModule::new(la, da, m, a).map_err(|e| Error::Input(format!("{here}: {e}")))?
            }
            XModSpec::Identity { algebra } => CrossedModule::identity(&self.algebra(algebra, &format!("{here}.algebra"))?),
            XModSpec::Ideal { algebra, basis } => {
                let d = self.algebra(algebra, &format!("{here}.algebra"))?;
                let vectors = rows(basis, d.dim(), &format!("{here}.basis"))?;
                let s = SubspaceBasis::span(d.dim(), vectors)?;
                CrossedModule::from_ideal(&d, &s).map_err(|e| Error::Input(format!("{here}.basis: {e}")))?
            }
            XModSpec::ZeroOver { algebra } => CrossedModule::zero_over(&self.algebra(algebra, &format!("{here}.algebra"))?),
        };
        self.visiting.remove(&format!("xmod:{name}"));
        self.model.crossed_modules.insert(name.to_string(), xm.clone());
        Ok(xm)
    }

    fn action_data(&mut self, name: &str, path: &str) -> Result<XModActionData<F>> {
        if let Some(d) = self.model.action_data.get(name) {
            return Ok(d.clone());
        }
        let spec = self
            .file
            .action_data
            .get(name)
            .ok_or_else(|| Error::Input(format!("{path}: unknown action data {name:?}")))?;
        let here = format!("action_data.{name}");
        let data = match spec {
            ActionDataSpec::Explicit {
                source,
                target,
                p_on_l,
                p_on_d,
                xi1_l,
                xi1_r,
                xi2_l,
                xi2_r,
            } => {
                let src = self.xmod(source, &format!("{here}.source"))?;
                let tgt = self.xmod(target, &format!("{here}.target"))?;
                let (nm, nl, nd) = (src.l.dim(), tgt.l.dim(), tgt.d.dim());
                let pl = self.action(p_on_l, &format!("{here}.p_on_l"))?;
                let pd = self.action(p_on_d, &format!("{here}.p_on_d"))?;
                XModActionData::new(
                    src,
                    tgt,
                    pl,
                    pd,
                    tensor(xi1_l, (nm, nd, nl), &format!("{here}.xi1_l"))?,
                    tensor(xi1_r, (nm, nd, nl), &format!("{here}.xi1_r"))?,
                    tensor(xi2_l, (nd, nm, nl), &format!("{here}.xi2_l"))?,
                    tensor(xi2_r, (nd, nm, nl), &format!("{here}.xi2_r"))?,
                )
                .map_err(|e| Error::Input(format!("{here}: {e}")))?
            }
            ActionDataSpec::Conjugation { xmod } => XModActionData::conjugation(&self.xmod(xmod, &format!("{here}.xmod"))?),
            ActionDataSpec::ZeroSource {
                algebra,
                target,
                p_on_l,
                p_on_d,
            } => {
                let p = self.algebra(algebra, &format!("{here}.algebra"))?;
                let tgt = self.xmod(target, &format!("{here}.target"))?;
                let pl = self.action(p_on_l, &format!("{here}.p_on_l"))?;
                let pd = self.action(p_on_d, &format!("{here}.p_on_d"))?;
                XModActionData::from_zero_source(&p, &tgt, pl, pd).map_err(|e| Error::Input(format!("{here}: {e}")))?
            }
        };
        self.model.action_data.insert(name.to_string(), data.clone());
        Ok(data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::{Rational, Zp};

    const D2: &str = r#"{
        "scalars": "rational",
        "algebras": {
            "D2": { "dim": 2, "right": [[0, 1, 1, "1"], [0, 0, 0, 1]], "left": [[1, 0, 1, "2/2"], [0, 0, 0, "1"]] }
        },
        "crossed_modules": {
            "id_D2": { "kind": "identity", "algebra": "D2" },
            "ideal": { "kind": "ideal", "algebra": "D2", "basis": [["0", "3"]] }
        },
        "actions": { "on_ideal": { "kind": "of_xmod", "xmod": "ideal" }, "self": { "kind": "products", "algebra": "D2" } },
        "action_data": { "zero": { "kind": "zero_source", "algebra": "D2", "target": "ideal", "p_on_l": "on_ideal", "p_on_d": "self" } }
    }"#;

    #[test]
    fn parses_the_fixture() {
        let f = DefinitionFile::from_json(D2).unwrap();
        let m = f.build::<Rational>().unwrap();
        assert_eq!(m.algebras["D2"], fixtures::d2());
        assert_eq!(m.crossed_modules["ideal"].l.dim(), 1);
        assert_eq!(f.scalar_mode().unwrap(), Some(ScalarMode::Rational));
    }

    #[test]
    fn round_trip() {
        let f = DefinitionFile::from_json(D2).unwrap();
        let m = f.build::<Rational>().unwrap();
        assert_eq!(serialize(&f, &m).unwrap().to_json(), normalize_text::<Rational>(D2).unwrap());
    }

    #[test]
    fn diagnostics_name_the_field() {
        let bad = r#"{"algebras": {"A": {"dim": 2, "left": [[0, 0, 2, "1"]]}}}"#;
        let e = DefinitionFile::from_json(bad).unwrap().build::<Rational>().unwrap_err().to_string();
        assert!(e.contains("algebras.A.left[0]") && e.contains("out of range"), "{e}");
        let bad = r#"{"algebras": {"A": {"dim": 1, "left": [[0, 0, 0, "1/x"]]}}}"#;
        let e = DefinitionFile::from_json(bad).unwrap().build::<Rational>().unwrap_err().to_string();
        assert!(e.contains("algebras.A.left[0]"), "{e}");
        let bad = r#"{"crossed_modules": {"x": {"kind": "identity", "algebra": "nope"}}}"#;
        let e = DefinitionFile::from_json(bad).unwrap().build::<Rational>().unwrap_err().to_string();
        assert!(e.contains("crossed_modules.x.algebra") && e.contains("nope"), "{e}");
        let e = DefinitionFile::from_json(r#"{"algebras": 3}"#).unwrap_err().to_string();
        assert!(e.contains("line 1"), "{e}");
    }

    #[test]
    fn cycles_are_rejected() {
        let bad = r#"{
            "algebras": {"A": {"dim": 1}},
            "maps": {"z": {"from": "A", "to": "A", "matrix": [["0"]]}},
            "actions": {"a": {"kind": "of_xmod", "xmod": "x"}},
            "crossed_modules": {"x": {"kind": "explicit", "l": "A", "d": "A", "mu": "z", "action": "a"}}
        }"#;
        let e = DefinitionFile::from_json(bad).unwrap().build::<Rational>().unwrap_err().to_string();
        assert!(e.contains("cycle"), "{e}");
    }

    #[test]
    fn scalar_modes() {
        assert_eq!(ScalarMode::parse("mod-p", Some(5)).unwrap(), ScalarMode::ModP(5));
        assert_eq!(ScalarMode::parse("mod-7", None).unwrap(), ScalarMode::ModP(7));
        assert!(ScalarMode::parse("real", None).is_err());
        let f = DefinitionFile::from_json(r#"{"algebras": {"A": {"dim": 1, "left": [[0, 0, 0, "7"]]}}}"#).unwrap();
        let m = f.build::<Zp<7>>().unwrap();
        assert!(m.algebras["A"].is_abelian());
    }
}
