//! Python bindings over the rational-scalar API of `dias`.

use std::path::PathBuf;

use dias::actor::{center, inequality_families, split_extension_report};
use dias::cli::{run_path, Command};
use dias::{
    annihilator, build_actor, canonical_morphism, check_axioms, check_conditions, check_crossed_module,
    check_xmod_action_data, fixtures, from_associative, generate_mixed_identities, is_ideal, product_span,
    semidirect_xmod, tetra_dl_space, tetra_space, verify_center_is_kernel, xmod_tetra_space, Action, AxiomReport,
    Bilinear, Field, Matrix, Op, Rational, SubspaceBasis,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

type Entry = (usize, usize, usize, String);
/// `(label, witness, difference)`
type PyViolation = (String, Vec<usize>, Vec<String>);

fn err(e: dias::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn op(name: &str) -> PyResult<Op> {
    match name {
        "left" | "⊣" => Ok(Op::Left),
        "right" | "⊢" => Ok(Op::Right),
        _ => Err(PyValueError::new_err(format!("unknown product {name:?}; use \"left\" or \"right\""))),
    }
}

fn scalars(v: &[String]) -> PyResult<Vec<Rational>> {
    v.iter().map(|s| Rational::parse_literal(s).map_err(err)).collect()
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn tensor(n: usize, entries: Vec<Entry>) -> PyResult<Bilinear<Rational>> {
    let parsed = entries
        .into_iter()
        .map(|(i, j, k, v)| Ok((i, j, k, Rational::parse_literal(&v).map_err(err)?)))
        .collect::<PyResult<Vec<_>>>()?;
    Bilinear::from_entries(n, n, n, parsed).map_err(err)
}

fn basis(s: &SubspaceBasis<Rational>) -> Vec<Vec<String>> {
    s.vectors().iter().map(|v| strings(v)).collect()
}

fn rows(m: &Matrix<Rational>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| strings(m.row(r))).collect()
}

fn violations(r: &AxiomReport) -> Vec<PyViolation> {
    r.violations.iter().map(|v| (v.label.clone(), v.witness.clone(), v.difference.clone())).collect()
}

/// A finite-dimensional dialgebra over the rationals.
#[pyclass(name = "Dialgebra", module = "pydias", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDialgebra(dias::Dialgebra<Rational>);

#[pymethods]
impl PyDialgebra {
    /// Structure constants as `(i, j, k, "p/q")`: the coefficient of `e_k`
    /// in `e_i * e_j`.
    #[new]
    #[pyo3(signature = (dim, left, right, labels=None))]
    fn new(dim: usize, left: Vec<Entry>, right: Vec<Entry>, labels: Option<Vec<String>>) -> PyResult<Self> {
        let d = dias::Dialgebra::from_tensors(tensor(dim, left)?, tensor(dim, right)?).map_err(err)?;
        Ok(Self(match labels {
            Some(l) => d.with_labels(l).map_err(err)?,
            None => d,
        }))
    }

    /// `⊣ = ⊢ =` the given product, which must be associative.
    #[staticmethod]
    fn from_associative(dim: usize, entries: Vec<Entry>) -> PyResult<Self> {
        Ok(Self(from_associative(tensor(dim, entries)?).map_err(err)?))
    }

    #[staticmethod]
    fn abelian(dim: usize) -> Self {
        Self(fixtures::abelian(dim))
    }

    #[staticmethod]
    fn d2() -> Self {
        Self(fixtures::d2())
    }

    #[staticmethod]
    fn k1() -> Self {
        Self(fixtures::k1())
    }

    #[staticmethod]
    fn dual_numbers() -> Self {
        Self(fixtures::dual_numbers())
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.0.labels().to_vec()
    }

    fn mul(&self, product: &str, x: Vec<String>, y: Vec<String>) -> PyResult<Vec<String>> {
        let (x, y) = (scalars(&x)?, scalars(&y)?);
        if x.len() != self.0.dim() || y.len() != self.0.dim() {
            return Err(PyValueError::new_err(format!("vectors must have length {}", self.0.dim())));
        }
        Ok(strings(&self.0.mul(op(product)?, &x, &y)))
    }

    fn check_axioms(&self) -> Vec<PyViolation> {
        violations(&check_axioms(&self.0))
    }

    fn annihilator(&self) -> Vec<Vec<String>> {
        basis(&annihilator(&self.0))
    }

    fn product_span(&self, product: &str) -> PyResult<Vec<Vec<String>>> {
        Ok(basis(&product_span(&self.0, op(product)?)))
    }

    /// Violations of the two-sided ideal conditions for the span of `vectors`.
    fn ideal_violations(&self, vectors: Vec<Vec<String>>) -> PyResult<Vec<PyViolation>> {
        let s = span(self.0.dim(), vectors)?;
        Ok(violations(&is_ideal(&self.0, &s).map_err(err)?))
    }

    fn tetra_basis(&self) -> Vec<Vec<String>> {
        basis(tetra_space(&self.0).basis())
    }

    fn __repr__(&self) -> String {
        format!("Dialgebra(dim={}, labels={:?})", self.0.dim(), self.0.labels())
    }
}

fn span(n: usize, vectors: Vec<Vec<String>>) -> PyResult<SubspaceBasis<Rational>> {
    let vs = vectors.iter().map(|v| scalars(v)).collect::<PyResult<Vec<_>>>()?;
    SubspaceBasis::span(n, vs).map_err(err)
}

/// A crossed module `(L, D, μ)` with its action of `D` on `L`.
#[pyclass(name = "CrossedModule", module = "pydias", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCrossedModule(dias::CrossedModule<Rational>);

#[pymethods]
impl PyCrossedModule {
    #[staticmethod]
    fn identity(d: &PyDialgebra) -> Self {
        Self(dias::CrossedModule::identity(&d.0))
    }

    /// The inclusion of the ideal spanned by `vectors`, acted on by products.
    #[staticmethod]
    fn from_ideal(d: &PyDialgebra, vectors: Vec<Vec<String>>) -> PyResult<Self> {
        let s = span(d.0.dim(), vectors)?;
        Ok(Self(dias::CrossedModule::from_ideal(&d.0, &s).map_err(err)?))
    }

    #[staticmethod]
    fn zero_over(d: &PyDialgebra) -> Self {
        Self(dias::CrossedModule::zero_over(&d.0))
    }

    /// The zero map `l → d` with the trivial action.
    #[staticmethod]
    fn trivial(l: &PyDialgebra, d: &PyDialgebra) -> PyResult<Self> {
        let action = Action::trivial(d.0.dim(), l.0.dim());
        Ok(Self(dias::CrossedModule::zero_map(&l.0, &d.0, action).map_err(err)?))
    }

    #[getter]
    fn l(&self) -> PyDialgebra {
        PyDialgebra(self.0.l.clone())
    }

    #[getter]
    fn d(&self) -> PyDialgebra {
        PyDialgebra(self.0.d.clone())
    }

    #[getter]
    fn mu(&self) -> Vec<Vec<String>> {
        rows(&self.0.mu)
    }

    fn check(&self) -> PyResult<Vec<PyViolation>> {
        Ok(violations(&check_crossed_module(&self.0).map_err(err)?))
    }

    /// `(dim Tetra(L), dim Tetra(D,L), dim Tetra(L,D,μ))`
    fn tetra_dims(&self) -> PyResult<(usize, usize, usize)> {
        Ok((
            tetra_space(&self.0.l).dim(),
            tetra_dl_space(&self.0).map_err(err)?.dim(),
            xmod_tetra_space(&self.0).map_err(err)?.dim(),
        ))
    }

    /// The candidate actor as a crossed module.
    fn actor(&self) -> PyResult<PyCrossedModule> {
        Ok(PyCrossedModule(build_actor(&self.0).map_err(err)?.xmod))
    }

    fn canonical_morphism<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let m = canonical_morphism(&self.0).map_err(err)?;
        let out = PyDict::new(py);
        out.set_item("phi", rows(&m.phi))?;
        out.set_item("psi", rows(&m.psi))?;
        out.set_item("violations", violations(&m.report))?;
        out.set_item("advisory", m.report.advisory)?;
        Ok(out)
    }

    fn conditions(&self) -> Vec<&'static str> {
        check_conditions(&self.0).holding()
    }

    /// `(fixed part of L, central part of D)` as spanning bases.
    fn center(&self) -> (Vec<Vec<String>>, Vec<Vec<String>>) {
        let c = center(&self.0);
        (basis(&c.l_fixed), basis(&c.d_center))
    }

    fn verify_center<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let c = verify_center_is_kernel(&self.0).map_err(err)?;
        let out = PyDict::new(py);
        out.set_item("l_fixed", basis(&c.center.l_fixed))?;
        out.set_item("d_center", basis(&c.center.d_center))?;
        out.set_item("ker_phi", basis(&c.ker_phi))?;
        out.set_item("ker_psi", basis(&c.ker_psi))?;
        out.set_item("violations", violations(&c.report))?;
        out.set_item("advisory", c.report.advisory)?;
        Ok(out)
    }

    fn __repr__(&self) -> String {
        format!("CrossedModule(dim L={}, dim D={})", self.0.l.dim(), self.0.d.dim())
    }
}

/// An action of one crossed module on another.
#[pyclass(name = "ActionData", module = "pydias", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyActionData(dias::XModActionData<Rational>);

#[pymethods]
impl PyActionData {
    /// A crossed module acting on itself.
    #[staticmethod]
    fn conjugation(xm: &PyCrossedModule) -> Self {
        Self(dias::XModActionData::conjugation(&xm.0))
    }

    fn check(&self) -> Vec<PyViolation> {
        violations(&check_xmod_action_data(&self.0))
    }

    fn inequality_families(&self) -> Vec<PyViolation> {
        violations(&inequality_families(&self.0))
    }

    /// The semidirect product crossed module and the violations of its
    /// split-extension equations.
    fn semidirect(&self) -> PyResult<(PyCrossedModule, Vec<PyViolation>)> {
        let s = semidirect_xmod(&self.0).map_err(err)?;
        let report = split_extension_report(&s, &self.0).map_err(err)?;
        Ok((PyCrossedModule(s.xmod), violations(&report)))
    }
}

/// Labels of the 5 axioms instantiated over the sorts, e.g. `{"D": 1, "L": 2}`.
#[pyfunction]
fn mixed_identity_labels(counts: Vec<(String, usize)>) -> PyResult<Vec<String>> {
    let counts: Vec<(Sorted<'_>, usize)> = counts.iter().map(|(s, c)| (Sorted(s), *c)).collect();
    let ts = generate_mixed_identities(&counts).map_err(err)?;
    Ok(ts.iter().map(|t| t.label()).collect())
}

#[derive(Clone, Copy, PartialEq, Eq)]
struct Sorted<'a>(&'a str);

impl std::fmt::Display for Sorted<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.0)
    }
}

/// Runs a command-line subcommand on a definition file and returns
/// `(exit_code, json_report)`.
#[pyfunction]
#[pyo3(signature = (command, path, name=None, space=None, scalars=None))]
fn run(
    command: &str,
    path: PathBuf,
    name: Option<String>,
    space: Option<String>,
    scalars: Option<String>,
) -> PyResult<(i32, String)> {
    let need = |n: Option<String>| n.ok_or_else(|| PyValueError::new_err(format!("{command} needs a name")));
    let cmd = match command {
        "check" => Command::Check { object: name },
        "tetra" => Command::Tetra {
            space: space.unwrap_or_else(|| "L".into()),
            object: need(name)?,
        },
        "actor" => Command::Actor { xmod: need(name)? },
        "center" => Command::Center { xmod: need(name)? },
        "semidirect" => Command::Semidirect { data: need(name)? },
        "verify-center" => Command::VerifyCenter { xmod: need(name)? },
        "conditions" => Command::Conditions { xmod: need(name)? },
        other => return Err(PyValueError::new_err(format!("unknown command {other:?}"))),
    };
    let report = run_path(&cmd, &path, scalars.as_deref());
    Ok((report.exit_code(), report.to_json()))
}

#[pymodule]
fn pydias(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDialgebra>()?;
    m.add_class::<PyCrossedModule>()?;
    m.add_class::<PyActionData>()?;
    m.add_function(wrap_pyfunction!(mixed_identity_labels, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
