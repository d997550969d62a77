//! Python bindings. The extension module is importable as `causal_teams`.

use causal_teams::causality::{detect, CauseKind};
use causal_teams::laws::{self, GeneratorConfig, LawKind, DEFAULT_SEED, DEFAULT_TRIALS};
use causal_teams::prob::{check_markov_axiom, check_markov_condition, conditional_probability, probability_of};
use causal_teams::{
    do_intervention, load_team, load_team_file, parse, satisfies, satisfies_admissible, satisfies_falsifiable, Atom,
    CausalTeam, Error, InterventionSpec, Probability,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyString};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn atom_to_py(py: Python<'_>, a: &Atom) -> PyResult<Py<PyAny>> {
    Ok(match a {
        Atom::Int(i) => i.into_pyobject(py)?.into_any().unbind(),
        Atom::Str(s) => PyString::new(py, s).into_any().unbind(),
    })
}

fn atom_from_py(ob: &Bound<'_, PyAny>) -> PyResult<Atom> {
    if let Ok(i) = ob.extract::<i64>() {
        return Ok(Atom::Int(i));
    }
    if let Ok(s) = ob.extract::<String>() {
        return Ok(Atom::Str(s));
    }
    Err(PyValueError::new_err("values must be int or str"))
}

fn fraction(py: Python<'_>, p: Probability) -> PyResult<Py<PyAny>> {
    let cls = py.import("fractions")?.getattr("Fraction")?;
    Ok(cls.call1((*p.numer(), *p.denom()))?.unbind())
}

/// A causal team or multiteam.
#[pyclass(name = "Team", module = "causal_teams", frozen)]
pub struct PyTeam {
    inner: CausalTeam,
}

impl PyTeam {
    fn wrap(inner: CausalTeam) -> Self {
        PyTeam { inner }
    }
}

#[pymethods]
impl PyTeam {
    /// Parses a team document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        load_team(text).map(Self::wrap).map_err(err)
    }

    #[staticmethod]
    fn load(path: std::path::PathBuf) -> PyResult<Self> {
        load_team_file(&path).map(Self::wrap).map_err(err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    #[getter]
    fn is_multiteam(&self) -> bool {
        self.inner.is_multiteam()
    }

    /// Arrows as `(parent, child)` name pairs.
    #[getter]
    fn edges(&self) -> Vec<(String, String)> {
        self.inner.graph().named_edges()
    }

    fn __len__(&self) -> usize {
        self.inner.cardinality() as usize
    }

    fn __repr__(&self) -> String {
        format!(
            "Team({} variables, {} rows, {})",
            self.inner.len_vars(),
            self.inner.rows().len(),
            if self.inner.is_multiteam() { "multi" } else { "set" }
        )
    }

    /// Rows as `(values, count)`. Formal terms are rendered as strings.
    fn rows<'py>(&self, py: Python<'py>) -> PyResult<Vec<(Bound<'py, PyDict>, u64)>> {
        self.inner
            .rows()
            .iter()
            .map(|r| {
                let d = PyDict::new(py);
                for (name, v) in self.inner.names().iter().zip(&r.values) {
                    match v.as_proper() {
                        Some(a) => d.set_item(name, atom_to_py(py, a)?)?,
                        None => d.set_item(name, v.to_string())?,
                    }
                }
                Ok((d, r.count))
            })
            .collect()
    }

    #[pyo3(signature = (columns=None))]
    fn table(&self, columns: Option<Vec<String>>) -> PyResult<String> {
        let cols = columns.unwrap_or_else(|| self.inner.names().to_vec());
        let refs: Vec<&str> = cols.iter().map(String::as_str).collect();
        self.inner.render_table(&refs).map_err(err)
    }

    fn as_multiteam(&self) -> Self {
        Self::wrap(self.inner.as_multiteam())
    }

    /// `do(...)` from a dict such as `{"X": 1}` or a string such as `"X=1,Y=2"`.
    fn intervene(&self, bindings: &Bound<'_, PyAny>) -> PyResult<Self> {
        let spec = if let Ok(text) = bindings.extract::<String>() {
            InterventionSpec::parse(&text).map_err(err)?
        } else {
            let d = bindings.cast::<PyDict>()?;
            let mut pairs = Vec::with_capacity(d.len());
            for (k, v) in d.iter() {
                pairs.push((k.extract::<String>()?, atom_from_py(&v)?));
            }
            InterventionSpec::new(pairs)
        };
        do_intervention(&self.inner, &spec).map(Self::wrap).map_err(err)
    }

    /// Evaluates a formula; `mode` is "standard", "falsifiable" or "admissible".
    #[pyo3(signature = (formula, mode="standard"))]
    fn check(&self, formula: &str, mode: &str) -> PyResult<bool> {
        let phi = parse(formula).map_err(err)?;
        let verdict = match mode {
            "standard" => satisfies(&self.inner, &phi),
            "falsifiable" => satisfies_falsifiable(&self.inner, &phi),
            "admissible" => satisfies_admissible(&self.inner, &phi),
            other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
        };
        Ok(verdict.map_err(err)?.satisfied)
    }

    /// Exact probability as a `fractions.Fraction`.
    #[pyo3(signature = (formula, given=None))]
    fn probability(&self, py: Python<'_>, formula: &str, given: Option<&str>) -> PyResult<Py<PyAny>> {
        let team = self.inner.as_multiteam();
        let target = parse(formula).map_err(err)?;
        let p = match given {
            Some(g) => conditional_probability(&team, &target, &parse(g).map_err(err)?),
            None => probability_of(&team, &target),
        };
        fraction(py, p.map_err(err)?)
    }

    /// A witness line for DC, TC, PDC, PTC or CC, or None.
    fn cause(&self, kind: &str, cause: &str, effect: &str) -> PyResult<Option<String>> {
        let k = CauseKind::parse(kind).ok_or_else(|| PyValueError::new_err(format!("unknown cause kind {kind:?}")))?;
        Ok(detect(&self.inner, k, cause, effect).map_err(err)?.map(|w| w.to_string()))
    }

    /// `(holds, checks, violation)` for "axiom" or "condition".
    #[pyo3(signature = (check="axiom"))]
    fn markov(&self, check: &str) -> PyResult<(bool, usize, Option<String>)> {
        let report = match check {
            "axiom" => check_markov_axiom(&self.inner),
            "condition" => check_markov_condition(&self.inner),
            other => return Err(PyValueError::new_err(format!("unknown check {other:?}"))),
        }
        .map_err(err)?;
        Ok((report.holds, report.checks, report.violation.map(|v| v.to_string())))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// Canonical text of a formula.
#[pyfunction]
fn parse_formula(text: &str) -> PyResult<String> {
    parse(text).map(|f| f.to_string()).map_err(err)
}

/// Registered laws as `(id, kind, statement)`.
#[pyfunction]
fn law_ids() -> Vec<(&'static str, &'static str, &'static str)> {
    laws::registry()
        .into_iter()
        .map(|l| {
            let kind = match l.kind {
                LawKind::Universal => "universal",
                LawKind::Counterexample => "counterexample",
            };
            (l.id, kind, l.statement)
        })
        .collect()
}

/// Runs one law; returns `(passed, report)`.
#[pyfunction]
#[pyo3(signature = (law, trials=DEFAULT_TRIALS, seed=DEFAULT_SEED))]
fn check_law(law: &str, trials: usize, seed: u64) -> PyResult<(bool, String)> {
    let cfg = GeneratorConfig {
        seed,
        ..GeneratorConfig::default()
    };
    let r = laws::check_law(law, &cfg, trials).map_err(err)?;
    Ok((r.passed(), r.to_string()))
}

/// A random parametric team from the law harness generator.
#[pyfunction]
#[pyo3(signature = (seed, multiteam=false, max_vars=4, max_rows=8))]
fn generate_team(seed: u64, multiteam: bool, max_vars: usize, max_rows: usize) -> PyResult<PyTeam> {
    let cfg = GeneratorConfig {
        seed,
        multiteam,
        parametric: true,
        max_vars,
        max_rows,
        ..GeneratorConfig::default()
    };
    cfg.validate().map_err(err)?;
    Ok(PyTeam::wrap(laws::generate_team(&cfg)))
}

#[pymodule]
#[pyo3(name = "causal_teams")]
fn causal_teams_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTeam>()?;
    m.add_function(wrap_pyfunction!(parse_formula, m)?)?;
    m.add_function(wrap_pyfunction!(law_ids, m)?)?;
    m.add_function(wrap_pyfunction!(check_law, m)?)?;
    m.add_function(wrap_pyfunction!(generate_team, m)?)?;
    Ok(())
}
