//! Python bindings for the ggwb workbench.

use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

use ggwb_core::symexpr::{self, ScalarExpr};
use ggwb_core::workbench::{self, CheckRequest};
use ggwb_core::GgError;

fn err(e: GgError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Exact scalar expression in the chart coordinates.
#[pyclass(name = "Expr", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyExpr(ScalarExpr);

#[pymethods]
impl PyExpr {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        symexpr::parse(text).map(PyExpr).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn diff(&self, var: &str) -> Self {
        PyExpr(self.0.diff(var))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Zero test under the given sampling policy; returns the verdict name.
    #[pyo3(signature = (seed=0, samples=32))]
    fn verdict(&self, seed: u64, samples: usize) -> PyResult<String> {
        let pol = symexpr::ZeroPolicy { seed, samples, ..Default::default() };
        let v = symexpr::is_zero(&self.0, &pol, "expr").map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(v.label().to_string())
    }

    fn __add__(&self, o: &Self) -> Self {
        PyExpr(&self.0 + &o.0)
    }

    fn __sub__(&self, o: &Self) -> Self {
        PyExpr(&self.0 - &o.0)
    }

    fn __mul__(&self, o: &Self) -> Self {
        PyExpr(&self.0 * &o.0)
    }

    fn __truediv__(&self, o: &Self) -> PyResult<Self> {
        self.0.checked_div(&o.0).map(PyExpr).ok_or_else(|| PyZeroDivisionError::new_err("division by zero"))
    }

    fn __neg__(&self) -> Self {
        PyExpr(-&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Expr('{}')", self.0)
    }
}

/// Result of a check run.
#[pyclass(name = "Report", frozen)]
struct PyReport(workbench::Report);

#[pymethods]
impl PyReport {
    fn json(&self) -> String {
        self.0.to_json()
    }

    fn text(&self) -> String {
        self.0.to_text()
    }

    #[getter]
    fn exit_code(&self) -> i32 {
        self.0.exit_code()
    }

    #[getter]
    fn failed(&self) -> bool {
        self.0.any_failed()
    }

    /// `(label, structure, status)` for every entry.
    #[getter]
    fn entries(&self) -> Vec<(String, String, String)> {
        self.0.entries.iter().map(|e| (e.label.clone(), e.structure.clone(), format!("{:?}", e.status))).collect()
    }

    fn status(&self, label: &str, structure: &str) -> Option<String> {
        self.0.entry(label, structure).map(|e| format!("{:?}", e.status))
    }
}

#[pyclass(name = "Scenario", frozen)]
struct PyScenario(workbench::Scenario);

#[pymethods]
impl PyScenario {
    #[staticmethod]
    #[pyo3(signature = (text, name="scenario"))]
    fn from_json(text: &str, name: &str) -> PyResult<Self> {
        workbench::parse_scenario(text, name).map(PyScenario).map_err(err)
    }

    #[staticmethod]
    fn load(path: std::path::PathBuf) -> PyResult<Self> {
        workbench::load_scenario(&path).map(PyScenario).map_err(err)
    }

    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        workbench::builtin(name).map(PyScenario).map_err(err)
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name.clone()
    }

    /// `(name, kind)` of each declared structure.
    #[getter]
    fn structures(&self) -> Vec<(String, String)> {
        self.0.subjects.iter().map(|(n, s)| (n.clone(), format!("{:?}", s.kind()))).collect()
    }

    /// Runs checks; with no labels the scenario's own list is used.
    #[pyo3(signature = (labels=None, seed=None, samples=None, tol=None))]
    fn check(
        &self,
        py: Python<'_>,
        labels: Option<Vec<String>>,
        seed: Option<u64>,
        samples: Option<usize>,
        tol: Option<f64>,
    ) -> PyResult<PyReport> {
        let s = &self.0;
        let mut pol = s.policy.clone();
        pol.seed = seed.unwrap_or(pol.seed);
        pol.samples = samples.unwrap_or(pol.samples);
        pol.tol = tol.unwrap_or(pol.tol);
        let req: Vec<CheckRequest> = match labels {
            Some(l) => l.iter().map(|x| CheckRequest::parse(x)).collect(),
            None => s.checks.clone(),
        };
        py.detach(|| workbench::run_with(s, &req, &pol)).map(PyReport).map_err(err)
    }
}

/// Names of the built-in scenarios.
#[pyfunction]
fn builtins() -> Vec<&'static str> {
    workbench::BUILTINS.iter().map(|b| b.name).collect()
}

/// `(label, description)` for every check label.
#[pyfunction]
fn labels() -> Vec<(&'static str, &'static str)> {
    workbench::LABELS.iter().map(|l| (l.label, l.about)).collect()
}

#[pymodule]
fn ggwb(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyExpr>()?;
    m.add_class::<PyScenario>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(builtins, m)?)?;
    m.add_function(wrap_pyfunction!(labels, m)?)?;
    Ok(())
}
