//! Python bindings. The extension module is named `judicious`.

use judicious::oracle::{
    brute_force_best_jobs, check_rulast as rulast, RulastInstance, DEFAULT_BUDGET,
};
use judicious::{Error, GenMode, GenSpec, Verification, VertexSet};
use num_rational::Ratio;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(
    judicious,
    BudgetExceeded,
    PyException,
    "The exhaustive search would exceed its budget."
);
create_exception!(
    judicious,
    LogicError,
    PyException,
    "An internal invariant failed; the message carries a replayable dump."
);

fn to_py(e: Error) -> PyErr {
    match &e {
        Error::BudgetExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
        Error::Logic { .. } => {
            let dump = e.diagnostic().map(|d| format!("\n{d}")).unwrap_or_default();
            LogicError::new_err(format!("{e}{dump}"))
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, num: u64, den: u64) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((num, den))
}

/// Reads anything with integer `numerator` and `denominator` attributes
/// (int, fractions.Fraction).
fn rational(value: &Bound<'_, PyAny>) -> PyResult<Ratio<i64>> {
    let num: i64 = value.getattr("numerator")?.extract()?;
    let den: i64 = value.getattr("denominator")?.extract()?;
    if den == 0 {
        return Err(PyValueError::new_err("zero denominator"));
    }
    Ok(Ratio::new(num, den))
}

/// A multi-hypergraph on vertices `0..vertex_count`.
#[pyclass(name = "Hypergraph", module = "judicious", frozen)]
struct PyHypergraph {
    inner: judicious::MultiHypergraph,
}

#[pymethods]
impl PyHypergraph {
    /// `vertex_count` defaults to one more than the largest id used.
    #[new]
    #[pyo3(signature = (edges, vertex_count = None))]
    fn new(edges: Vec<Vec<usize>>, vertex_count: Option<usize>) -> PyResult<Self> {
        let inner = match vertex_count {
            Some(n) => judicious::MultiHypergraph::new(n, edges),
            None => judicious::MultiHypergraph::from_edges(edges),
        }
        .map_err(to_py)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse(text)
    }

    fn to_text(&self) -> String {
        judicious::serialize_instance(&self.inner)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn edges(&self) -> Vec<Vec<usize>> {
        self.inner.edges().to_vec()
    }

    /// Common edge size, or `None` when sizes differ or there are no edges.
    #[getter]
    fn uniformity(&self) -> Option<usize> {
        self.inner.uniformity()
    }

    #[getter]
    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    /// Number of edges meeting `vertices`.
    fn degree(&self, vertices: Vec<usize>) -> PyResult<usize> {
        self.inner
            .degree_meeting(&VertexSet::from(vertices))
            .map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.inner.edge_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Hypergraph(vertex_count={}, edge_count={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// A partition into `r` classes together with the coverage it achieves.
#[pyclass(name = "Certificate", module = "judicious", frozen)]
struct PyCertificate {
    inner: judicious::Certificate,
}

#[pymethods]
impl PyCertificate {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = judicious::Certificate::from_json(text).map_err(to_py)?;
        Ok(Self { inner })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.r
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m
    }

    #[getter]
    fn threshold<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let t = &self.inner.threshold;
        fraction(py, t.numerator(), t.denominator())
    }

    #[getter]
    fn classes(&self) -> Vec<Vec<usize>> {
        self.inner.classes.clone()
    }

    #[getter]
    fn coverage(&self) -> Vec<usize> {
        self.inner.coverage.clone()
    }

    #[getter]
    fn min_coverage(&self) -> usize {
        self.inner.min_coverage()
    }

    /// Class index of every vertex.
    fn assignment(&self, vertex_count: usize) -> PyResult<Vec<usize>> {
        let p = self.inner.partition(vertex_count).map_err(to_py)?;
        Ok(p.assignment().to_vec())
    }

    fn __repr__(&self) -> String {
        format!(
            "Certificate(r={}, m={}, min_coverage={})",
            self.inner.r,
            self.inner.m,
            self.inner.min_coverage()
        )
    }
}

/// `c_r·m` as a `fractions.Fraction`.
#[pyfunction]
fn threshold(py: Python<'_>, r: usize, m: usize) -> PyResult<Bound<'_, PyAny>> {
    let t = judicious::threshold(r, m).map_err(to_py)?;
    fraction(py, t.numerator(), t.denominator())
}

/// `r` defaults to the uniformity of `h`.
#[pyfunction]
#[pyo3(signature = (h, r = None))]
fn partition_judicious(
    py: Python<'_>,
    h: &PyHypergraph,
    r: Option<usize>,
) -> PyResult<PyCertificate> {
    let r = match r.or(h.inner.uniformity()) {
        Some(r) => r,
        None => {
            return Err(PyValueError::new_err(
                "pass r for a non-uniform or edgeless hypergraph",
            ))
        }
    };
    let inner = py
        .detach(|| judicious::partition_judicious(&h.inner, r))
        .map_err(to_py)?;
    Ok(PyCertificate { inner })
}

/// `(True, None)` for a valid certificate, otherwise `(False, reason)`.
#[pyfunction]
fn verify(h: &PyHypergraph, cert: &PyCertificate) -> (bool, Option<String>) {
    match judicious::verify_certificate(&h.inner, &cert.inner) {
        Verification::Valid => (true, None),
        Verification::Invalid(reason) => (false, Some(reason.to_string())),
    }
}

/// Exhaustive optimum: `(assignment, min_coverage)`.
#[pyfunction]
#[pyo3(signature = (h, r, budget = DEFAULT_BUDGET, jobs = 1))]
fn brute_force_best(
    py: Python<'_>,
    h: &PyHypergraph,
    r: usize,
    budget: u128,
    jobs: usize,
) -> PyResult<(Vec<usize>, usize)> {
    let best = py
        .detach(|| brute_force_best_jobs(&h.inner, r, budget, jobs.max(1)))
        .map_err(to_py)?;
    Ok((best.partition.assignment().to_vec(), best.min_coverage))
}

/// `mode` is one of `uniform-random`, `multi-heavy`, `complete`.
#[pyfunction]
#[pyo3(signature = (r, n, m = None, seed = 0, mode = "uniform-random"))]
fn generate(r: usize, n: usize, m: Option<usize>, seed: u64, mode: &str) -> PyResult<PyHypergraph> {
    let mode: GenMode = mode.parse().map_err(to_py)?;
    let inner = judicious::generate(&GenSpec {
        r,
        n,
        m,
        seed,
        mode,
    })
    .map_err(to_py)?;
    Ok(PyHypergraph { inner })
}

#[pyfunction]
fn parse(text: &str) -> PyResult<PyHypergraph> {
    let inner = judicious::parse_instance(text).map_err(to_py)?;
    Ok(PyHypergraph { inner })
}

/// Values in `[0, 1]` and `c` in `[1/3, 1/2]`, each an int or Fraction.
#[pyfunction]
fn check_rulast(values: Vec<Bound<'_, PyAny>>, c: Bound<'_, PyAny>) -> PyResult<bool> {
    let values = values.iter().map(rational).collect::<PyResult<Vec<_>>>()?;
    let inst = RulastInstance::new(values, rational(&c)?).map_err(to_py)?;
    rulast(&inst).map_err(to_py)
}

#[pymodule]
#[pyo3(name = "judicious")]
fn judicious_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHypergraph>()?;
    m.add_class::<PyCertificate>()?;
    m.add_function(wrap_pyfunction!(threshold, m)?)?;
    m.add_function(wrap_pyfunction!(partition_judicious, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_best, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(check_rulast, m)?)?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add("LogicError", m.py().get_type::<LogicError>())?;
    Ok(())
}
