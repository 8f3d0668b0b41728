//! Python bindings. Matrices go in as nested lists of anything whose `str()`
//! is an integer or `p/q` (ints, strings, `fractions.Fraction`); rationals
//! come back as strings.

use std::sync::Arc;

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde_json::Value;

use coinsite::catalog::enumerate_coincidence;
use coinsite::engine::{divisibility_report, intersect_csm, sum_index};
use coinsite::exact::{Matrix, Rat, RatMatrix};
use coinsite::gram::GramModule;
use coinsite::io;
use coinsite::maps::{make_coincidence, make_similarity};
use coinsite::rings::multiplier_ring;
use coinsite::verify::{self, Suite};

fn err(e: coinsite::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    match v {
        Value::Null => Ok(py.None().into_bound(py)),
        Value::Bool(b) => b.into_bound_py_any(py),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_bound_py_any(py),
            None => n.as_f64().unwrap_or(f64::NAN).into_bound_py_any(py),
        },
        Value::String(s) => s.into_bound_py_any(py),
        Value::Array(xs) => {
            let items = xs.iter().map(|x| to_py(py, x)).collect::<PyResult<Vec<_>>>()?;
            Ok(PyList::new(py, items)?.into_any())
        }
        Value::Object(m) => {
            let d = PyDict::new(py);
            for (k, x) in m {
                d.set_item(k, to_py(py, x)?)?;
            }
            Ok(d.into_any())
        }
    }
}

fn rat_matrix(rows: &Bound<'_, PyAny>) -> PyResult<RatMatrix> {
    let mut out = Vec::new();
    for row in rows.try_iter()? {
        let mut r = Vec::new();
        for x in row?.try_iter()? {
            let s = x?.str()?.to_string();
            let q: Rat = s.trim().parse().map_err(|_| PyValueError::new_err(format!("bad rational {s:?}")))?;
            r.push(q);
        }
        out.push(r);
    }
    Matrix::from_rows(out).map_err(|_| PyValueError::new_err("ragged or empty matrix"))
}

fn rows(m: &RatMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

#[pyclass(name = "Module", frozen)]
struct PyGramModule {
    inner: Arc<GramModule>,
}

#[pymethods]
impl PyGramModule {
    /// Parses the JSON module format (`gram`, `generators` or `catalog`).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyGramModule { inner: Arc::new(io::parse_module(&v).map_err(err)?) })
    }

    /// Built-in module by name, e.g. `square`, `cubic`, `cyclotomic8`, `eta`.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        Self::from_json(&serde_json::json!({ "catalog": name }).to_string())
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.ambient_dimension()
    }

    #[getter]
    fn is_lattice(&self) -> bool {
        self.inner.is_lattice()
    }

    fn to_json(&self) -> String {
        io::module_json(&self.inner).to_string()
    }

    fn coincidence(&self, matrix: &Bound<'_, PyAny>) -> PyResult<PyCoincidence> {
        let t = make_coincidence(&self.inner, &rat_matrix(matrix)?).map_err(err)?;
        Ok(PyCoincidence { inner: t })
    }

    fn similarity(&self, matrix: &Bound<'_, PyAny>) -> PyResult<PySimilarity> {
        let f = make_similarity(&self.inner, &rat_matrix(matrix)?).map_err(err)?;
        Ok(PySimilarity { inner: f })
    }

    fn multiplier_ring<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &io::ring_json(&multiplier_ring(&self.inner)))
    }

    fn __repr__(&self) -> String {
        format!("Module(rank={}, dim={})", self.inner.rank(), self.inner.ambient_dimension())
    }
}

#[pyclass(name = "CoincidenceMap", frozen)]
struct PyCoincidence {
    inner: coinsite::maps::CoincidenceMap,
}

#[pymethods]
impl PyCoincidence {
    #[getter]
    fn matrix(&self) -> Vec<Vec<String>> {
        rows(self.inner.matrix())
    }

    fn sigma(&self) -> BigInt {
        intersect_csm(&self.inner).index
    }

    fn sum_index(&self) -> BigInt {
        sum_index(&self.inner)
    }

    /// HNF basis of the coincidence site module, columns in module coordinates.
    fn csl(&self) -> Vec<Vec<BigInt>> {
        intersect_csm(&self.inner).h.to_rows()
    }

    fn inverse(&self) -> Self {
        PyCoincidence { inner: self.inner.inverse() }
    }

    fn compose(&self, other: &PyCoincidence) -> PyResult<Self> {
        Ok(PyCoincidence { inner: self.inner.compose(&other.inner).map_err(err)? })
    }

    fn as_similarity(&self) -> PySimilarity {
        PySimilarity { inner: self.inner.as_similarity() }
    }

    fn divisibility_report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let rep = divisibility_report(&self.inner.as_similarity()).map_err(err)?;
        to_py(py, &io::divisibility_json(&rep))
    }

    fn __repr__(&self) -> String {
        format!("CoincidenceMap({:?})", rows(self.inner.matrix()))
    }
}

#[pyclass(name = "SimilarityMap", frozen)]
struct PySimilarity {
    inner: coinsite::maps::SimilarityMap,
}

#[pymethods]
impl PySimilarity {
    #[getter]
    fn matrix(&self) -> Vec<Vec<String>> {
        rows(&self.inner.matrix().to_rat())
    }

    /// The similarity factor as text, e.g. `sqrt(2)`.
    fn scale(&self) -> String {
        self.inner.alpha().to_string()
    }

    fn is_coincidence(&self) -> Option<PyCoincidence> {
        self.inner.is_coincidence().map(|t| PyCoincidence { inner: t })
    }

    fn is_symmetry(&self) -> bool {
        self.inner.is_symmetry()
    }

    fn inverse(&self) -> Self {
        PySimilarity { inner: self.inner.inverse() }
    }

    fn compose(&self, other: &PySimilarity) -> PyResult<Self> {
        Ok(PySimilarity { inner: self.inner.compose(&other.inner).map_err(err)? })
    }

    /// Whether the scale lies in the multiplier ring's coset of 1.
    fn coset_is_trivial(&self) -> PyResult<bool> {
        let ring = multiplier_ring(self.inner.module());
        ring.phi_kernel_test(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("SimilarityMap({:?})", rows(&self.inner.matrix().to_rat()))
    }
}

/// Catalog rows for `square`, `hexagonal`, `cubic`, ... with `sigma <= max_sigma`.
#[pyfunction]
fn catalog<'py>(py: Python<'py>, name: &str, max_sigma: u64) -> PyResult<Bound<'py, PyAny>> {
    let entries = enumerate_coincidence(name, max_sigma).map_err(err)?;
    to_py(py, &io::catalog_json(&entries).map_err(err)?)
}

/// Runs a verification suite and returns the per-claim summary.
#[pyfunction]
#[pyo3(signature = (suite = "all", seed = 42))]
fn run_verify<'py>(py: Python<'py>, suite: &str, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let suite: Suite = suite.parse().map_err(err)?;
    let rep = py
        .detach(|| verify::run(suite, seed, &[]))
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &rep.to_json())
}

#[pymodule(name = "coinsite")]
fn coinsite_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGramModule>()?;
    m.add_class::<PyCoincidence>()?;
    m.add_class::<PySimilarity>()?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
