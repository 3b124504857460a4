//! Python bindings. Reports cross the boundary as JSON and come back as
//! plain Python objects.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use ringext::canonical::{build_canonical, CanonicalRings};
use ringext::certify::classify;
use ringext::io::{input_from_value, parse_input, Input};
use ringext::{corpus, report, Error};
use serde_json::Value;

create_exception!(ringext_py, InconsistencyError, PyException);

fn to_py_err(e: Error) -> PyErr {
    if e.is_input_error() {
        PyValueError::new_err(e.to_string())
    } else {
        InconsistencyError::new_err(e.to_string())
    }
}

fn to_python<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn from_python(py: Python<'_>, obj: &Bound<'_, PyAny>) -> PyResult<Value> {
    let text: String = if let Ok(s) = obj.extract::<String>() {
        s
    } else {
        py.import("json")?.call_method1("dumps", (obj,))?.extract()?
    };
    ringext::io::parse_json(&text).map_err(to_py_err)
}

/// A ring extension `B -> A` loaded from an input document (a JSON string
/// or an equivalent dict).
#[pyclass(module = "ringext_py")]
pub struct RingExtension {
    input: Input,
    canonical: Option<CanonicalRings>,
}

impl RingExtension {
    fn rings(&mut self) -> PyResult<&CanonicalRings> {
        if self.canonical.is_none() {
            self.canonical = Some(build_canonical(&self.input.ext).map_err(to_py_err)?);
        }
        Ok(self.canonical.as_ref().unwrap())
    }

    fn seed(&self, seed: Option<u64>) -> u64 {
        seed.or(self.input.spec.seed).unwrap_or(0)
    }
}

#[pymethods]
impl RingExtension {
    #[new]
    fn new(py: Python<'_>, document: &Bound<'_, PyAny>) -> PyResult<Self> {
        let input = input_from_value(from_python(py, document)?).map_err(to_py_err)?;
        Ok(RingExtension { input, canonical: None })
    }

    #[staticmethod]
    fn from_corpus(name: &str) -> PyResult<Self> {
        let doc = corpus::document(name, 0)
            .map_err(to_py_err)?
            .ok_or_else(|| PyValueError::new_err(format!("unknown corpus entry {name}")))?;
        let input = input_from_value(doc).map_err(to_py_err)?;
        Ok(RingExtension { input, canonical: None })
    }

    #[getter]
    fn field(&self) -> String {
        self.input.field.label()
    }

    #[getter]
    fn dim_a(&self) -> usize {
        self.input.ext.a().dim()
    }

    #[getter]
    fn dim_b(&self) -> usize {
        self.input.ext.b().dim()
    }

    /// Dimensions of `A (x)_B A`, `R`, `S` and `T`.
    fn dims<'py>(&mut self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let c = self.rings()?;
        let d = PyDict::new(py);
        d.set_item("square", c.square.dim())?;
        d.set_item("r", c.r.dim())?;
        d.set_item("s", c.s.dim())?;
        d.set_item("t", c.t.dim())?;
        Ok(d)
    }

    /// The five verdicts as booleans.
    fn classify<'py>(&mut self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let cl = classify(self.rings()?).map_err(to_py_err)?;
        let d = PyDict::new(py);
        d.set_item("separable", cl.is_separable())?;
        d.set_item("split", cl.is_split())?;
        d.set_item("h_separable", cl.is_h_separable())?;
        d.set_item("left_d2", cl.is_left_d2())?;
        d.set_item("right_d2", cl.is_right_d2())?;
        Ok(d)
    }

    #[pyo3(signature = (seed = None))]
    fn analyze<'py>(&self, py: Python<'py>, seed: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
        to_python(py, &report::analyze(&self.input, self.seed(seed)).map_err(to_py_err)?)
    }

    #[pyo3(signature = (kind, seed = None))]
    fn certify<'py>(&self, py: Python<'py>, kind: &str, seed: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
        if !report::KINDS.contains(&kind) {
            return Err(PyValueError::new_err(format!("unknown certificate kind {kind}")));
        }
        to_python(py, &report::certify(&self.input, kind, self.seed(seed)).map_err(to_py_err)?)
    }

    #[pyo3(signature = (module, seed = None))]
    fn equivalence<'py>(&self, py: Python<'py>, module: &str, seed: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
        to_python(py, &report::equivalence(&self.input, module, self.seed(seed)).map_err(to_py_err)?)
    }

    #[pyo3(signature = (seed = None))]
    fn normality<'py>(&self, py: Python<'py>, seed: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
        to_python(py, &report::normality(&self.input, self.seed(seed)).map_err(to_py_err)?)
    }

    fn __repr__(&self) -> String {
        format!(
            "RingExtension(field={}, dim A={}, dim B={})",
            self.input.field.label(),
            self.input.ext.a().dim(),
            self.input.ext.b().dim()
        )
    }
}

/// Re-checks every certificate in a report against its echoed input.
#[pyfunction]
fn verify<'py>(py: Python<'py>, report_doc: &Bound<'_, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    to_python(py, &report::verify(&from_python(py, report_doc)?).map_err(to_py_err)?)
}

/// Hopf normality of every subgroup of a group given by its Cayley table.
#[pyfunction]
fn hopf<'py>(py: Python<'py>, group_doc: &Bound<'_, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    to_python(py, &report::hopf(&from_python(py, group_doc)?).map_err(to_py_err)?)
}

#[pyfunction]
fn corpus_names() -> Vec<&'static str> {
    corpus::NAMES.to_vec()
}

#[pyfunction]
#[pyo3(signature = (name, seed = 0))]
fn corpus_document<'py>(py: Python<'py>, name: &str, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let doc = corpus::document(name, seed)
        .map_err(to_py_err)?
        .ok_or_else(|| PyValueError::new_err(format!("unknown corpus entry {name}")))?;
    to_python(py, &doc)
}

/// Parses and validates an input document, raising on the first error.
#[pyfunction]
fn validate(text: &str) -> PyResult<()> {
    parse_input(text).map(|_| ()).map_err(to_py_err)
}

#[pymodule]
pub fn ringext_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<RingExtension>()?;
    m.add("InconsistencyError", m.py().get_type::<InconsistencyError>())?;
    m.add("CERTIFY_KINDS", report::KINDS.to_vec())?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(hopf, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_names, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_document, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    Ok(())
}
