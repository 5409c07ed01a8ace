//! Python bindings: `import convex_trunc`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList, PyString};
use serde_json::Value;

use convex_trunc::{
    classify, hausdorff_support_estimate_with_threshold, radius_for_epsilon, ConvexSet, Error, SampleConfig, Tolerance,
    Vector, DEFAULT_DIVERGENCE_THRESHOLD,
};

fn err(e: Error) -> PyErr {
    match e {
        Error::Unsupported(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn vector(coords: Vec<f64>) -> PyResult<Vector> {
    Vector::new(coords).map_err(err)
}

fn sampling(samples: usize, seed: u64, refine: usize) -> PyResult<SampleConfig> {
    let cfg = SampleConfig {
        seed,
        count: samples,
        refinement_rounds: refine,
    };
    cfg.validate().map_err(err)?;
    Ok(cfg)
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any().unbind(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any().unbind(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any().unbind(),
        },
        Value::String(s) => PyString::new(py, s).into_any().unbind(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any().unbind()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            dict.into_any().unbind()
        }
    })
}

fn serialized<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let v = serde_json::to_value(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &v)
}

/// A closed convex set: polyhedra, the catalog sets and their truncations.
#[pyclass(name = "ConvexSet", module = "convex_trunc", frozen)]
struct PyConvexSet {
    inner: ConvexSet,
}

fn wrap(inner: ConvexSet) -> PyConvexSet {
    PyConvexSet { inner }
}

#[pymethods]
impl PyConvexSet {
    /// Parses a JSON set description such as `{"type": "hyperbola-epigraph"}`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        ConvexSet::from_json(text, &Tolerance::default()).map(wrap).map_err(err)
    }

    /// `{x : A x <= b}`.
    #[staticmethod]
    fn h_polyhedron(a: Vec<Vec<f64>>, b: Vec<f64>) -> PyResult<Self> {
        ConvexSet::h_polyhedron(a, b).map(wrap).map_err(err)
    }

    /// `conv(vertices) + cone(rays)`.
    #[staticmethod]
    #[pyo3(signature = (vertices, rays = Vec::new()))]
    fn v_polyhedron(vertices: Vec<Vec<f64>>, rays: Vec<Vec<f64>>) -> PyResult<Self> {
        let verts = vertices.into_iter().map(vector).collect::<PyResult<Vec<_>>>()?;
        let rays = rays.into_iter().map(vector).collect::<PyResult<Vec<_>>>()?;
        ConvexSet::v_polyhedron(verts, rays).map(wrap).map_err(err)
    }

    /// `{x : x1 >= 0, x1 x2 >= 1}`.
    #[staticmethod]
    fn hyperbola_epigraph() -> Self {
        wrap(ConvexSet::HyperbolaEpigraph)
    }

    /// `{x : scale * x2 >= x1^2}`.
    #[staticmethod]
    #[pyo3(signature = (scale = 1.0))]
    fn parabola_epigraph(scale: f64) -> PyResult<Self> {
        ConvexSet::parabola(scale).map(wrap).map_err(err)
    }

    /// `{x : x3 >= 0, x2 >= 0, x1^2 <= x2 (1 + x3)}`.
    #[staticmethod]
    fn cone_lift_3d() -> Self {
        wrap(ConvexSet::ConeLift3D)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind()
    }

    fn to_json(&self) -> String {
        self.inner.description().to_json()
    }

    /// `(C ∩ rB) + rec C`.
    fn truncate(&self, radius: f64) -> PyResult<Self> {
        self.inner
            .truncated(radius, &Tolerance::default())
            .map(wrap)
            .map_err(err)
    }

    /// Support function value; `math.inf` outside its domain.
    fn support(&self, direction: Vec<f64>) -> PyResult<f64> {
        let d = vector(direction)?;
        Ok(self.inner.support(&d, &Tolerance::default()).map_err(err)?.to_f64())
    }

    fn contains(&self, point: Vec<f64>) -> PyResult<bool> {
        self.inner
            .membership(&vector(point)?, &Tolerance::default())
            .map_err(err)
    }

    fn distance(&self, point: Vec<f64>) -> PyResult<f64> {
        self.inner
            .distance_to_set(&vector(point)?, &Tolerance::default())
            .map_err(err)
    }

    #[pyo3(signature = (samples = 2000, seed = 7, refine = 5))]
    fn classify(&self, py: Python<'_>, samples: usize, seed: u64, refine: usize) -> PyResult<Py<PyAny>> {
        let cfg = sampling(samples, seed, refine)?;
        let report = classify(&self.inner, &Tolerance::default(), &cfg).map_err(err)?;
        serialized(py, &report)
    }

    fn __repr__(&self) -> String {
        format!("ConvexSet({})", self.inner.description().to_json())
    }
}

/// Hausdorff distance estimate between two sets, as a dict tagged by `kind`.
#[pyfunction]
#[pyo3(signature = (a, b, samples = 2000, seed = 7, refine = 5, threshold = DEFAULT_DIVERGENCE_THRESHOLD))]
fn hausdorff(
    py: Python<'_>,
    a: &PyConvexSet,
    b: &PyConvexSet,
    samples: usize,
    seed: u64,
    refine: usize,
    threshold: f64,
) -> PyResult<Py<PyAny>> {
    let cfg = sampling(samples, seed, refine)?;
    let est = hausdorff_support_estimate_with_threshold(&a.inner, &b.inner, &Tolerance::default(), &cfg, threshold)
        .map_err(err)?;
    serialized(py, &est)
}

/// Smallest truncation radius found whose estimated distance is at most `eps`.
#[pyfunction]
#[pyo3(name = "radius_for_epsilon", signature = (set, eps, samples = 2000, seed = 7, refine = 5))]
fn radius(
    py: Python<'_>,
    set: &PyConvexSet,
    eps: f64,
    samples: usize,
    seed: u64,
    refine: usize,
) -> PyResult<Py<PyAny>> {
    let cfg = sampling(samples, seed, refine)?;
    let res = radius_for_epsilon(&set.inner, eps, &Tolerance::default(), &cfg).map_err(err)?;
    serialized(py, &res)
}

#[pymodule]
#[pyo3(name = "convex_trunc")]
fn convex_trunc_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyConvexSet>()?;
    m.add_function(wrap_pyfunction!(hausdorff, m)?)?;
    m.add_function(wrap_pyfunction!(radius, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
