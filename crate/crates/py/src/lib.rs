//! Python module `gaugehull`.
//!
//! Vectors cross the boundary as lists of Python numbers: complex numbers
//! for complex gauges, floats for real ones. Reports come back as JSON
//! strings so they can be fed to `json.loads`.

use gaugehull::convexify;
use gaugehull::counterexample::{self, CertifyOptions, VerifyOptions};
use gaugehull::decompose::{self, Decomposition};
use gaugehull::exhaust::{self, ExhaustionLevel};
use gaugehull::gauges::{estimate_lipschitz, parse_gauge};
use gaugehull::{GaugeSpec, Mode, Vector};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyComplex;

fn py_err(e: gaugehull::Error) -> PyErr {
    match e {
        gaugehull::Error::Input(_)
        | gaugehull::Error::DimensionMismatch { .. }
        | gaugehull::Error::Precondition(_)
        | gaugehull::Error::Json(_) => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

fn vector_from(mode: Mode, items: &Bound<'_, PyAny>) -> PyResult<Vector> {
    let mut coords = Vec::new();
    for item in items.try_iter()? {
        let item = item?;
        match mode {
            Mode::Complex => {
                if let Ok(c) = item.cast::<PyComplex>() {
                    coords.push(c.real());
                    coords.push(c.imag());
                } else {
                    coords.push(item.extract::<f64>()?);
                    coords.push(0.0);
                }
            }
            Mode::Real => coords.push(item.extract::<f64>()?),
        }
    }
    Vector::new(mode, coords).map_err(py_err)
}

fn vector_to<'py>(py: Python<'py>, v: &Vector) -> PyResult<Vec<Bound<'py, PyAny>>> {
    match v.mode() {
        Mode::Complex => (0..v.dim())
            .map(|k| {
                let (re, im) = v.complex_coord(k);
                Ok(PyComplex::from_doubles(py, re, im).into_any())
            })
            .collect(),
        Mode::Real => v
            .coords()
            .iter()
            .map(|&x| Ok(x.into_pyobject(py)?.into_any()))
            .collect(),
    }
}

/// A gauge specification.
#[pyclass(name = "Gauge", frozen)]
struct PyGauge {
    inner: GaugeSpec,
}

#[pymethods]
impl PyGauge {
    /// Parses `dn:N`, `pnorm:P:DIM`, `pnorm-real:P:DIM`, `cross-star:D:DIM`
    /// or a JSON specification.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(PyGauge {
            inner: parse_gauge(spec).map_err(py_err)?,
        })
    }

    #[getter]
    fn family(&self) -> &'static str {
        self.inner.family_name()
    }

    #[getter]
    fn real_dim(&self) -> usize {
        self.inner.real_dim()
    }

    #[getter]
    fn is_complex(&self) -> bool {
        self.inner.mode() == Mode::Complex
    }

    fn __call__(&self, x: &Bound<'_, PyAny>) -> PyResult<f64> {
        self.eval(x)
    }

    fn eval(&self, x: &Bound<'_, PyAny>) -> PyResult<f64> {
        let v = vector_from(self.inner.mode(), x)?;
        self.inner.eval(&v).map_err(py_err)
    }

    #[pyo3(signature = (samples = 20_000, seed = 42))]
    fn lipschitz(&self, samples: usize, seed: u64) -> PyResult<f64> {
        Ok(estimate_lipschitz(&self.inner, samples, seed)
            .map_err(py_err)?
            .constant)
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.inner)
    }

    fn __repr__(&self) -> PyResult<String> {
        Ok(format!("Gauge({})", self.to_json()?))
    }
}

/// Best upper bound of h^(m)(x) and its atoms.
#[pyfunction]
#[pyo3(signature = (gauge, m, x, restarts = 16, seed = 42))]
fn mth_gauge_upper<'py>(
    py: Python<'py>,
    gauge: &PyGauge,
    m: usize,
    x: &Bound<'py, PyAny>,
    restarts: usize,
    seed: u64,
) -> PyResult<(f64, Vec<Vec<Bound<'py, PyAny>>>)> {
    let g = &gauge.inner;
    let x = vector_from(g.mode(), x)?;
    let up = py
        .detach(|| decompose::mth_gauge_upper(g, m, &x, restarts, seed))
        .map_err(py_err)?;
    let atoms = up
        .best
        .atoms
        .iter()
        .map(|a| vector_to(py, a))
        .collect::<PyResult<_>>()?;
    Ok((up.value, atoms))
}

/// Values of the decomposition chain `h^(1)(x), ..., h^(m_max)(x)`.
#[pyfunction]
#[pyo3(signature = (gauge, x, m_max, restarts = 16, seed = 42))]
fn gauge_chain(
    py: Python<'_>,
    gauge: &PyGauge,
    x: &Bound<'_, PyAny>,
    m_max: usize,
    restarts: usize,
    seed: u64,
) -> PyResult<Vec<f64>> {
    let g = &gauge.inner;
    let x = vector_from(g.mode(), x)?;
    let chain = py
        .detach(|| decompose::gauge_chain(g, &x, m_max, restarts, seed))
        .map_err(py_err)?;
    Ok(chain.into_iter().map(|e| e.value).collect())
}

/// `(upper, lower)` bracket of the hull gauge at `x`.
#[pyfunction]
#[pyo3(signature = (gauge, x, count = 512, grid_step = 1e-3, seed = 42))]
fn hull_gauge(
    py: Python<'_>,
    gauge: &PyGauge,
    x: &Bound<'_, PyAny>,
    count: usize,
    grid_step: f64,
    seed: u64,
) -> PyResult<(f64, f64)> {
    let g = &gauge.inner;
    let x = vector_from(g.mode(), x)?;
    py.detach(|| convexify::hull_bracket(g, &x, count, grid_step, 20_000, seed))
        .map(|b| (b.upper.value, b.lower.value))
    .map_err(py_err)
}

/// Carathéodory reduction of `x = sum(atoms)`; returns the reduced atoms.
#[pyfunction]
fn caratheodory_reduce<'py>(
    py: Python<'py>,
    gauge: &PyGauge,
    atoms: Vec<Bound<'py, PyAny>>,
) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
    let g = &gauge.inner;
    let atoms: Vec<Vector> = atoms
        .iter()
        .map(|a| vector_from(g.mode(), a))
        .collect::<PyResult<_>>()?;
    let first = atoms
        .first()
        .ok_or_else(|| PyValueError::new_err("need at least one atom"))?;
    let mut target = vec![0.0; first.coords().len()];
    for a in &atoms {
        if a.coords().len() != target.len() {
            return Err(PyValueError::new_err("atoms differ in dimension"));
        }
        for (t, c) in target.iter_mut().zip(a.coords()) {
            *t += c;
        }
    }
    let target = Vector::new(g.mode(), target).map_err(py_err)?;
    let d = Decomposition::new(g, target, atoms).map_err(py_err)?;
    let r = decompose::caratheodory_reduce(g, &d).map_err(py_err)?;
    r.atoms.iter().map(|a| vector_to(py, a)).collect()
}

/// Gauge of the exhaustion level `B_j` of `gauge` at `x`.
#[pyfunction]
#[pyo3(signature = (gauge, j, x, samples = 4000))]
fn level_gauge(gauge: &PyGauge, j: usize, x: &Bound<'_, PyAny>, samples: usize) -> PyResult<f64> {
    let g = &gauge.inner;
    let x = vector_from(g.mode(), x)?;
    let level = ExhaustionLevel::new(g, j, samples).map_err(py_err)?;
    exhaust::level_gauge(&level, &x, exhaust::DEFAULT_BISECTION_TOL).map_err(py_err)
}

/// Whether `y` lies in no hull of `2n - 2` points of `F_n`.
#[pyfunction]
fn witness_check(n: usize, y: &Bound<'_, PyAny>) -> PyResult<bool> {
    let y = vector_from(Mode::Complex, y)?;
    Ok(counterexample::witness_check(n, &y).map_err(py_err)?.witness)
}

/// Gap certificate at the centroid of `D_2`, as JSON.
#[pyfunction]
#[pyo3(signature = (grid_step = 0.01, seed = 42))]
fn certify_gap(py: Python<'_>, grid_step: f64, seed: u64) -> PyResult<String> {
    let opts = CertifyOptions {
        grid_step,
        seed,
        ..CertifyOptions::default()
    };
    let report = py
        .detach(|| counterexample::certify_gap(2, &counterexample::centroid(2), &opts))
        .map_err(py_err)?;
    to_json(&report)
}

/// Random-sample comparison of `h^(2n-1)` with the hull gauge, as JSON.
#[pyfunction]
#[pyo3(signature = (n, samples, seed = 42))]
fn verify_theorem(py: Python<'_>, n: usize, samples: usize, seed: u64) -> PyResult<String> {
    let opts = VerifyOptions::for_dimension(n);
    let report = py
        .detach(|| counterexample::verify_theorem(n, samples, seed, &opts))
        .map_err(py_err)?;
    to_json(&report)
}

#[pymodule]
#[pyo3(name = "gaugehull")]
fn gaugehull_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGauge>()?;
    m.add_function(wrap_pyfunction!(mth_gauge_upper, m)?)?;
    m.add_function(wrap_pyfunction!(gauge_chain, m)?)?;
    m.add_function(wrap_pyfunction!(hull_gauge, m)?)?;
    m.add_function(wrap_pyfunction!(caratheodory_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(level_gauge, m)?)?;
    m.add_function(wrap_pyfunction!(witness_check, m)?)?;
    m.add_function(wrap_pyfunction!(certify_gap, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem, m)?)?;
    Ok(())
}
