//! Python bindings: `import jlab_py`.
//!
//! Reports are returned as plain dicts with the same layout as the CLI's
//! JSON output.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use jlab::asymptotic::asymptotic_curve;
use jlab::classify::{check_good, check_nzc, jacobian_det};
use jlab::dominance::{dominancy_check, fiber_solve, univariate_roots, DominanceOptions};
use jlab::mapio::{parse_poly, parse_scalar, render_poly, report};
use jlab::numeric::{limit_check, SeqSpec, DEFAULT_SCHEDULE};
use jlab::pertinent::{c2_refute, lemma_system_check, recognize, RecognizeBounds};
use jlab::search::{nzc_sweep, SearchBounds, ShapeSet};

fn err(e: jlab::Error) -> PyErr {
    match e {
        jlab::Error::ResourceCap { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

/// A polynomial map `(f, g)` over the Gaussian rationals.
#[pyclass(name = "PolyMap", module = "jlab_py")]
struct PyPolyMap {
    inner: jlab::PolyMap,
}

#[pymethods]
impl PyPolyMap {
    #[new]
    fn new(f: &str, g: &str) -> PyResult<Self> {
        Ok(PyPolyMap {
            inner: jlab::PolyMap::new(parse_poly(f).map_err(err)?, parse_poly(g).map_err(err)?),
        })
    }

    #[getter]
    fn f(&self) -> String {
        render_poly(&self.inner.f)
    }

    #[getter]
    fn g(&self) -> String {
        render_poly(&self.inner.g)
    }

    fn __repr__(&self) -> String {
        format!("PolyMap(f={:?}, g={:?})", self.f(), self.g())
    }

    fn jacobian_det(&self) -> String {
        render_poly(&jacobian_det(&self.inner))
    }

    fn check_nzc<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &report::nzc(&check_nzc(&self.inner)))
    }

    fn check_good<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &report::good(&check_good(&self.inner)))
    }

    /// Full report with `map`, `good`, `class` and `asymptotic` sections.
    #[pyo3(signature = (r_max=None, s_max=None))]
    fn classify<'py>(&self, py: Python<'py>, r_max: Option<u32>, s_max: Option<u32>) -> PyResult<Bound<'py, PyAny>> {
        let bounds = RecognizeBounds {
            r_max,
            s_max,
            ..RecognizeBounds::default()
        };
        let rep = py.detach(|| recognize(&self.inner, &bounds));
        let mut curves = Vec::new();
        for r in &rep.recognitions {
            curves.extend(asymptotic_curve(r).map_err(err)?);
        }
        to_py(
            py,
            &report::full(&self.inner, None, &rep.good, Some(&rep), Some(&curves), None),
        )
    }

    /// Divisibility certificates for every `r = 1` recognition.
    fn c2_refute<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let rep = recognize(&self.inner, &RecognizeBounds::default());
        let mut out = Vec::new();
        for r in rep.recognitions.iter().filter(|r| r.family.is_c2()) {
            out.push(report::certificate(&c2_refute(&self.inner, &r.family).map_err(err)?));
        }
        to_py(py, &serde_json::Value::Array(out))
    }

    #[pyo3(signature = (alpha, beta, tol=1e-9))]
    fn fiber(&self, alpha: Complex64, beta: Complex64, tol: f64) -> PyResult<Vec<(Complex64, Complex64)>> {
        Ok(fiber_solve(&self.inner, (alpha, beta), tol).map_err(err)?.points)
    }

    #[pyo3(signature = (samples=50, seed=42, box_size=5.0, tol=1e-9))]
    fn dominancy<'py>(
        &self,
        py: Python<'py>,
        samples: usize,
        seed: u64,
        box_size: f64,
        tol: f64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let rep = recognize(&self.inner, &RecognizeBounds::default());
        let mut curves = Vec::new();
        for r in &rep.recognitions {
            curves.extend(asymptotic_curve(r).map_err(err)?);
        }
        let opts = DominanceOptions {
            samples,
            seed,
            box_size,
            tol,
            ..DominanceOptions::default()
        };
        let d = py.detach(|| dominancy_check(&self.inner, &curves, &opts));
        to_py(py, &report::dominance(&d))
    }

    /// Limit checks of the first recognition's curves at parameter `z`.
    #[pyo3(signature = (z, tol=1e-3, schedule=None))]
    fn limit_check<'py>(
        &self,
        py: Python<'py>,
        z: Complex64,
        tol: f64,
        schedule: Option<Vec<u64>>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let rep = recognize(&self.inner, &RecognizeBounds::default());
        let rec = rep
            .recognitions
            .first()
            .ok_or_else(|| PyValueError::new_err("map is not recognized"))?;
        let schedule = schedule.unwrap_or_else(|| DEFAULT_SCHEDULE.to_vec());
        let mut out = Vec::new();
        for curve in asymptotic_curve(rec).map_err(err)? {
            let spec = SeqSpec::for_curve(&curve, z, schedule.clone()).map_err(err)?;
            let lr = limit_check(rec, &curve, &spec, tol).map_err(err)?;
            out.push(serde_json::json!({"curve": report::curve(&curve), "limit": report::limit(&lr)}));
        }
        to_py(py, &serde_json::Value::Array(out))
    }
}

/// Canonical text of a polynomial expression.
#[pyfunction]
fn canonical(src: &str) -> PyResult<String> {
    Ok(render_poly(&parse_poly(src).map_err(err)?))
}

/// `(solvable, witness)` for the derivative system of `(r, s, n)`.
#[pyfunction(name = "lemma_system_check")]
fn py_lemma(r: u32, s: u32, n: u32) -> PyResult<(bool, Option<String>)> {
    let v = lemma_system_check(r, s, n).map_err(err)?;
    Ok((v.solvable, v.witness))
}

/// NZC sweep. `r = 1` selects the C2 sweep, larger `r` the model sweep
/// over `2..=r`.
#[pyfunction]
#[pyo3(signature = (r, s, n, coeffs, max_degree=2))]
fn sweep<'py>(py: Python<'py>, r: u32, s: u32, n: u32, coeffs: Vec<String>, max_degree: u32) -> PyResult<Bound<'py, PyAny>> {
    let coeffs = coeffs
        .iter()
        .map(|c| parse_scalar(c).map_err(err))
        .collect::<PyResult<Vec<_>>>()?;
    let mut bounds = if r == 1 {
        SearchBounds::c2(s, n, coeffs)
    } else {
        SearchBounds::model(r, s, n, coeffs)
    };
    bounds.shapes = if max_degree == 0 {
        ShapeSet::Linear
    } else {
        ShapeSet::UpToDegree(max_degree)
    };
    let rep = py.detach(|| nzc_sweep(&bounds));
    to_py(py, &report::sweep(&rep))
}

/// Roots of `sum coeffs[i] z^i`, sorted by real then imaginary part.
#[pyfunction]
#[pyo3(signature = (coeffs, tol=1e-12))]
fn roots(coeffs: Vec<Complex64>, tol: f64) -> PyResult<Vec<Complex64>> {
    univariate_roots(&coeffs, tol).map_err(err)
}

/// Reference maps as `(name, f, g)` triples.
#[pyfunction]
fn corpus() -> Vec<(String, String, String)> {
    jlab::corpus::ALL
        .iter()
        .map(|e| (e.name.to_string(), e.f.to_string(), e.g.to_string()))
        .collect()
}

#[pymodule]
fn jlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolyMap>()?;
    m.add_function(wrap_pyfunction!(canonical, m)?)?;
    m.add_function(wrap_pyfunction!(py_lemma, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(roots, m)?)?;
    m.add_function(wrap_pyfunction!(corpus, m)?)?;
    Ok(())
}
