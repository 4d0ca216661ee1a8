//! Python bindings: polygons, the boundary map and the entropy oracles.

use entropy_core::dynamics::{self, BoundaryMap as CoreMap, GeodesicPair, MarkovData};
use entropy_core::entropy::{self, EntropyReport, ReportOptions};
use entropy_core::maskit::{self, FenchelNielsen6, SAMPLE_SEED};
use entropy_core::polygon::{MarkedPolygon, PolygonDocument};
use entropy_core::serial::to_string17;
use entropy_core::Error;
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn err(e: Error) -> PyErr {
    if e.is_domain_error() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

/// Serializes through JSON so Python sees plain dicts and lists.
fn to_python<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = to_string17(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn pair(u: f64, w: f64) -> PyResult<GeodesicPair> {
    GeodesicPair::from_angles(u, w).map_err(err)
}

/// A marked (8g-4)-gon with its side pairings.
#[pyclass(name = "Polygon", module = "fuchsian_entropy", frozen)]
struct Polygon {
    inner: MarkedPolygon,
}

#[pymethods]
impl Polygon {
    #[staticmethod]
    fn regular(genus: usize) -> PyResult<Self> {
        Ok(Polygon { inner: MarkedPolygon::regular(genus).map_err(err)? })
    }

    /// Genus-2 polygon from Fenchel-Nielsen parameters; omitted ones take
    /// their regular values.
    #[staticmethod]
    #[pyo3(signature = (alpha=None, beta=None, gamma=None, sigma=None, tau=None, rho=None))]
    fn maskit(
        alpha: Option<f64>,
        beta: Option<f64>,
        gamma: Option<f64>,
        sigma: Option<f64>,
        tau: Option<f64>,
        rho: Option<f64>,
    ) -> PyResult<Self> {
        let mut p = FenchelNielsen6::regular();
        let given = [("alpha", alpha), ("beta", beta), ("gamma", gamma), ("sigma", sigma), ("tau", tau), ("rho", rho)];
        for (name, v) in given {
            if let Some(v) = v {
                p = p.with(name, v).map_err(err)?;
            }
        }
        Ok(Polygon { inner: maskit::build_polygon(&p).map_err(err)? })
    }

    #[getter]
    fn genus(&self) -> usize {
        self.inner.genus()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn vertices(&self) -> Vec<Complex64> {
        self.inner.vertices().iter().map(|v| v.z()).collect()
    }

    /// Angles of `P_1, …, P_n`.
    #[getter]
    fn p(&self) -> Vec<f64> {
        self.inner.p_points().iter().map(|b| b.angle()).collect()
    }

    #[getter]
    fn q(&self) -> Vec<f64> {
        self.inner.q_points().iter().map(|b| b.angle()).collect()
    }

    fn sigma(&self, i: usize) -> PyResult<usize> {
        entropy_core::polygon::sigma(i, self.inner.genus()).map_err(err)
    }

    /// Pairing `T_i` as `(a, b, c, d)`.
    fn pairing(&self, i: usize) -> PyResult<(Complex64, Complex64, Complex64, Complex64)> {
        if i == 0 || i > self.inner.n() {
            return Err(err(Error::IndexOutOfRange { index: i, n: self.inner.n() }));
        }
        let [a, b, c, d] = self.inner.t(i).to_array();
        Ok((a, b, c, d))
    }

    #[getter]
    fn side_lengths(&self) -> Vec<f64> {
        self.inner.metrics().side_lengths
    }

    #[getter]
    fn interior_angles(&self) -> Vec<f64> {
        self.inner.metrics().interior_angles
    }

    #[getter]
    fn perimeter(&self) -> f64 {
        self.inner.perimeter()
    }

    #[getter]
    fn area(&self) -> f64 {
        self.inner.metrics().area
    }

    /// `(name, observed, tolerance)` for every polygon invariant.
    fn checks(&self) -> Vec<(String, f64, f64)> {
        self.inner
            .checks()
            .into_iter()
            .map(|c| (c.name.to_string(), c.observed, c.tolerance))
            .collect()
    }

    fn validate(&self) -> PyResult<()> {
        self.inner.validate().map_err(err)
    }

    /// `(perimeter², 4n tan(A/2n) A, slack)`.
    fn isoareal(&self) -> (f64, f64, f64) {
        let c = self.inner.isoareal_check();
        (c.lhs, c.rhs, c.slack)
    }

    fn to_json(&self) -> PyResult<String> {
        to_string17(&PolygonDocument::from(&self.inner)).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!("Polygon(genus={}, perimeter={})", self.inner.genus(), self.inner.perimeter())
    }
}

/// The boundary map `f_P` and its natural extension.
#[pyclass(name = "BoundaryMap", module = "fuchsian_entropy", frozen)]
struct BoundaryMap {
    inner: CoreMap,
}

#[pymethods]
impl BoundaryMap {
    #[new]
    fn new(polygon: &Polygon) -> PyResult<Self> {
        Ok(BoundaryMap { inner: CoreMap::new(&polygon.inner).map_err(err)? })
    }

    /// The `i` with `x ∈ [P_i, P_{i+1})`.
    fn branch(&self, x: f64) -> usize {
        self.inner.branch(entropy_core::hyperbolic::BoundaryPoint::new(x))
    }

    /// `(f_P(x), branch)`.
    fn __call__(&self, x: f64) -> (f64, usize) {
        let (y, i) = self.inner.f(entropy_core::hyperbolic::BoundaryPoint::new(x));
        (y.angle(), i)
    }

    fn log_derivative(&self, x: f64) -> f64 {
        self.inner.log_derivative(entropy_core::hyperbolic::BoundaryPoint::new(x))
    }

    fn natural_extension(&self, u: f64, w: f64) -> PyResult<(f64, f64)> {
        let p = self.inner.natural_extension(&pair(u, w)?);
        Ok((p.u.angle(), p.w.angle()))
    }

    fn in_omega_p(&self, u: f64, w: f64) -> PyResult<bool> {
        Ok(self.inner.in_omega_p(&pair(u, w)?))
    }

    fn transition_matrix(&self) -> PyResult<Vec<Vec<u8>>> {
        Ok(MarkovData::build(&self.inner).map_err(err)?.matrix)
    }

    fn topological_entropy(&self) -> PyResult<f64> {
        dynamics::topological_entropy(&MarkovData::build(&self.inner).map_err(err)?).map_err(err)
    }

    #[pyo3(signature = (points, iters, seed=SAMPLE_SEED))]
    fn attractor_sample(&self, py: Python<'_>, points: usize, iters: usize, seed: u64) -> Vec<(f64, f64)> {
        py.detach(|| dynamics::attractor_sample(&self.inner, points, iters, seed))
            .iter()
            .map(|p| (p.u.angle(), p.w.angle()))
            .collect()
    }

    /// `(value, spread)` of the median Birkhoff average of `log|f_P'|`.
    #[pyo3(signature = (nsteps, nseeds=5, seed=SAMPLE_SEED))]
    fn birkhoff_entropy(&self, py: Python<'_>, nsteps: usize, nseeds: usize, seed: u64) -> PyResult<(f64, f64)> {
        let b = py
            .detach(|| entropy::birkhoff_entropy(&self.inner, nsteps, nseeds, seed))
            .map_err(err)?;
        Ok((b.value, b.spread))
    }
}

#[pyfunction]
fn entropy_formula(polygon: &Polygon) -> f64 {
    entropy::entropy_formula(&polygon.inner)
}

#[pyfunction]
fn entropy_area_form(polygon: &Polygon) -> f64 {
    entropy::entropy_area_form(&polygon.inner)
}

#[pyfunction]
fn h_max(genus: usize) -> PyResult<f64> {
    entropy::h_max(genus).map_err(err)
}

#[pyfunction]
fn h_max_limit() -> f64 {
    entropy::h_max_limit()
}

#[pyfunction]
fn analytic_eigenpair(genus: usize) -> PyResult<(f64, Vec<f64>)> {
    dynamics::analytic_eigenpair(genus).map_err(err)
}

/// `(value, stderr)` of the Monte Carlo ν-mass of geodesics crossing the
/// polygon.
#[pyfunction]
#[pyo3(signature = (polygon, samples, seed=SAMPLE_SEED))]
fn nu_mass_quadrature(py: Python<'_>, polygon: &Polygon, samples: usize, seed: u64) -> PyResult<(f64, f64)> {
    let e = py
        .detach(|| entropy::nu_mass_quadrature(&polygon.inner, samples, seed))
        .map_err(err)?;
    Ok((e.value, e.stderr))
}

#[pyfunction]
#[pyo3(signature = (polygon, side, grid=2000))]
fn strip_mass(polygon: &Polygon, side: usize, grid: usize) -> PyResult<f64> {
    entropy::strip_mass(&polygon.inner, side, grid).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (target, tol=1e-8))]
fn solve_target_entropy<'py>(py: Python<'py>, target: f64, tol: f64) -> PyResult<Bound<'py, PyAny>> {
    let s = py.detach(|| entropy::solve_target_entropy(target, tol)).map_err(err)?;
    to_python(py, &s)
}

#[pyfunction]
fn sweep<'py>(py: Python<'py>, param: &str, start: f64, stop: f64, steps: usize) -> PyResult<Bound<'py, PyAny>> {
    let values = entropy::linspace(start, stop, steps);
    let rows = py.detach(|| entropy::sweep(param, &values)).map_err(err)?;
    to_python(py, &rows)
}

#[pyfunction]
#[pyo3(signature = (polygon, samples=100_000, nsteps=100_000, seed=SAMPLE_SEED))]
fn report<'py>(py: Python<'py>, polygon: &Polygon, samples: usize, nsteps: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let opts = ReportOptions { samples, nsteps, seed, ..ReportOptions::default() };
    let r = py.detach(|| EntropyReport::compute(&polygon.inner, &opts)).map_err(err)?;
    to_python(py, &r)
}

/// The verification suite as `(name, observed, expected, tolerance, passed)`.
#[pyfunction]
#[pyo3(signature = (polygon, regular=false, samples=100_000, nsteps=100_000, seed=SAMPLE_SEED))]
fn verify(
    py: Python<'_>,
    polygon: &Polygon,
    regular: bool,
    samples: usize,
    nsteps: usize,
    seed: u64,
) -> Vec<(String, f64, f64, f64, bool)> {
    let opts = ReportOptions { samples, nsteps, seed, ..ReportOptions::default() };
    py.detach(|| entropy::verify(&polygon.inner, &opts, regular))
        .into_iter()
        .map(|l| (l.name, l.observed, l.expected, l.tolerance, l.passed))
        .collect()
}

#[pymodule]
fn fuchsian_entropy(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Polygon>()?;
    m.add_class::<BoundaryMap>()?;
    m.add_function(wrap_pyfunction!(entropy_formula, m)?)?;
    m.add_function(wrap_pyfunction!(entropy_area_form, m)?)?;
    m.add_function(wrap_pyfunction!(h_max, m)?)?;
    m.add_function(wrap_pyfunction!(h_max_limit, m)?)?;
    m.add_function(wrap_pyfunction!(analytic_eigenpair, m)?)?;
    m.add_function(wrap_pyfunction!(nu_mass_quadrature, m)?)?;
    m.add_function(wrap_pyfunction!(strip_mass, m)?)?;
    m.add_function(wrap_pyfunction!(solve_target_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(report, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("SAMPLE_SEED", SAMPLE_SEED)?;
    Ok(())
}
