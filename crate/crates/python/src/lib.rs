//! Python bindings. Structured results cross the boundary as JSON and come
//! out as plain dicts and lists.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyComplex;
use serde::Serialize;

use oscfractal::asymptotics::{predict_phase, PredictOptions};
use oscfractal::calibration::{calibrate as run_calibration, CalibrationConfig};
use oscfractal::fractal::{
    self, box_count, estimate_content_with, estimate_dimension_with, EpsilonGrid, Polyline,
    ScalingModel,
};
use oscfractal::integral::{
    curve_from_samples, eval_integral, sample_curve as run_sampling, QuadratureConfig,
    DEFAULT_PHASE_STEP,
};
use oscfractal::phase::{AmplitudeProfile, AmplitudeSpec, PolynomialPhase};
use oscfractal::report::{
    content_grid, measurement_grid, verify as run_verify, VerifyConfig, CONTENT_SCALES,
    DEFAULT_SCALES,
};
use oscfractal::{special, Error};

fn err(e: Error) -> PyErr {
    match e.exit_code() {
        2 => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_py<T: Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| err(e.into()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// Polynomial phase `f(x) = Σ c_k x^k`.
#[pyclass(name = "Phase", module = "oscfractal_py", frozen)]
struct PyPhase {
    inner: PolynomialPhase,
}

#[pymethods]
impl PyPhase {
    /// `terms` is a list of `(exponents, coefficient)` pairs.
    #[new]
    fn new(n: usize, terms: Vec<(Vec<u32>, f64)>) -> PyResult<Self> {
        Ok(PyPhase {
            inner: PolynomialPhase::from_terms(n, terms).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyPhase {
            inner: PolynomialPhase::from_json(text).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn __call__(&self, x: Vec<f64>) -> PyResult<f64> {
        self.inner.eval(&x).map_err(err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Phase({})", self.inner)
    }
}

/// Smooth bump amplitude with value `phi0` at the origin.
#[pyclass(name = "Amplitude", module = "oscfractal_py", frozen)]
struct PyAmplitude {
    inner: AmplitudeSpec,
}

#[pymethods]
impl PyAmplitude {
    #[new]
    #[pyo3(signature = (dim, radius = 1.0, phi0 = 1.0, profile = "radial"))]
    fn new(dim: usize, radius: f64, phi0: f64, profile: &str) -> PyResult<Self> {
        let profile = match profile {
            "radial" => AmplitudeProfile::Radial,
            "product" => AmplitudeProfile::Product,
            _ => {
                return Err(PyValueError::new_err(
                    "profile must be 'radial' or 'product'",
                ))
            }
        };
        Ok(PyAmplitude {
            inner: AmplitudeSpec::with_profile(dim, radius, phi0, profile).map_err(err)?,
        })
    }

    fn __call__(&self, x: Vec<f64>) -> PyResult<f64> {
        oscfractal::phase::eval_amplitude(&self.inner, &x).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Amplitude(dim={}, radius={}, phi0={}, profile={:?})",
            self.inner.dim, self.inner.radius, self.inner.phi0, self.inner.profile
        )
    }
}

fn amplitude_or_unit(amp: Option<&PyAmplitude>, dim: usize) -> AmplitudeSpec {
    amp.map(|a| a.inner.clone())
        .unwrap_or_else(|| AmplitudeSpec::unit(dim))
}

/// Newton diagram data: distance, remoteness, multiplicity and faces.
#[pyfunction]
fn newton(py: Python<'_>, phase: &PyPhase) -> PyResult<Py<PyAny>> {
    to_py(py, &oscfractal::newton::analyze(&phase.inner).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (phase, phi0 = 1.0, assume_adapted = false, coeff_hypothesis = None))]
fn predict(
    py: Python<'_>,
    phase: &PyPhase,
    phi0: f64,
    assume_adapted: bool,
    coeff_hypothesis: Option<usize>,
) -> PyResult<Py<PyAny>> {
    let opts = PredictOptions {
        assume_adapted,
        coeff_hypothesis,
        leading_coeff: None,
    };
    to_py(py, &predict_phase(&phase.inner, phi0, &opts).map_err(err)?)
}

/// `I(τ)` as a Python complex.
#[pyfunction]
#[pyo3(signature = (phase, tau, amplitude = None))]
fn integral<'py>(
    py: Python<'py>,
    phase: &PyPhase,
    tau: f64,
    amplitude: Option<&PyAmplitude>,
) -> PyResult<Bound<'py, PyComplex>> {
    let amp = amplitude_or_unit(amplitude, phase.inner.dim());
    let v = py
        .detach(|| eval_integral(&phase.inner, &amp, tau, &QuadratureConfig::default()))
        .map_err(err)?;
    Ok(PyComplex::from_doubles(py, v.re, v.im))
}

/// `(taus, re, im)` refined so that consecutive samples differ in phase by
/// at most `phase_step`.
#[pyfunction]
#[pyo3(signature = (phase, tau_min, tau_max, amplitude = None, phase_step = DEFAULT_PHASE_STEP, max_points = 2_000_000))]
fn sample_curve(
    py: Python<'_>,
    phase: &PyPhase,
    tau_min: f64,
    tau_max: f64,
    amplitude: Option<&PyAmplitude>,
    phase_step: f64,
    max_points: usize,
) -> PyResult<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let amp = amplitude_or_unit(amplitude, phase.inner.dim());
    let s = py
        .detach(|| {
            run_sampling(
                &phase.inner,
                &amp,
                tau_min,
                tau_max,
                phase_step,
                &QuadratureConfig::default(),
                max_points,
            )
        })
        .map_err(err)?;
    let re = s.values.iter().map(|v| v.re).collect();
    let im = s.values.iter().map(|v| v.im).collect();
    Ok((s.taus, re, im))
}

/// The curve `(Re I, Im I)` as a list of points.
#[pyfunction]
#[pyo3(signature = (phase, tau_min, tau_max, amplitude = None))]
fn curve(
    py: Python<'_>,
    phase: &PyPhase,
    tau_min: f64,
    tau_max: f64,
    amplitude: Option<&PyAmplitude>,
) -> PyResult<Vec<[f64; 2]>> {
    let amp = amplitude_or_unit(amplitude, phase.inner.dim());
    py.detach(|| {
        let s = run_sampling(
            &phase.inner,
            &amp,
            tau_min,
            tau_max,
            DEFAULT_PHASE_STEP,
            &QuadratureConfig::default(),
            2_000_000,
        )?;
        Ok(curve_from_samples(&s)?.points)
    })
    .map_err(err)
}

fn model(name: &str) -> PyResult<ScalingModel> {
    match name {
        "plain" => Ok(ScalingModel::Plain),
        "tail-corrected" => Ok(ScalingModel::TailCorrected),
        _ => Err(PyValueError::new_err(
            "model must be 'plain' or 'tail-corrected'",
        )),
    }
}

fn grid(
    poly: &Polyline,
    eps_max: Option<f64>,
    eps_min: Option<f64>,
    scales: usize,
    content: bool,
) -> Result<EpsilonGrid, Error> {
    match (eps_max, eps_min) {
        (Some(hi), Some(lo)) => EpsilonGrid::geometric(hi, lo, scales),
        (None, None) if content => content_grid(poly, None, scales),
        (None, None) => measurement_grid(poly, None, scales),
        _ => Err(Error::InvalidInput(
            "give both eps_max and eps_min or neither".into(),
        )),
    }
}

/// Box dimension of a polyline, or of a point set with `connected=False`.
#[pyfunction]
#[pyo3(signature = (points, connected = true, model = "plain", eps_max = None, eps_min = None, scales = DEFAULT_SCALES, offsets = 4, seed = 1))]
#[allow(clippy::too_many_arguments)]
fn box_dimension(
    py: Python<'_>,
    points: Vec<[f64; 2]>,
    connected: bool,
    model: &str,
    eps_max: Option<f64>,
    eps_min: Option<f64>,
    scales: usize,
    offsets: usize,
    seed: u64,
) -> PyResult<Py<PyAny>> {
    let m = self::model(model)?;
    let poly = Polyline { points, connected };
    let est = py
        .detach(|| {
            let g = grid(&poly, eps_max, eps_min, scales, false)?;
            estimate_dimension_with(&box_count(&poly, &g, offsets, seed)?, m)
        })
        .map_err(err)?;
    to_py(py, &est)
}

/// Minkowski content at dimension `d` with a degeneracy verdict.
#[pyfunction]
#[pyo3(signature = (points, d, model = "plain", eps_max = None, eps_min = None, scales = CONTENT_SCALES))]
fn content(
    py: Python<'_>,
    points: Vec<[f64; 2]>,
    d: f64,
    model: &str,
    eps_max: Option<f64>,
    eps_min: Option<f64>,
    scales: usize,
) -> PyResult<Py<PyAny>> {
    let m = self::model(model)?;
    let poly = Polyline::new(points);
    let est = py
        .detach(|| {
            estimate_content_with(&poly, d, &grid(&poly, eps_max, eps_min, scales, true)?, m)
        })
        .map_err(err)?;
    to_py(py, &est)
}

/// Area of the `eps`-neighbourhood of a polyline.
#[pyfunction]
fn sausage_area(py: Python<'_>, points: Vec<[f64; 2]>, eps: f64) -> PyResult<f64> {
    let poly = Polyline::new(points);
    py.detach(|| fractal::sausage_area(&poly, eps)).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (alpha, beta, l = 0, t_min = 1e-3, max_points = 2_000_000))]
fn gen_chirp(
    alpha: f64,
    beta: f64,
    l: u32,
    t_min: f64,
    max_points: usize,
) -> PyResult<Vec<[f64; 2]>> {
    Ok(fractal::gen_chirp(alpha, beta, l, t_min, max_points)
        .map_err(err)?
        .points)
}

#[pyfunction]
#[pyo3(signature = (alpha, m = 1.0, l = 0, phi_min = 2.0 * std::f64::consts::PI, phi_max = 3000.0))]
fn gen_spiral(alpha: f64, m: f64, l: u32, phi_min: f64, phi_max: f64) -> PyResult<Vec<[f64; 2]>> {
    Ok(fractal::gen_spiral(alpha, m, l, phi_min, phi_max)
        .map_err(err)?
        .points)
}

#[pyfunction]
#[pyo3(signature = (a, eps_min = 1e-4))]
fn gen_astring(a: f64, eps_min: f64) -> PyResult<Vec<[f64; 2]>> {
    Ok(fractal::gen_astring(a, eps_min).map_err(err)?.points)
}

/// Full prediction-against-measurement report. `config` is a JSON object
/// with the fields of the verification configuration.
#[pyfunction]
#[pyo3(signature = (phase, amplitude = None, config = None))]
fn verify(
    py: Python<'_>,
    phase: &PyPhase,
    amplitude: Option<&PyAmplitude>,
    config: Option<&str>,
) -> PyResult<Py<PyAny>> {
    let amp = amplitude_or_unit(amplitude, phase.inner.dim());
    let cfg: VerifyConfig = match config {
        Some(c) => serde_json::from_str(c).map_err(|e| err(e.into()))?,
        None => VerifyConfig::default(),
    };
    let report = py
        .detach(|| run_verify(&phase.inner, &amp, &cfg))
        .map_err(|e| err(e.source))?;
    to_py(py, &report)
}

/// Synthetic zoo rows; slow (about a minute).
#[pyfunction]
fn calibrate(py: Python<'_>) -> PyResult<Py<PyAny>> {
    let rows = py
        .detach(|| run_calibration(&CalibrationConfig::default()))
        .map_err(err)?;
    to_py(py, &rows)
}

#[pyfunction]
fn gamma(x: f64) -> PyResult<f64> {
    special::gamma(x).map_err(err)
}

#[pyfunction]
fn beta(a: f64, b: f64) -> PyResult<f64> {
    special::beta(a, b).map_err(err)
}

#[pymodule]
pub fn oscfractal_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPhase>()?;
    m.add_class::<PyAmplitude>()?;
    m.add_function(wrap_pyfunction!(newton, m)?)?;
    m.add_function(wrap_pyfunction!(predict, m)?)?;
    m.add_function(wrap_pyfunction!(integral, m)?)?;
    m.add_function(wrap_pyfunction!(sample_curve, m)?)?;
    m.add_function(wrap_pyfunction!(curve, m)?)?;
    m.add_function(wrap_pyfunction!(box_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(content, m)?)?;
    m.add_function(wrap_pyfunction!(sausage_area, m)?)?;
    m.add_function(wrap_pyfunction!(gen_chirp, m)?)?;
    m.add_function(wrap_pyfunction!(gen_spiral, m)?)?;
    m.add_function(wrap_pyfunction!(gen_astring, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(calibrate, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(beta, m)?)?;
    Ok(())
}
