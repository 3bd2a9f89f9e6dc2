//! Python bindings: `import lbe_cipher`.

#![allow(clippy::too_many_arguments)]

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyBytes;

use lbe_cipher as core;
use lbe_cipher::{
    Component, Direction, Error, KeystreamConfig, Normalization, Variant, WorkScores,
};

fn to_py(err: Error) -> PyErr {
    match err {
        Error::Io { .. } | Error::Pgm { .. } | Error::Parse { .. } => {
            PyIOError::new_err(err.to_string())
        }
        _ => PyValueError::new_err(err.to_string()),
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(to_py)
}

type Triple = (f64, f64, f64);

fn to_state(t: Triple) -> core::LorenzState {
    core::LorenzState::new(t.0, t.1, t.2)
}

fn triple(s: core::LorenzState) -> Triple {
    (s.x, s.y, s.z)
}

fn variant(name: &str) -> PyResult<Variant> {
    match name {
        "A" | "a" => Ok(Variant::A),
        "B" | "b" => Ok(Variant::B),
        _ => Err(PyValueError::new_err(format!(
            "unknown variant {name:?}, expected 'A' or 'B'"
        ))),
    }
}

/// Lorenz parameters and RK4 step size.
#[pyclass(name = "LorenzParams", from_py_object)]
#[derive(Clone, Copy)]
struct PyLorenzParams {
    inner: core::LorenzParams,
}

#[pymethods]
impl PyLorenzParams {
    #[new]
    #[pyo3(signature = (sigma=16.0, rho=45.92, beta=4.0, h=1e-6))]
    fn new(sigma: f64, rho: f64, beta: f64, h: f64) -> PyResult<Self> {
        Ok(Self {
            inner: core::LorenzParams::new(sigma, rho, beta, h).map_err(to_py)?,
        })
    }

    #[getter]
    fn sigma(&self) -> f64 {
        self.inner.sigma
    }

    #[getter]
    fn rho(&self) -> f64 {
        self.inner.rho
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.inner.beta
    }

    #[getter]
    fn h(&self) -> f64 {
        self.inner.h
    }

    fn __repr__(&self) -> String {
        let p = self.inner;
        format!(
            "LorenzParams(sigma={}, rho={}, beta={}, h={})",
            p.sigma, p.rho, p.beta, p.h
        )
    }
}

fn params_or_default(params: Option<PyLorenzParams>) -> core::LorenzParams {
    params.map(|p| p.inner).unwrap_or_default()
}

/// Row-major 8-bit grayscale image.
#[pyclass(name = "GrayImage", from_py_object)]
#[derive(Clone)]
struct PyGrayImage {
    inner: core::GrayImage,
}

#[pymethods]
impl PyGrayImage {
    #[new]
    fn new(rows: usize, cols: usize, pixels: Vec<u8>) -> PyResult<Self> {
        Ok(Self {
            inner: core::GrayImage::new(rows, cols, pixels).map_err(to_py)?,
        })
    }

    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.inner.cols()
    }

    fn pixels<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, self.inner.pixels())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "GrayImage(rows={}, cols={})",
            self.inner.rows(),
            self.inner.cols()
        )
    }
}

fn key_config(
    rows: usize,
    cols: usize,
    transient: usize,
    strategy: &str,
    component: &str,
) -> PyResult<KeystreamConfig> {
    Ok(KeystreamConfig {
        rows,
        cols,
        transient,
        strategy: parse::<Normalization>(strategy)?,
        component: parse::<Component>(component)?,
    })
}

#[pyfunction]
fn required_iterations(rows: usize, cols: usize) -> PyResult<usize> {
    core::required_iterations(rows, cols).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (state, params=None, variant="A"))]
fn derivative(state: Triple, params: Option<PyLorenzParams>, variant: &str) -> PyResult<Triple> {
    let v = self::variant(variant)?;
    core::derivative(to_state(state), &params_or_default(params), v)
        .map(triple)
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (state, params=None, variant="A"))]
fn rk4_step(state: Triple, params: Option<PyLorenzParams>, variant: &str) -> PyResult<Triple> {
    let v = self::variant(variant)?;
    core::rk4_step(to_state(state), &params_or_default(params), v)
        .map(triple)
        .map_err(to_py)
}

/// Returns `(orbit_a, orbit_b)` as lists of `(x, y, z)` tuples.
#[pyfunction]
#[pyo3(signature = (initial, n_steps, params=None))]
fn integrate_pair(
    py: Python<'_>,
    initial: Triple,
    n_steps: usize,
    params: Option<PyLorenzParams>,
) -> PyResult<(Vec<Triple>, Vec<Triple>)> {
    let params = params_or_default(params);
    let pair = py
        .detach(|| core::integrate_pair(to_state(initial), &params, n_steps))
        .map_err(to_py)?;
    Ok((
        pair.samples_a().iter().copied().map(triple).collect(),
        pair.samples_b().iter().copied().map(triple).collect(),
    ))
}

/// Lower bound error on one component for `n_steps` samples.
#[pyfunction]
#[pyo3(signature = (initial, n_steps, params=None, component="y"))]
fn lower_bound_error(
    py: Python<'_>,
    initial: Triple,
    n_steps: usize,
    params: Option<PyLorenzParams>,
    component: &str,
) -> PyResult<Vec<f64>> {
    let params = params_or_default(params);
    let component = parse::<Component>(component)?;
    py.detach(|| {
        let pair = core::integrate_pair(to_state(initial), &params, n_steps)?;
        core::lower_bound_error(&pair, component)
    })
    .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (rows, cols, params=None, initial=(1.0, 0.5, 0.9), transient=2000, strategy="mantissa-lsb", component="y"))]
fn generate_keystream<'py>(
    py: Python<'py>,
    rows: usize,
    cols: usize,
    params: Option<PyLorenzParams>,
    initial: Triple,
    transient: usize,
    strategy: &str,
    component: &str,
) -> PyResult<Bound<'py, PyBytes>> {
    let cfg = key_config(rows, cols, transient, strategy, component)?;
    let params = params_or_default(params);
    let key = py
        .detach(|| core::generate_keystream(&params, to_state(initial), &cfg))
        .map_err(to_py)?;
    Ok(PyBytes::new(py, key.bytes()))
}

/// Encrypt (or, identically, decrypt) an image.
#[pyfunction]
#[pyo3(signature = (image, params=None, initial=(1.0, 0.5, 0.9), transient=2000, strategy="mantissa-lsb", component="y"))]
fn encrypt(
    py: Python<'_>,
    image: PyGrayImage,
    params: Option<PyLorenzParams>,
    initial: Triple,
    transient: usize,
    strategy: &str,
    component: &str,
) -> PyResult<PyGrayImage> {
    let cfg = key_config(
        image.inner.rows(),
        image.inner.cols(),
        transient,
        strategy,
        component,
    )?;
    let params = params_or_default(params);
    let inner = py
        .detach(|| core::encrypt(&image.inner, &params, to_state(initial), &cfg))
        .map_err(to_py)?;
    Ok(PyGrayImage { inner })
}

#[pyfunction]
#[pyo3(signature = (image, params=None, initial=(1.0, 0.5, 0.9), transient=2000, strategy="mantissa-lsb", component="y"))]
fn decrypt(
    py: Python<'_>,
    image: PyGrayImage,
    params: Option<PyLorenzParams>,
    initial: Triple,
    transient: usize,
    strategy: &str,
    component: &str,
) -> PyResult<PyGrayImage> {
    encrypt(py, image, params, initial, transient, strategy, component)
}

/// XOR an image with raw key bytes of the same length.
#[pyfunction]
fn xor_apply(image: PyGrayImage, key: &[u8]) -> PyResult<PyGrayImage> {
    if key.len() != image.inner.len() {
        return Err(PyValueError::new_err(format!(
            "key has {} bytes, image {}x{} needs {}",
            key.len(),
            image.inner.rows(),
            image.inner.cols(),
            image.inner.len()
        )));
    }
    let pixels = image
        .inner
        .pixels()
        .iter()
        .zip(key)
        .map(|(p, k)| p ^ k)
        .collect();
    let inner =
        core::GrayImage::new(image.inner.rows(), image.inner.cols(), pixels).map_err(to_py)?;
    Ok(PyGrayImage { inner })
}

#[pyfunction]
fn shannon_entropy(image: PyRef<'_, PyGrayImage>) -> f64 {
    core::shannon_entropy(&image.inner)
}

/// `direction` is one of "horizontal", "vertical", "diagonal".
#[pyfunction]
fn adjacent_correlation(image: PyRef<'_, PyGrayImage>, direction: &str) -> PyResult<f64> {
    let dir = parse::<Direction>(direction)?;
    core::adjacent_correlation(&image.inner, dir).map_err(to_py)
}

#[pyfunction]
fn histogram(image: PyRef<'_, PyGrayImage>) -> Vec<u64> {
    core::histogram(&image.inner).counts().to_vec()
}

/// `works` is a list of `(label, corr_h, corr_v, corr_d, entropy)` tuples.
#[pyfunction]
fn efficiency_index(works: Vec<(String, f64, f64, f64, f64)>) -> PyResult<Vec<f64>> {
    let scores: Vec<WorkScores> = works
        .into_iter()
        .map(|(label, corr_h, corr_v, corr_d, entropy)| WorkScores {
            label,
            corr_h,
            corr_v,
            corr_d,
            entropy,
        })
        .collect();
    core::efficiency_index(&scores).map_err(to_py)
}

#[pyfunction]
fn read_pgm(path: std::path::PathBuf) -> PyResult<PyGrayImage> {
    Ok(PyGrayImage {
        inner: core::read_pgm(path).map_err(to_py)?,
    })
}

#[pyfunction]
fn write_pgm(image: PyRef<'_, PyGrayImage>, path: std::path::PathBuf) -> PyResult<()> {
    core::write_pgm(&image.inner, path).map_err(to_py)
}

/// The deterministic 256x256 test texture.
#[pyfunction]
fn reference_image() -> PyGrayImage {
    PyGrayImage {
        inner: core::reference_image(),
    }
}

#[pymodule]
#[pyo3(name = "lbe_cipher")]
fn lbe_cipher_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLorenzParams>()?;
    m.add_class::<PyGrayImage>()?;
    m.add_function(wrap_pyfunction!(required_iterations, m)?)?;
    m.add_function(wrap_pyfunction!(derivative, m)?)?;
    m.add_function(wrap_pyfunction!(rk4_step, m)?)?;
    m.add_function(wrap_pyfunction!(integrate_pair, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound_error, m)?)?;
    m.add_function(wrap_pyfunction!(generate_keystream, m)?)?;
    m.add_function(wrap_pyfunction!(encrypt, m)?)?;
    m.add_function(wrap_pyfunction!(decrypt, m)?)?;
    m.add_function(wrap_pyfunction!(xor_apply, m)?)?;
    m.add_function(wrap_pyfunction!(shannon_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(adjacent_correlation, m)?)?;
    m.add_function(wrap_pyfunction!(histogram, m)?)?;
    m.add_function(wrap_pyfunction!(efficiency_index, m)?)?;
    m.add_function(wrap_pyfunction!(read_pgm, m)?)?;
    m.add_function(wrap_pyfunction!(write_pgm, m)?)?;
    m.add_function(wrap_pyfunction!(reference_image, m)?)?;
    Ok(())
}
