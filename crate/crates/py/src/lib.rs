//! Python bindings: exact tables, representations, quadrature forms, congruence
//! scans and report envelopes. Structured results come back as plain dicts.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use zigzag_core::arithmetic;
use zigzag_core::asymptotics;
use zigzag_core::exact;
use zigzag_core::quadrature::{self, Kernel, Parity, QuadratureConfig};
use zigzag_core::report::{self, QuadratureOp, QuadratureParams, VerifyParams};
use zigzag_core::representations::Representations;
use zigzag_core::spectral;

fn err(e: zigzag_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Round-trips a serializable value through `json.loads`.
fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn parse<T: std::str::FromStr<Err = zigzag_core::Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(err)
}

#[pyclass(frozen, module = "zigzag_lab")]
struct ZigzagTable {
    inner: exact::ZigzagTable,
}

#[pymethods]
impl ZigzagTable {
    #[new]
    #[pyo3(signature = (max_index, oracle = "entringer"))]
    fn new(max_index: usize, oracle: &str) -> PyResult<Self> {
        let inner = exact::ZigzagTable::compute(max_index, parse(oracle)?).map_err(err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn provenance(&self) -> &'static str {
        self.inner.provenance().as_str()
    }

    #[getter]
    fn max_index(&self) -> usize {
        self.inner.max_index()
    }

    fn values(&self) -> Vec<BigInt> {
        self.inner.values().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.values().len()
    }

    fn __getitem__(&self, n: usize) -> PyResult<BigInt> {
        self.inner
            .values()
            .get(n)
            .cloned()
            .ok_or_else(|| pyo3::exceptions::PyIndexError::new_err(n))
    }
}

#[pyclass(frozen, module = "zigzag_lab")]
struct StirlingTriangle {
    inner: exact::StirlingTriangle,
}

#[pymethods]
impl StirlingTriangle {
    #[new]
    fn new(max_n: usize) -> Self {
        Self {
            inner: exact::StirlingTriangle::new(max_n),
        }
    }

    fn get(&self, n: usize, k: usize) -> PyResult<BigInt> {
        if n > self.inner.max_n() {
            return Err(PyValueError::new_err(format!(
                "row {n} is beyond the triangle ({})",
                self.inner.max_n()
            )));
        }
        Ok(self.inner.get(n, k))
    }

    fn row(&self, n: usize) -> PyResult<Vec<BigInt>> {
        if n > self.inner.max_n() {
            return Err(PyValueError::new_err(format!("row {n} is beyond the triangle")));
        }
        Ok(self.inner.row(n).to_vec())
    }
}

#[pyfunction]
fn stirling_sum_literal(n: usize) -> PyResult<BigInt> {
    Representations::new(n).stirling_sum_literal(n).map_err(err)
}

/// `(numerator, denominator)` of the exact kernel integral.
#[pyfunction]
fn kernel_integral_exact(n: usize) -> PyResult<(BigInt, BigInt)> {
    let v = Representations::new(n).kernel_integral_exact(n).map_err(err)?;
    Ok((v.numer().clone(), v.denom().clone()))
}

#[pyfunction]
fn bernoulli_tangent(n: usize) -> PyResult<BigInt> {
    Representations::new(2 * n + 1).bernoulli_tangent(n).map_err(err)
}

#[pyfunction]
fn euler_secant(n: usize) -> PyResult<BigInt> {
    Representations::new(2 * n).euler_secant(n).map_err(err)
}

#[pyfunction]
fn falling_factorial_identity_check(py: Python<'_>, n: usize) -> PyResult<Py<PyAny>> {
    let check = Representations::new(n)
        .falling_factorial_identity_check(n)
        .map_err(err)?;
    to_py(py, &check)
}

#[pyfunction]
#[pyo3(signature = (max_n, kind = "stirling_sum"))]
fn discrepancy_report(py: Python<'_>, max_n: usize, kind: &str) -> PyResult<Py<PyAny>> {
    let reps = Representations::new(max_n);
    let report = match kind {
        "stirling_sum" => reps.stirling_sum_report(max_n),
        "kernel_integral" => reps.kernel_integral_report(max_n),
        "laplace_product" => reps.laplace_product_report(max_n),
        "bernoulli_tangent" => reps.bernoulli_tangent_report(),
        "euler_secant" => reps.euler_secant_report(),
        other => return Err(PyValueError::new_err(format!("unknown report {other:?}"))),
    }
    .map_err(err)?;
    to_py(py, &report)
}

fn cfg(rel_tol: f64) -> PyResult<QuadratureConfig> {
    let c = QuadratureConfig::default().with_rel_tol(rel_tol);
    c.validate().map_err(err)?;
    Ok(c)
}

#[pyfunction]
#[pyo3(signature = (n, rel_tol = 1e-12))]
fn hyper_sinh_literal(n: usize, rel_tol: f64) -> PyResult<f64> {
    Ok(quadrature::hyper_sinh_literal(n, &cfg(rel_tol)?).map_err(err)?.value)
}

#[pyfunction]
#[pyo3(signature = (n, parity, rel_tol = 1e-12))]
fn hyper_classical(n: usize, parity: &str, rel_tol: f64) -> PyResult<f64> {
    let parity: Parity = parse(parity)?;
    Ok(quadrature::hyper_classical(n, parity, &cfg(rel_tol)?).map_err(err)?.value)
}

#[pyfunction]
#[pyo3(signature = (n, parity, rel_tol = 1e-12))]
fn hyper_calibrated(n: usize, parity: &str, rel_tol: f64) -> PyResult<f64> {
    let parity: Parity = parse(parity)?;
    Ok(quadrature::hyper_calibrated(n, parity, &cfg(rel_tol)?).map_err(err)?.value)
}

#[pyfunction]
#[pyo3(signature = (s, kernel, rel_tol = 1e-12))]
fn mellin_moment(s: u32, kernel: &str, rel_tol: f64) -> PyResult<f64> {
    let kernel: Kernel = parse(kernel)?;
    Ok(quadrature::mellin_moment(s, kernel, &cfg(rel_tol)?).map_err(err)?.value)
}

#[pyfunction]
#[pyo3(signature = (n, radius = 1.0, nodes = None))]
fn contour_trapezoid(py: Python<'_>, n: usize, radius: f64, nodes: Option<usize>) -> PyResult<Py<PyAny>> {
    let nodes = nodes.unwrap_or_else(|| quadrature::default_nodes(n));
    let c = quadrature::contour_trapezoid(n, radius, nodes).map_err(err)?;
    to_py(py, &c)
}

#[pyfunction]
fn fourier_cutoff_scan(py: Python<'_>, n: usize) -> PyResult<Py<PyAny>> {
    let table = exact::zigzag_entringer(n);
    let oracle: f64 = table.get(n).to_string().parse().unwrap_or(f64::INFINITY);
    let scan = quadrature::fourier_cutoff_scan(n, &quadrature::default_epsilons(), oracle)
        .map_err(err)?;
    to_py(py, &scan)
}

#[pyfunction]
fn spectral_series_literal(n: usize) -> PyResult<f64> {
    spectral::spectral_series_literal(n).map_err(err)
}

#[pyfunction]
fn spectral_series_calibrated(n: usize) -> PyResult<f64> {
    spectral::spectral_series_calibrated(n).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (s, rel_tol = 1e-13))]
fn half_integer_zeta(py: Python<'_>, s: u32, rel_tol: f64) -> PyResult<Py<PyAny>> {
    to_py(py, &spectral::half_integer_zeta(s, rel_tol).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (s, rel_tol = 1e-13))]
fn dirichlet_beta(py: Python<'_>, s: u32, rel_tol: f64) -> PyResult<Py<PyAny>> {
    to_py(py, &spectral::dirichlet_beta(s, rel_tol).map_err(err)?)
}

#[pyfunction]
fn asymptotic_error_table(py: Python<'_>, max_n: usize) -> PyResult<Py<PyAny>> {
    let oracle = exact::zigzag_entringer(max_n);
    to_py(py, &asymptotics::asymptotic_error_table(max_n, &oracle).map_err(err)?)
}

#[pyfunction]
fn period_finder(py: Python<'_>, modulus: u64, n_max: usize) -> PyResult<Py<PyAny>> {
    to_py(py, &arithmetic::period_finder(modulus, n_max).map_err(err)?)
}

#[pyfunction]
fn touchard_paper_check(py: Python<'_>, p: u64, n_max: usize) -> PyResult<Py<PyAny>> {
    to_py(py, &arithmetic::touchard_paper_check(p, n_max).map_err(err)?)
}

#[pyfunction]
fn an_congruence_check(py: Python<'_>, p: u64, n_max: usize) -> PyResult<Py<PyAny>> {
    to_py(py, &arithmetic::an_congruence_check(p, n_max).map_err(err)?)
}

#[pyfunction]
fn wilson_step_check(py: Python<'_>, p: u64) -> PyResult<Py<PyAny>> {
    to_py(py, &arithmetic::wilson_step_check(p).map_err(err)?)
}

/// The full `verify` envelope as a JSON string (byte-identical to the CLI output).
#[pyfunction]
#[pyo3(signature = (max_index = 10))]
fn verify_json(py: Python<'_>, max_index: usize) -> PyResult<String> {
    let run = py
        .detach(|| report::cmd_verify(&VerifyParams::new(max_index)))
        .map_err(err)?;
    Ok(run.envelope.to_json())
}

#[pyfunction]
#[pyo3(signature = (max_index = 10, oracle = "entringer"))]
fn compute_json(max_index: usize, oracle: &str) -> PyResult<String> {
    let run = report::cmd_compute(max_index, parse(oracle)?).map_err(err)?;
    Ok(run.envelope.to_json())
}

#[pyfunction]
#[pyo3(signature = (op, index, variant = None))]
fn quadrature_json(op: &str, index: usize, variant: Option<&str>) -> PyResult<String> {
    let op: QuadratureOp = parse(op)?;
    let mut params = QuadratureParams::new(op, index);
    match (op.variant_kind(), variant) {
        (Some("parity"), Some(v)) => params.parity = Some(parse(v)?),
        (Some(_), Some(v)) => params.kernel = Some(parse(v)?),
        _ => {}
    }
    let run = report::cmd_quadrature(&params).map_err(err)?;
    Ok(run.envelope.to_json())
}

#[pyfunction]
fn report_schema() -> &'static str {
    report::SCHEMA
}

#[pymodule]
fn zigzag_lab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", report::TOOL_VERSION)?;
    m.add_class::<ZigzagTable>()?;
    m.add_class::<StirlingTriangle>()?;
    m.add_function(wrap_pyfunction!(stirling_sum_literal, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_integral_exact, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli_tangent, m)?)?;
    m.add_function(wrap_pyfunction!(euler_secant, m)?)?;
    m.add_function(wrap_pyfunction!(falling_factorial_identity_check, m)?)?;
    m.add_function(wrap_pyfunction!(discrepancy_report, m)?)?;
    m.add_function(wrap_pyfunction!(hyper_sinh_literal, m)?)?;
    m.add_function(wrap_pyfunction!(hyper_classical, m)?)?;
    m.add_function(wrap_pyfunction!(hyper_calibrated, m)?)?;
    m.add_function(wrap_pyfunction!(mellin_moment, m)?)?;
    m.add_function(wrap_pyfunction!(contour_trapezoid, m)?)?;
    m.add_function(wrap_pyfunction!(fourier_cutoff_scan, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_series_literal, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_series_calibrated, m)?)?;
    m.add_function(wrap_pyfunction!(half_integer_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(dirichlet_beta, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_error_table, m)?)?;
    m.add_function(wrap_pyfunction!(period_finder, m)?)?;
    m.add_function(wrap_pyfunction!(touchard_paper_check, m)?)?;
    m.add_function(wrap_pyfunction!(an_congruence_check, m)?)?;
    m.add_function(wrap_pyfunction!(wilson_step_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify_json, m)?)?;
    m.add_function(wrap_pyfunction!(compute_json, m)?)?;
    m.add_function(wrap_pyfunction!(quadrature_json, m)?)?;
    m.add_function(wrap_pyfunction!(report_schema, m)?)?;
    Ok(())
}
