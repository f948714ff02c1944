//! Python bindings over the core engines: sieved Mobius tables, Mertens and
//! prime-counting engines, psi, the inequality lab, and the log-magnitude
//! asymptotics.

use arith_core::asymptotic::{self, GFormula};
use arith_core::chebyshev;
use arith_core::diagnostics;
use arith_core::inequality::{self, GSign};
use arith_core::logmag;
use arith_core::numeric;
use arith_core::sieve;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn to_py_err(e: arith_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Sieved Mobius values with prime flags.
#[pyclass(name = "MuTable")]
struct PyMuTable {
    inner: sieve::MuTable,
}

#[pymethods]
impl PyMuTable {
    #[new]
    fn new(limit: u64) -> PyResult<Self> {
        Ok(PyMuTable {
            inner: sieve::build_mu_table(limit).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn limit(&self) -> u64 {
        self.inner.limit()
    }

    fn mu(&self, n: u64) -> PyResult<i8> {
        if n == 0 || n > self.inner.limit() {
            return Err(PyValueError::new_err(format!(
                "n = {n} outside 1..={}",
                self.inner.limit()
            )));
        }
        Ok(self.inner.mu(n))
    }

    fn is_prime(&self, n: u64) -> bool {
        self.inner.is_prime(n)
    }

    /// Sum of mu(d) over the divisors of n (1 at n = 1, else 0).
    fn divisor_sum(&self, n: u64) -> PyResult<i64> {
        sieve::mobius_divisor_sum(n, &self.inner).map_err(to_py_err)
    }
}

/// Dense Mertens prefix sums plus the sublinear evaluator.
#[pyclass(name = "MertensEngine")]
struct PyMertensEngine {
    inner: arith_core::MertensEngine,
}

#[pymethods]
impl PyMertensEngine {
    #[new]
    fn new(dense_limit: u64) -> PyResult<Self> {
        Ok(PyMertensEngine {
            inner: arith_core::MertensEngine::new(dense_limit).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn dense_limit(&self) -> u64 {
        self.inner.dense_limit()
    }

    fn dense(&self, x: u64) -> PyResult<i64> {
        self.inner.mertens_dense(x).map_err(to_py_err)
    }

    fn sublinear(&self, x: u64) -> PyResult<i64> {
        self.inner.mertens_sublinear(x).map_err(to_py_err)
    }

    /// sum_{n<=x} M(floor(x/n)); identically 1.
    fn quotient_sum(&self, x: u64) -> PyResult<i64> {
        self.inner.quotient_sum(x).map_err(to_py_err)
    }
}

/// Dense and sublinear exact prime counting.
#[pyclass(name = "PrimeCountEngine")]
struct PyPrimeCountEngine {
    inner: arith_core::PrimeCountEngine,
}

#[pymethods]
impl PyPrimeCountEngine {
    #[new]
    fn new(dense_limit: u64) -> PyResult<Self> {
        Ok(PyPrimeCountEngine {
            inner: arith_core::PrimeCountEngine::new(dense_limit).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn dense_limit(&self) -> u64 {
        self.inner.dense_limit()
    }

    fn pi_exact(&self, x: u64) -> PyResult<u64> {
        self.inner.pi_exact(x).map_err(to_py_err)
    }

    fn pi_sublinear(&self, x: u64) -> PyResult<u64> {
        self.inner.pi_sublinear(x).map_err(to_py_err)
    }

    /// pi(x) through whichever method covers x.
    fn pi(&self, x: u64) -> PyResult<u64> {
        self.inner.pi(x).map_err(to_py_err)
    }
}

/// Signed log-magnitude number: (sign, ln |value|).
#[pyclass(name = "LogMagnitude", skip_from_py_object)]
#[derive(Clone)]
struct PyLogMagnitude {
    inner: logmag::LogMagnitude,
}

#[pymethods]
impl PyLogMagnitude {
    #[new]
    fn new(sign: i8, ln_mag: f64) -> PyResult<Self> {
        if !(-1..=1).contains(&sign) {
            return Err(PyValueError::new_err("sign must be -1, 0 or 1"));
        }
        Ok(PyLogMagnitude {
            inner: logmag::LogMagnitude::new(sign, ln_mag),
        })
    }

    #[staticmethod]
    fn from_value(v: f64) -> Self {
        PyLogMagnitude {
            inner: logmag::LogMagnitude::from_value(v),
        }
    }

    #[getter]
    fn sign(&self) -> i8 {
        self.inner.sign()
    }

    #[getter]
    fn ln_mag(&self) -> f64 {
        self.inner.ln_mag()
    }

    #[getter]
    fn log10_mag(&self) -> f64 {
        self.inner.log10_mag()
    }

    fn to_float(&self) -> f64 {
        self.inner.to_f64()
    }

    fn powi(&self, k: u32) -> Self {
        PyLogMagnitude {
            inner: self.inner.powi(k),
        }
    }

    fn __mul__(&self, other: &PyLogMagnitude) -> Self {
        PyLogMagnitude {
            inner: logmag::lm_mul(self.inner, other.inner),
        }
    }

    fn __add__(&self, other: &PyLogMagnitude) -> Self {
        PyLogMagnitude {
            inner: logmag::lm_add(self.inner, other.inner),
        }
    }

    fn __neg__(&self) -> Self {
        PyLogMagnitude { inner: -self.inner }
    }

    fn __repr__(&self) -> String {
        format!(
            "LogMagnitude(sign={}, ln_mag={})",
            self.inner.sign(),
            self.inner.ln_mag()
        )
    }
}

fn sign_str(s: GSign) -> &'static str {
    s.as_str()
}

/// psi(x) with the count of contributing prime powers.
#[pyfunction]
fn psi_exact(x: u64) -> PyResult<(f64, u64)> {
    let v = chebyshev::psi_exact(x).map_err(to_py_err)?;
    Ok((v.psi, v.terms))
}

/// The primes in [lo, hi].
#[pyfunction]
fn primes_in_range(lo: u64, hi: u64) -> PyResult<Vec<u64>> {
    let plan = sieve::SegmentPlan::new(lo, hi).map_err(to_py_err)?;
    sieve::primes_in_range(&plan).map_err(to_py_err)
}

/// floor(x / e), certified against a rational bracket of e.
#[pyfunction]
fn floor_div_e(x: u64) -> u64 {
    numeric::floor_div_e(x)
}

/// Evaluate the inequality at x; keys x, pi_x, pi_x_over_e, lhs, rhs,
/// g_sign, margin_log10.
#[pyfunction]
fn eval_inequality<'py>(
    py: Python<'py>,
    engine: &PyPrimeCountEngine,
    x: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let r = inequality::eval_inequality(&engine.inner, x).map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("x", r.x)?;
    d.set_item("pi_x", r.pi_x)?;
    d.set_item("pi_x_over_e", r.pi_x_over_e)?;
    d.set_item("lhs", r.lhs)?;
    d.set_item("rhs", r.rhs)?;
    d.set_item("g_sign", sign_str(r.g_sign))?;
    d.set_item("margin_log10", r.margin_log10)?;
    Ok(d)
}

/// Scan [lo, hi] for counterexamples; keys holds, fails, indeterminate,
/// counterexamples, step_rule.
#[pyfunction]
#[pyo3(signature = (engine, lo, hi, primes_only = false))]
fn scan_range<'py>(
    py: Python<'py>,
    engine: &PyPrimeCountEngine,
    lo: u64,
    hi: u64,
    primes_only: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let s = inequality::scan_range(&engine.inner, lo, hi, primes_only).map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("range_lo", s.range_lo)?;
    d.set_item("range_hi", s.range_hi)?;
    d.set_item("step_rule", &s.step_rule)?;
    d.set_item("holds", s.holds_count)?;
    d.set_item("fails", s.fails_count)?;
    d.set_item("indeterminate", s.indeterminate_count)?;
    d.set_item("counterexamples", &s.counterexamples)?;
    Ok(d)
}

/// Adjacent-pair monotonicity probe; returns (pairs_checked, violations)
/// where each violation is a dict with x, x_next, g_x, g_next, margin.
#[pyfunction]
fn monotonicity_probe<'py>(
    py: Python<'py>,
    engine: &PyPrimeCountEngine,
    lo: u64,
    hi: u64,
    step: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let r = inequality::monotonicity_probe(&engine.inner, lo, hi, step).map_err(to_py_err)?;
    let out = PyDict::new(py);
    out.set_item("pairs_checked", r.pairs_checked)?;
    let items = PyList::empty(py);
    for v in &r.violations {
        let d = PyDict::new(py);
        d.set_item("x", v.x)?;
        d.set_item("x_next", v.x_next)?;
        d.set_item("g_x", v.g_x)?;
        d.set_item("g_next", v.g_next)?;
        d.set_item("margin", v.margin)?;
        items.append(d)?;
    }
    out.set_item("violations", items)?;
    Ok(out)
}

fn verdict_dict<'py>(
    py: Python<'py>,
    v: &inequality::HassaniVerdict,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("x", v.x)?;
    d.set_item("n", v.n)?;
    d.set_item("sign", sign_str(v.sign))?;
    d.set_item("ln_lhs", v.ln_lhs)?;
    d.set_item("ln_rhs", v.ln_rhs)?;
    d.set_item("margin_ln", v.margin_ln)?;
    d.set_item("note", v.note)?;
    Ok(d)
}

/// Power-family generalized inequality; sign of LHS - RHS.
#[pyfunction]
fn hassani_power<'py>(
    py: Python<'py>,
    engine: &PyPrimeCountEngine,
    x: u64,
    n: u32,
) -> PyResult<Bound<'py, PyDict>> {
    let v = inequality::hassani_power_inequality(&engine.inner, x, n).map_err(to_py_err)?;
    verdict_dict(py, &v)
}

/// Cubic-family generalized inequality; sign of RHS - LHS.
#[pyfunction]
fn hassani_cubic<'py>(
    py: Python<'py>,
    engine: &PyPrimeCountEngine,
    x: u64,
    n: u32,
) -> PyResult<Bound<'py, PyDict>> {
    let v = inequality::hassani_cubic_inequality(&engine.inner, x, n).map_err(to_py_err)?;
    verdict_dict(py, &v)
}

/// Closed-form G(e^log_x) as (sign, ln_mag); formula is "leading" or
/// "table-ref".
#[pyfunction]
fn g_asymptotic(log_x: f64, formula: &str) -> PyResult<(i8, f64)> {
    let f = GFormula::parse(formula)
        .ok_or_else(|| PyValueError::new_err(format!("unknown formula {formula:?}")))?;
    let g = asymptotic::g_asymptotic(log_x, f).map_err(to_py_err)?;
    Ok((g.sign(), g.ln_mag()))
}

/// The 28-row table of G(e^k) as dicts with k, sign, log10_abs_g, formatted.
#[pyfunction]
fn table1(py: Python<'_>) -> PyResult<Bound<'_, PyList>> {
    let rows = PyList::empty(py);
    for row in asymptotic::emit_table1() {
        let d = PyDict::new(py);
        d.set_item("k", row.k)?;
        d.set_item("sign", row.g_sign)?;
        d.set_item("log10_abs_g", row.g_log10)?;
        d.set_item("formatted", &row.formatted)?;
        rows.append(d)?;
    }
    Ok(rows)
}

/// (k, ln(-G(e^k))) series for plotting.
#[pyfunction]
fn figure1(k_lo: f64, k_hi: f64, step: f64) -> PyResult<Vec<(f64, f64)>> {
    asymptotic::emit_figure1(k_lo, k_hi, step).map_err(to_py_err)
}

/// Fit (alpha, beta) for the two-sided pi bound over [lo, hi].
#[pyfunction]
fn fit_bound_constants(lo: u64, hi: u64) -> PyResult<(f64, f64)> {
    let fit = diagnostics::fit_bound_constants(lo, hi).map_err(to_py_err)?;
    Ok((fit.alpha, fit.beta))
}

#[pymodule]
fn arith_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMuTable>()?;
    m.add_class::<PyMertensEngine>()?;
    m.add_class::<PyPrimeCountEngine>()?;
    m.add_class::<PyLogMagnitude>()?;
    m.add_function(wrap_pyfunction!(psi_exact, m)?)?;
    m.add_function(wrap_pyfunction!(primes_in_range, m)?)?;
    m.add_function(wrap_pyfunction!(floor_div_e, m)?)?;
    m.add_function(wrap_pyfunction!(eval_inequality, m)?)?;
    m.add_function(wrap_pyfunction!(scan_range, m)?)?;
    m.add_function(wrap_pyfunction!(monotonicity_probe, m)?)?;
    m.add_function(wrap_pyfunction!(hassani_power, m)?)?;
    m.add_function(wrap_pyfunction!(hassani_cubic, m)?)?;
    m.add_function(wrap_pyfunction!(g_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(table1, m)?)?;
    m.add_function(wrap_pyfunction!(figure1, m)?)?;
    m.add_function(wrap_pyfunction!(fit_bound_constants, m)?)?;
    m.add("GALWAY_X", inequality::GALWAY_X)?;
    Ok(())
}
