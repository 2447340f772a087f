//! Python bindings. Rationals cross the boundary as `fractions.Fraction`;
//! inputs may be `int`, `Fraction` or a `"p/q"` string.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyString;

use cauchy_conv::combinatorics::{self, StirlingTable};
use cauchy_conv::convolution::{self, EgfSequence};
use cauchy_conv::irwinhall::{self, PiecewisePoly};
use cauchy_conv::verify::{self, IdentityReport, MonteCarloReport, SweepOptions, DEFAULT_DOUBLE_SUM_BUDGET};
use cauchy_conv::{DensePoly, Error, ExactRational};

create_exception!(cauchy_conv_py, CauchyConvError, PyValueError);

fn err(e: Error) -> PyErr {
    CauchyConvError::new_err(e.to_string())
}

fn to_fraction<'py>(py: Python<'py>, r: &ExactRational) -> PyResult<Bound<'py, PyAny>> {
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    fraction.call1((r.numer().clone(), r.denom().clone()))
}

fn to_fractions<'py>(py: Python<'py>, rs: &[ExactRational]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    rs.iter().map(|r| to_fraction(py, r)).collect()
}

fn to_rational(obj: &Bound<'_, PyAny>) -> PyResult<ExactRational> {
    if let Ok(s) = obj.cast::<PyString>() {
        return s.to_str()?.parse().map_err(err);
    }
    if let Ok(n) = obj.extract::<BigInt>() {
        return Ok(ExactRational::from_integer(n));
    }
    let numer: BigInt = obj.getattr("numerator")?.extract()?;
    let denom: BigInt = obj.getattr("denominator")?.extract()?;
    ExactRational::new(numer, denom).map_err(err)
}

fn to_rationals(objs: &[Bound<'_, PyAny>]) -> PyResult<Vec<ExactRational>> {
    objs.iter().map(to_rational).collect()
}

#[pyfunction]
fn binomial(n: usize, k: usize) -> BigInt {
    BigInt::from(cauchy_conv::binomial(n, k))
}

#[pyfunction]
fn multinomial(n: usize, parts: Vec<usize>) -> PyResult<BigInt> {
    cauchy_conv::multinomial(n, &parts).map(BigInt::from).map_err(err)
}

#[pyclass(name = "StirlingTable", frozen)]
struct PyStirlingTable {
    inner: StirlingTable,
}

#[pymethods]
impl PyStirlingTable {
    #[new]
    fn new(bound: usize) -> Self {
        Self { inner: StirlingTable::build(bound) }
    }

    #[getter]
    fn bound(&self) -> usize {
        self.inner.bound()
    }

    /// Signed s(n, k).
    fn first_kind(&self, n: usize, k: usize) -> PyResult<BigInt> {
        self.inner.first_kind(n, k).map_err(err)
    }

    /// S(n, k).
    fn second_kind(&self, n: usize, k: usize) -> PyResult<BigInt> {
        self.inner.second_kind(n, k).map_err(err)
    }

    fn cauchy_number<'py>(&self, py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
        to_fraction(py, &combinatorics::cauchy_number(n, &self.inner).map_err(err)?)
    }

    /// Coefficients of (x)_n in increasing powers of x.
    fn descending_factorial_poly<'py>(&self, py: Python<'py>, n: usize) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let p = combinatorics::descending_factorial_poly(n, &self.inner).map_err(err)?;
        to_fractions(py, p.coeffs())
    }

    fn __repr__(&self) -> String {
        format!("StirlingTable(bound={})", self.inner.bound())
    }
}

#[pyfunction]
fn cauchy_numbers<'py>(py: Python<'py>, n_max: usize) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let table = StirlingTable::build(n_max);
    to_fractions(py, &combinatorics::cauchy_numbers(n_max, &table).map_err(err)?)
}

#[pyfunction]
fn descending_factorial_at<'py>(py: Python<'py>, x: &Bound<'py, PyAny>, n: usize) -> PyResult<Bound<'py, PyAny>> {
    to_fraction(py, &combinatorics::descending_factorial_at(&to_rational(x)?, n))
}

/// A truncated sequence u_0..u_N under binomial convolution.
#[pyclass(name = "EgfSequence", frozen, eq)]
#[derive(PartialEq)]
struct PyEgfSequence {
    inner: EgfSequence,
}

impl From<EgfSequence> for PyEgfSequence {
    fn from(inner: EgfSequence) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyEgfSequence {
    #[new]
    fn new(terms: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        EgfSequence::new(to_rationals(&terms)?).map(Self::from).map_err(err)
    }

    #[staticmethod]
    fn identity(order: usize) -> Self {
        convolution::convolve_identity(order).into()
    }

    #[staticmethod]
    fn cauchy(order: usize) -> PyResult<Self> {
        let table = StirlingTable::build(order);
        let terms = combinatorics::cauchy_numbers(order, &table).map_err(err)?;
        EgfSequence::new(terms).map(Self::from).map_err(err)
    }

    /// Terms of log(1+z)/z.
    #[staticmethod]
    fn log1p_over_z(order: usize) -> Self {
        convolution::series_log1p_over_z(order).into()
    }

    #[getter]
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        to_fractions(py, self.inner.terms())
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn __len__(&self) -> usize {
        self.inner.terms().len()
    }

    fn convolve(&self, other: &PyEgfSequence) -> Self {
        convolution::binomial_convolve(&self.inner, &other.inner).into()
    }

    fn inverse(&self) -> PyResult<Self> {
        convolution::convolve_inverse(&self.inner).map(Self::from).map_err(err)
    }

    fn shift(&self, l: usize) -> PyResult<Self> {
        convolution::shift(&self.inner, l).map(Self::from).map_err(err)
    }

    fn power(&self, m: usize) -> Self {
        convolution::convolve_power(&self.inner, m).into()
    }

    fn multinomial_expand<'py>(&self, py: Python<'py>, m: usize, n: usize) -> PyResult<Bound<'py, PyAny>> {
        to_fraction(py, &convolution::multinomial_expand(&self.inner, m, n).map_err(err)?)
    }

    fn leibniz_split<'py>(&self, py: Python<'py>, m: usize, mu: usize, n: usize) -> PyResult<Bound<'py, PyAny>> {
        to_fraction(py, &convolution::leibniz_split(&self.inner, m, mu, n).map_err(err)?)
    }

    fn __mul__(&self, other: &PyEgfSequence) -> Self {
        self.convolve(other)
    }

    fn __repr__(&self) -> String {
        let terms: Vec<String> = self.inner.terms().iter().map(ToString::to_string).collect();
        format!("EgfSequence([{}])", terms.join(", "))
    }
}

/// Density of the sum of m independent uniforms on [0, 1].
#[pyclass(name = "IrwinHallDensity", frozen)]
struct PyIrwinHallDensity {
    inner: PiecewisePoly,
}

#[pymethods]
impl PyIrwinHallDensity {
    #[new]
    fn new(m: usize) -> PyResult<Self> {
        irwinhall::irwin_hall_density(m).map(|inner| Self { inner }).map_err(err)
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    /// Piece j (valid on [j, j+1]) as coefficients in increasing powers of θ.
    #[getter]
    fn pieces<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        self.inner.pieces().iter().map(|p| to_fractions(py, p.coeffs())).collect()
    }

    fn __call__<'py>(&self, py: Python<'py>, theta: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        to_fraction(py, &irwinhall::density_eval(&self.inner, &to_rational(theta)?).map_err(err)?)
    }

    /// ∫ p(θ) ρ_m(θ) dθ for p given by coefficients in increasing powers.
    fn integrate<'py>(&self, py: Python<'py>, coeffs: Vec<Bound<'py, PyAny>>) -> PyResult<Bound<'py, PyAny>> {
        let p = DensePoly::from_coeffs(to_rationals(&coeffs)?);
        to_fraction(py, &irwinhall::integrate_poly_against_density(&p, &self.inner))
    }
}

#[pyfunction]
fn factorial_moment<'py>(py: Python<'py>, m: usize, p: usize) -> PyResult<Bound<'py, PyAny>> {
    let table = StirlingTable::build(p);
    to_fraction(py, &irwinhall::factorial_moment(m, p, &table).map_err(err)?)
}

#[pyfunction]
fn raw_moment<'py>(py: Python<'py>, m: usize, k: usize) -> PyResult<Bound<'py, PyAny>> {
    let table = StirlingTable::build(m + k);
    to_fraction(py, &irwinhall::raw_moment_via_stirling(m, k, &table).map_err(err)?)
}

#[pyfunction]
fn stirling_sum_rhs<'py>(py: Python<'py>, p: usize, m: usize) -> PyResult<Bound<'py, PyAny>> {
    let table = StirlingTable::build(m + p);
    to_fraction(py, &verify::stirling_sum_rhs(p, m, &table).map_err(err)?)
}

#[pyclass(name = "IdentityReport", frozen, get_all)]
struct PyIdentityReport {
    m: usize,
    mu: usize,
    n: usize,
    all_equal: bool,
    double_sum_skipped: bool,
    inner: Py<PyAny>,
}

impl PyIdentityReport {
    fn build(py: Python<'_>, r: IdentityReport) -> PyResult<Self> {
        let values = (
            r.lhs_double_sum.as_ref().map(|d| to_fraction(py, d)).transpose()?,
            to_fraction(py, &r.lhs_single_sum)?,
            to_fraction(py, &r.integral_value)?,
            to_fraction(py, &r.stirling_sum_value)?,
        );
        Ok(Self {
            m: r.m,
            mu: r.mu,
            n: r.n,
            all_equal: r.all_equal,
            double_sum_skipped: r.double_sum_skipped(),
            inner: values.into_pyobject(py)?.into_any().unbind(),
        })
    }
}

#[pymethods]
impl PyIdentityReport {
    /// (double sum or None, single sum, integral, Stirling sum).
    #[getter]
    fn values(&self, py: Python<'_>) -> Py<PyAny> {
        self.inner.clone_ref(py)
    }

    fn __repr__(&self) -> String {
        format!(
            "IdentityReport(m={}, mu={}, n={}, all_equal={})",
            self.m,
            self.mu,
            self.n,
            if self.all_equal { "True" } else { "False" }
        )
    }
}

#[pyfunction]
#[pyo3(signature = (m, mu, n, budget=None))]
fn verify_identity(py: Python<'_>, m: usize, mu: usize, n: usize, budget: Option<u64>) -> PyResult<PyIdentityReport> {
    let table = StirlingTable::build(verify::required_bound(m, mu, n));
    let r = verify::verify_identity_with_budget(m, mu, n, &table, budget).map_err(err)?;
    PyIdentityReport::build(py, r)
}

#[pyfunction]
#[pyo3(signature = (m_max, mu_max, n_max, budget=Some(DEFAULT_DOUBLE_SUM_BUDGET), parallelism=1))]
fn sweep(
    py: Python<'_>,
    m_max: usize,
    mu_max: usize,
    n_max: usize,
    budget: Option<u64>,
    parallelism: usize,
) -> PyResult<Vec<PyIdentityReport>> {
    let table = StirlingTable::build(m_max + mu_max + n_max);
    let options = SweepOptions { double_sum_budget: budget, parallelism };
    let reports = verify::sweep(m_max, mu_max, n_max, &table, options).map_err(err)?;
    reports.into_iter().map(|r| PyIdentityReport::build(py, r)).collect()
}

#[pyclass(name = "MonteCarloReport", frozen, get_all)]
struct PyMonteCarloReport {
    m: usize,
    mu: usize,
    n: usize,
    samples: u64,
    estimate: f64,
    standard_error: f64,
    z_score: f64,
    seed: u64,
    exact_value: Py<PyAny>,
}

#[pyfunction]
fn monte_carlo_check(py: Python<'_>, m: usize, mu: usize, n: usize, samples: u64, seed: u64) -> PyResult<PyMonteCarloReport> {
    let r: MonteCarloReport = verify::monte_carlo_check(m, mu, n, samples, seed).map_err(err)?;
    Ok(PyMonteCarloReport {
        m: r.m,
        mu: r.mu,
        n: r.n,
        samples: r.samples,
        estimate: r.estimate,
        standard_error: r.standard_error,
        z_score: r.z_score,
        seed: r.seed,
        exact_value: to_fraction(py, &r.exact_value)?.unbind(),
    })
}

#[pymodule]
fn cauchy_conv_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CauchyConvError", m.py().get_type::<CauchyConvError>())?;
    m.add_class::<PyStirlingTable>()?;
    m.add_class::<PyEgfSequence>()?;
    m.add_class::<PyIrwinHallDensity>()?;
    m.add_class::<PyIdentityReport>()?;
    m.add_class::<PyMonteCarloReport>()?;
    m.add_function(wrap_pyfunction!(binomial, m)?)?;
    m.add_function(wrap_pyfunction!(multinomial, m)?)?;
    m.add_function(wrap_pyfunction!(cauchy_numbers, m)?)?;
    m.add_function(wrap_pyfunction!(descending_factorial_at, m)?)?;
    m.add_function(wrap_pyfunction!(factorial_moment, m)?)?;
    m.add_function(wrap_pyfunction!(raw_moment, m)?)?;
    m.add_function(wrap_pyfunction!(stirling_sum_rhs, m)?)?;
    m.add_function(wrap_pyfunction!(verify_identity, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(monte_carlo_check, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use pyo3::types::PyDict;

    fn with_module(code: &std::ffi::CStr) {
        Python::initialize();
        Python::attach(|py| {
            let module = PyModule::new(py, "cauchy_conv_py").unwrap();
            cauchy_conv_py(&module).unwrap();
            let globals = PyDict::new(py);
            globals.set_item("cc", module).unwrap();
            py.run(code, Some(&globals), None).unwrap();
        });
    }

    #[test]
    fn rationals_cross_as_fractions() {
        with_module(
            c"from fractions import Fraction
assert cc.cauchy_numbers(2) == [1, Fraction(1, 2), Fraction(-1, 6)]
assert cc.descending_factorial_at('1/2', 2) == Fraction(-1, 4)
assert cc.descending_factorial_at(Fraction(3), 3) == 6
assert cc.IrwinHallDensity(2)(Fraction(3, 2)) == Fraction(1, 2)",
        );
    }

    #[test]
    fn errors_map_to_exception() {
        with_module(
            c"for bad in (lambda: cc.multinomial(4, [2, 1]),
            lambda: cc.EgfSequence([0, 1]).inverse(),
            lambda: cc.EgfSequence(['1/0']),
            lambda: cc.StirlingTable(3).first_kind(4, 1)):
    try:
        bad()
    except cc.CauchyConvError:
        pass
    else:
        raise AssertionError('expected CauchyConvError')
assert issubclass(cc.CauchyConvError, ValueError)",
        );
    }

    #[test]
    fn verification_reports() {
        with_module(
            c"r = cc.verify_identity(2, 1, 0)
assert r.all_equal and not r.double_sum_skipped and r.values[0] == 1
r = cc.verify_identity(3, 2, 3, budget=10)
assert r.double_sum_skipped and r.values[0] is None and r.all_equal
cells = [(x.m, x.mu, x.n) for x in cc.sweep(2, 1, 1, parallelism=2)]
assert cells == [(m, mu, n) for m in (1, 2) for mu in (0, 1) for n in (0, 1)]",
        );
    }
}
