//! Python bindings. Rationals cross the boundary as `fractions.Fraction`,
//! integers as Python ints.

use std::sync::Arc;

use pyo3::exceptions::{PyArithmeticError, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::sync::PyOnceLock;
use pyo3::types::PyType;

use levelstir::arith::frac_part as rat_frac_part;
use levelstir::numbertheory::{self as nt, ResidueTable as CoreResidueTable};
use levelstir::polynum::{self, Pb2Index};
use levelstir::series::{self, PSeries as CorePSeries};
use levelstir::stirling::{Kind, StirlingTable as CoreTable};
use levelstir::verify::{self, Config};
use levelstir::{BigInt, Error, Rat};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::DivisionByZero | Error::Pole => PyZeroDivisionError::new_err(e.to_string()),
        Error::TheoremViolation(_) | Error::Inconsistency(_) => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fraction_type(py: Python<'_>) -> PyResult<&Bound<'_, PyType>> {
    static FRACTION: PyOnceLock<Py<PyType>> = PyOnceLock::new();
    FRACTION.import(py, "fractions", "Fraction")
}

fn to_fraction<'py>(py: Python<'py>, q: &Rat) -> PyResult<Bound<'py, PyAny>> {
    fraction_type(py)?.call1((q.numer().clone(), q.denom().clone()))
}

/// Accepts anything with integer `numerator` and `denominator` (int, Fraction).
fn from_py_rational(obj: &Bound<'_, PyAny>) -> PyResult<Rat> {
    let num: BigInt = obj.getattr("numerator")?.extract()?;
    let den: BigInt = obj.getattr("denominator")?.extract()?;
    Rat::new(num, den).map_err(to_py_err)
}

fn parse_kind(kind: u8) -> PyResult<Kind> {
    match kind {
        1 => Ok(Kind::First),
        2 => Ok(Kind::Second),
        _ => Err(PyValueError::new_err(format!("kind must be 1 or 2, got {kind}"))),
    }
}

/// Level-`s` Stirling number of the first (`kind=1`) or second (`kind=2`) kind.
#[pyfunction]
#[pyo3(signature = (kind, level, n, k))]
fn stirling_number(kind: u8, level: u32, n: usize, k: usize) -> PyResult<BigInt> {
    let table = CoreTable::shared(parse_kind(kind)?, level).map_err(to_py_err)?;
    Ok(table.get(n, k))
}

/// `B_n^(k)` with level 2; `n` is the actual (even) subscript.
#[pyfunction]
#[pyo3(signature = (n, k, route = "explicit"))]
fn pb2<'py>(py: Python<'py>, n: usize, k: i64, route: &str) -> PyResult<Bound<'py, PyAny>> {
    let idx = Pb2Index::from_subscript(n, k).map_err(to_py_err)?;
    let value = match route {
        "explicit" => polynum::pb2_explicit(idx.n, k),
        "multinomial" => polynum::pb2_multinomial(idx.n, k).map_err(to_py_err)?,
        "gf" => polynum::pb2_gf(k, idx.n).map_err(to_py_err)?.get(idx.n).cloned().expect("in range"),
        "iterated" => polynum::pb2_iterated_gf(k, idx.n)
            .map_err(to_py_err)?
            .get(idx.n)
            .cloned()
            .expect("in range"),
        other => return Err(PyValueError::new_err(format!("unknown route {other:?}"))),
    };
    to_fraction(py, &value)
}

/// `C_n^(k)` with level 2; `n` is the actual (even) subscript.
#[pyfunction]
fn pc2<'py>(py: Python<'py>, n: usize, k: i64) -> PyResult<Bound<'py, PyAny>> {
    let idx = Pb2Index::from_subscript(n, k).map_err(to_py_err)?;
    to_fraction(py, &polynum::pc2_explicit(idx.n, k))
}

/// Classical Bernoulli number `B_n` with `B_1 = -1/2`.
#[pyfunction]
fn bernoulli(py: Python<'_>, n: usize) -> PyResult<Bound<'_, PyAny>> {
    to_fraction(py, &polynum::bernoulli(n))
}

/// Level-2 Bernoulli number `B_n = B_n^(1)`; `n` is the actual (even) subscript.
#[pyfunction]
fn bernoulli2(py: Python<'_>, n: usize) -> PyResult<Bound<'_, PyAny>> {
    let idx = Pb2Index::from_subscript(n, 1).map_err(to_py_err)?;
    to_fraction(py, &nt::bernoulli2(idx.n))
}

/// `q - floor(q)`.
#[pyfunction]
fn frac_part<'py>(py: Python<'py>, q: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    to_fraction(py, &rat_frac_part(&from_py_rational(q)?))
}

#[pyclass(frozen, get_all, module = "pylevelstir")]
struct VscReport {
    n: u64,
    value: Py<PyAny>,
    terms: Vec<(u64, Py<PyAny>)>,
    defect: Py<PyAny>,
    reduced_defect: Py<PyAny>,
}

#[pymethods]
impl VscReport {
    fn __repr__(&self, py: Python<'_>) -> PyResult<String> {
        Ok(format!(
            "VscReport(n={}, value={}, defect={})",
            self.n,
            self.value.bind(py).str()?,
            self.reduced_defect.bind(py).str()?
        ))
    }
}

/// Von Staudt-Clausen type report for `B_{2n}` (half index `n`).
#[pyfunction]
fn vsc(py: Python<'_>, n: u64) -> PyResult<VscReport> {
    let r = nt::vsc_defect(n).map_err(to_py_err)?;
    let terms = r
        .terms
        .iter()
        .map(|(p, t)| Ok((*p, to_fraction(py, t)?.unbind())))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(VscReport {
        n: r.n,
        value: to_fraction(py, &r.value)?.unbind(),
        terms,
        defect: to_fraction(py, &r.defect)?.unbind(),
        reduced_defect: to_fraction(py, &r.reduced_defect)?.unbind(),
    })
}

/// `B_{2n}^(-k) mod m` for `n, k >= 1` (half index `n`).
#[pyfunction]
fn residue(n: usize, k: usize, m: u64) -> PyResult<u64> {
    nt::pb2_residue(n, k, m).map_err(to_py_err)
}

#[pyclass(frozen, module = "pylevelstir")]
struct ResidueTable {
    inner: CoreResidueTable,
}

#[pymethods]
impl ResidueTable {
    #[getter]
    fn modulus(&self) -> u64 {
        self.inner.modulus
    }

    #[getter]
    fn row_period(&self) -> usize {
        self.inner.row_period
    }

    #[getter]
    fn col_period(&self) -> usize {
        self.inner.col_period
    }

    #[getter]
    fn entries(&self) -> Vec<Vec<u64>> {
        self.inner.entries.clone()
    }

    /// Residue for `(n, k)` by periodicity.
    fn get(&self, n: usize, k: usize) -> u64 {
        self.inner.get(n, k)
    }

    fn __repr__(&self) -> String {
        format!("ResidueTable(modulus={}, entries={:?})", self.inner.modulus, self.inner.entries)
    }
}

/// Periodic residue table for modulus 5 or 7, checked against the closed forms.
#[pyfunction]
fn congruence_table(m: u64) -> PyResult<ResidueTable> {
    let inner = match m {
        5 => nt::cong5_table(),
        7 => nt::cong7_table(),
        _ => return Err(PyValueError::new_err(format!("no periodic table modulo {m}"))),
    }
    .map_err(to_py_err)?;
    Ok(ResidueTable { inner })
}

#[pyfunction]
fn doublesum_check(nx: usize, ny: usize) -> PyResult<bool> {
    polynum::doublesum_check(nx, ny).map_err(to_py_err)
}

/// Runs the verification suite; returns `(name, passed, diagnostic, details)` per group.
#[pyfunction]
#[pyo3(signature = (nmax = 8, kmax = 3, order = 15))]
fn run_verify(
    py: Python<'_>,
    nmax: usize,
    kmax: usize,
    order: usize,
) -> Vec<(&'static str, bool, bool, Vec<String>)> {
    let cfg = Config { nmax, kmax, order, inject_fault: false };
    py.detach(|| verify::run_all(&cfg))
        .into_iter()
        .map(|r| (r.name, r.passed, r.diagnostic, r.details))
        .collect()
}

#[pyclass(frozen, module = "pylevelstir")]
struct StirlingTable {
    inner: Arc<CoreTable>,
}

#[pymethods]
impl StirlingTable {
    #[new]
    fn new(kind: u8, level: u32) -> PyResult<Self> {
        Ok(StirlingTable { inner: CoreTable::shared(parse_kind(kind)?, level).map_err(to_py_err)? })
    }

    #[getter]
    fn kind(&self) -> u8 {
        match self.inner.kind() {
            Kind::First => 1,
            Kind::Second => 2,
        }
    }

    #[getter]
    fn level(&self) -> u32 {
        self.inner.level()
    }

    fn get(&self, n: usize, k: usize) -> BigInt {
        self.inner.get(n, k)
    }

    fn row(&self, n: usize) -> Vec<BigInt> {
        self.inner.row(n)
    }

    fn __getitem__(&self, index: (usize, usize)) -> BigInt {
        self.inner.get(index.0, index.1)
    }

    fn __repr__(&self) -> String {
        format!("StirlingTable(kind={}, level={})", self.kind(), self.level())
    }
}

/// Truncated power series with exact rational coefficients.
#[pyclass(frozen, module = "pylevelstir", name = "PSeries")]
struct PySeries {
    inner: CorePSeries,
}

fn wrap(inner: CorePSeries) -> PySeries {
    PySeries { inner }
}

#[pymethods]
impl PySeries {
    /// Series `c_0 + c_1 x + ...` known through `x^{len-1}`.
    #[new]
    fn new(coeffs: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        if coeffs.is_empty() {
            return Err(PyValueError::new_err("need at least one coefficient"));
        }
        let coeffs = coeffs.iter().map(from_py_rational).collect::<PyResult<Vec<_>>>()?;
        Ok(wrap(CorePSeries::from_coeffs(coeffs)))
    }

    #[classmethod]
    fn two_sin_half(_cls: &Bound<'_, PyType>, order: usize) -> Self {
        wrap(series::gen_two_sin_half(order))
    }

    #[classmethod]
    fn two_tan_half(_cls: &Bound<'_, PyType>, order: usize) -> Self {
        wrap(series::gen_two_tan_half(order))
    }

    #[classmethod]
    fn atanh(_cls: &Bound<'_, PyType>, order: usize) -> Self {
        wrap(series::gen_atanh(order))
    }

    /// `Li_{2,k}(z) = sum z^{2n+1} / (2n+1)^k`.
    #[classmethod]
    fn li2k(_cls: &Bound<'_, PyType>, k: i64, order: usize) -> Self {
        wrap(series::gen_li2k(k, order))
    }

    /// `exp(c x)`.
    #[classmethod]
    fn exp(_cls: &Bound<'_, PyType>, c: &Bound<'_, PyAny>, order: usize) -> PyResult<Self> {
        Ok(wrap(series::gen_exp(&from_py_rational(c)?, order)))
    }

    #[classmethod]
    fn cos(_cls: &Bound<'_, PyType>, order: usize) -> Self {
        wrap(series::gen_cos(order))
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn valuation(&self) -> usize {
        self.inner.valuation()
    }

    fn coeff<'py>(&self, py: Python<'py>, i: usize) -> PyResult<Bound<'py, PyAny>> {
        match self.inner.try_coeff(i) {
            Some(c) => to_fraction(py, &c),
            None => Err(PyValueError::new_err(format!(
                "coefficient {i} lies past the truncation order {}",
                self.inner.order()
            ))),
        }
    }

    fn coefficients<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.inner.coefficients().iter().map(|c| to_fraction(py, c)).collect()
    }

    fn compose(&self, inner: &PySeries) -> PyResult<Self> {
        series::ps_compose(&self.inner, &inner.inner).map(wrap).map_err(to_py_err)
    }

    fn integrate(&self) -> Self {
        wrap(series::ps_integrate(&self.inner))
    }

    fn derivative(&self) -> Self {
        wrap(series::ps_derivative(&self.inner))
    }

    fn __add__(&self, other: &PySeries) -> Self {
        wrap(series::ps_add(&self.inner, &other.inner))
    }

    fn __sub__(&self, other: &PySeries) -> Self {
        wrap(series::ps_sub(&self.inner, &other.inner))
    }

    fn __mul__(&self, other: &PySeries) -> Self {
        wrap(series::ps_mul(&self.inner, &other.inner))
    }

    fn __truediv__(&self, other: &PySeries) -> PyResult<Self> {
        series::ps_div(&self.inner, &other.inner).map(wrap).map_err(to_py_err)
    }

    fn __eq__(&self, other: &PySeries) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("PSeries({})", self.inner)
    }
}

#[pymodule]
pub fn pylevelstir(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(stirling_number, m)?)?;
    m.add_function(wrap_pyfunction!(pb2, m)?)?;
    m.add_function(wrap_pyfunction!(pc2, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli2, m)?)?;
    m.add_function(wrap_pyfunction!(frac_part, m)?)?;
    m.add_function(wrap_pyfunction!(vsc, m)?)?;
    m.add_function(wrap_pyfunction!(residue, m)?)?;
    m.add_function(wrap_pyfunction!(congruence_table, m)?)?;
    m.add_function(wrap_pyfunction!(doublesum_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    m.add_class::<StirlingTable>()?;
    m.add_class::<PySeries>()?;
    m.add_class::<VscReport>()?;
    m.add_class::<ResidueTable>()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_mapping() {
        Python::initialize();
        Python::attach(|py| {
            assert!(to_py_err(Error::Pole).is_instance_of::<PyZeroDivisionError>(py));
            assert!(to_py_err(Error::Domain("x".into())).is_instance_of::<PyValueError>(py));
        });
    }
}
