//! Python bindings for the determinant-power coefficient engines.
//!
//! Exposes the exponent matrix type and the main operations: Ψ(m)
//! enumeration, the three coefficient engines, Glynn scans, zero witnesses,
//! and Latin square parity counts. Coefficients come back as Python ints
//! (arbitrary precision); matrices are accepted as `"a,b;c,d"` strings or
//! lists of lists.

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use detpow::{Error, ExponentMatrix, FactorPair, Guards, PsiElement};

fn to_py_err(e: Error) -> PyErr {
    if e.is_guard() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn matrix_from_any(data: &Bound<'_, PyAny>) -> PyResult<ExponentMatrix> {
    if let Ok(text) = data.extract::<String>() {
        return text.parse().map_err(to_py_err);
    }
    let rows: Vec<Vec<u32>> = data.extract()?;
    ExponentMatrix::from_rows(&rows).map_err(to_py_err)
}

fn certified(data: &Bound<'_, PyAny>) -> PyResult<PsiElement> {
    PsiElement::infer(matrix_from_any(data)?).map_err(to_py_err)
}

fn require_order(n: usize) -> PyResult<()> {
    if n == 0 {
        return Err(PyValueError::new_err("order n must be at least 1"));
    }
    Ok(())
}

fn guards(max_monomials: Option<u64>, max_tuples: Option<u64>, max_latin: Option<usize>) -> Guards {
    let mut g = Guards::from_env();
    if let Some(v) = max_monomials {
        g.max_monomials = v;
    }
    if let Some(v) = max_tuples {
        g.max_tuples = v;
    }
    if let Some(v) = max_latin {
        g.max_latin_order = v;
    }
    g
}

/// An n×n matrix of nonnegative integer exponents.
#[pyclass(name = "ExponentMatrix", frozen)]
struct PyExponentMatrix {
    inner: ExponentMatrix,
}

#[pymethods]
impl PyExponentMatrix {
    /// Accepts `"a,b;c,d"` text, a JSON array string, or a list of lists.
    #[new]
    fn new(data: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyExponentMatrix {
            inner: matrix_from_any(data)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.order()
    }

    fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.inner.order())
            .map(|i| self.inner.row(i).to_vec())
            .collect()
    }

    fn text(&self) -> String {
        self.inner.to_string()
    }

    fn row_sums(&self) -> Vec<u32> {
        self.inner.row_sums()
    }

    fn col_sums(&self) -> Vec<u32> {
        self.inner.col_sums()
    }

    fn transpose(&self) -> Self {
        PyExponentMatrix {
            inner: self.inner.transpose(),
        }
    }

    /// The common margin when all row and column sums agree, else None.
    fn margin(&self) -> Option<u32> {
        PsiElement::infer(self.inner.clone())
            .ok()
            .map(|p| p.margin())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("ExponentMatrix(\"{}\")", self.inner)
    }
}

#[pyfunction]
fn factorial(k: u64) -> BigInt {
    detpow::factorial(k)
}

#[pyfunction]
fn multinomial(m: u64, parts: Vec<u64>) -> PyResult<BigInt> {
    detpow::multinomial(m, &parts).map_err(to_py_err)
}

#[pyfunction]
fn matrix_factorial(matrix: &Bound<'_, PyAny>) -> PyResult<BigInt> {
    Ok(detpow::matrix_factorial(&matrix_from_any(matrix)?))
}

#[pyfunction]
fn psi_count(n: usize, m: u32) -> PyResult<u64> {
    require_order(n)?;
    Ok(detpow::psi_count(n, m))
}

/// Ψ(m) as matrix strings, in ascending row-major lexicographic order.
#[pyfunction]
fn psi_list(n: usize, m: u32) -> PyResult<Vec<String>> {
    require_order(n)?;
    Ok(detpow::enumerate_psi(n, m).map(|e| e.to_string()).collect())
}

/// One decomposition: (one-based images, multiplicity) pairs.
type Decomposition = Vec<(Vec<usize>, u32)>;

/// All decompositions of the matrix into margin-many permutation matrices.
#[pyfunction]
fn birkhoff_combinations(matrix: &Bound<'_, PyAny>) -> PyResult<Vec<Decomposition>> {
    let l = certified(matrix)?;
    guards(None, None, None)
        .check_group_order(l.order(), "decomposition enumeration")
        .map_err(to_py_err)?;
    Ok(detpow::enumerate_birkhoff(&l)
        .map(|combo| {
            combo
                .iter()
                .map(|(sigma, k)| (sigma.one_based(), k))
                .collect()
        })
        .collect())
}

/// C_L through the decomposition engine.
#[pyfunction]
fn coefficient(matrix: &Bound<'_, PyAny>) -> PyResult<BigInt> {
    let l = certified(matrix)?;
    guards(None, None, None)
        .check_group_order(l.order(), "coefficient decomposition engine")
        .map_err(to_py_err)?;
    Ok(detpow::coefficient(&l))
}

/// C_L by ordered-tuple brute force (the independent oracle).
#[pyfunction]
#[pyo3(signature = (matrix, max_tuples=None))]
fn coefficient_bruteforce(matrix: &Bound<'_, PyAny>, max_tuples: Option<u64>) -> PyResult<BigInt> {
    let g = guards(None, max_tuples, None);
    detpow::coefficient_bruteforce(&certified(matrix)?, &g).map_err(to_py_err)
}

/// Every nonzero coefficient of (det X)^m as a {matrix string: int} dict.
#[pyfunction]
#[pyo3(signature = (n, m, max_monomials=None))]
fn expand(py: Python<'_>, n: usize, m: u32, max_monomials: Option<u64>) -> PyResult<Py<PyDict>> {
    require_order(n)?;
    let g = guards(max_monomials, None, None);
    let expansion = detpow::expand_det_power(n, m, &g).map_err(to_py_err)?;
    let out = PyDict::new(py);
    for (l, c) in expansion.iter() {
        out.set_item(l.to_string(), c.clone())?;
    }
    Ok(out.unbind())
}

/// Scans Ψ(p-1) for C_L = 0 or L!·C_L ≢ (-1)^n (mod p).
#[pyfunction]
#[pyo3(signature = (n, p, max_monomials=None))]
fn glynn_scan(
    py: Python<'_>,
    n: usize,
    p: u32,
    max_monomials: Option<u64>,
) -> PyResult<Py<PyDict>> {
    require_order(n)?;
    let g = guards(max_monomials, None, None);
    let report = detpow::glynn_scan(n, p, &g).map_err(to_py_err)?;
    let out = PyDict::new(py);
    out.set_item("n", report.n)?;
    out.set_item("p", report.p)?;
    out.set_item("total", report.total)?;
    out.set_item("expected_residue", report.expected_residue)?;
    let violations: Vec<(String, BigInt, u64)> = report
        .violations
        .iter()
        .map(|v| (v.element.to_string(), v.coefficient.clone(), v.residue))
        .collect();
    out.set_item("violations", violations)?;
    out.set_item("passed", report.passed())?;
    Ok(out.unbind())
}

/// All L ∈ Ψ(m) with C_L = 0, as matrix strings.
#[pyfunction]
#[pyo3(signature = (n, m, max_monomials=None))]
fn find_zeros(n: usize, m: u32, max_monomials: Option<u64>) -> PyResult<Vec<String>> {
    require_order(n)?;
    let g = guards(max_monomials, None, None);
    Ok(detpow::find_zeros(n, m, &g)
        .map_err(to_py_err)?
        .iter()
        .map(|z| z.to_string())
        .collect())
}

#[pyfunction]
fn is_prime(k: u64) -> bool {
    detpow::is_prime(k)
}

/// All (a, b) with a ≤ b and (a+1)(b+1) = m+1, ascending by a.
#[pyfunction]
fn factor_pairs(m: u32) -> Vec<(u32, u32)> {
    detpow::factor_pairs(m)
        .iter()
        .map(|p| (p.a(), p.b()))
        .collect()
}

/// The order-n zero-coefficient witness matrix for the factor pair (a, b).
#[pyfunction]
fn build_witness(n: usize, m: u32, a: u32, b: u32) -> PyResult<PyExponentMatrix> {
    let pair = FactorPair::new(m, a, b).map_err(to_py_err)?;
    let witness = detpow::build_witness(n, m, pair).map_err(to_py_err)?;
    Ok(PyExponentMatrix {
        inner: witness.into_matrix(),
    })
}

/// The witness coefficient as the signed difference of two multinomials.
#[pyfunction]
fn witness_closed_form(m: u32, a: u32, b: u32) -> PyResult<BigInt> {
    let pair = FactorPair::new(m, a, b).map_err(to_py_err)?;
    detpow::witness_closed_form(m, pair).map_err(to_py_err)
}

#[pyfunction]
fn witness_multinomials_equal(m: u32, a: u32, b: u32) -> PyResult<bool> {
    let pair = FactorPair::new(m, a, b).map_err(to_py_err)?;
    detpow::witness_multinomials_equal(m, pair).map_err(to_py_err)
}

/// Builds and checks a zero certificate; uses the smallest-a factor pair
/// unless (a, b) is given.
#[pyfunction]
#[pyo3(signature = (n, m, a=None, b=None))]
fn find_zero_certificate(
    py: Python<'_>,
    n: usize,
    m: u32,
    a: Option<u32>,
    b: Option<u32>,
) -> PyResult<Py<PyDict>> {
    guards(None, None, None)
        .check_group_order(n, "witness certification")
        .map_err(to_py_err)?;
    let cert = match (a, b) {
        (Some(a), Some(b)) => {
            let pair = FactorPair::new(m, a, b).map_err(to_py_err)?;
            detpow::zero_certificate_for_pair(n, m, pair).map_err(to_py_err)?
        }
        (None, None) => detpow::find_zero_certificate(n, m).map_err(to_py_err)?,
        _ => return Err(PyValueError::new_err("give both a and b, or neither")),
    };
    let out = PyDict::new(py);
    out.set_item("n", cert.n)?;
    out.set_item("m", cert.m)?;
    out.set_item("a", cert.pair.a())?;
    out.set_item("b", cert.pair.b())?;
    out.set_item("witness", cert.witness.to_string())?;
    out.set_item("engine_value", cert.engine_value.clone())?;
    out.set_item("closed_form_value", cert.closed_form_value.clone())?;
    out.set_item("verified", cert.verified())?;
    Ok(out.unbind())
}

/// Parity of a Latin square over symbols {1..n}: the product of all row and
/// column permutation signs.
#[pyfunction]
fn latin_parity(rows: Vec<Vec<u8>>) -> PyResult<i32> {
    Ok(detpow::LatinSquare::from_rows(&rows)
        .map_err(to_py_err)?
        .parity())
}

/// (els(n), ols(n)) by exhaustive enumeration.
#[pyfunction]
#[pyo3(signature = (n, max_latin_order=None))]
fn count_latin_parities(n: usize, max_latin_order: Option<usize>) -> PyResult<(u64, u64)> {
    let g = guards(None, None, max_latin_order);
    let c = detpow::count_parities(n, &g).map_err(to_py_err)?;
    Ok((c.els, c.ols))
}

/// Checks C_{J_n} = (-1)^{n(n-1)/2} (els(n) - ols(n)).
#[pyfunction]
#[pyo3(signature = (n, max_latin_order=None))]
fn latin_relation(
    py: Python<'_>,
    n: usize,
    max_latin_order: Option<usize>,
) -> PyResult<Py<PyDict>> {
    let g = guards(None, None, max_latin_order);
    let r = detpow::relation_check(n, &g).map_err(to_py_err)?;
    let out = PyDict::new(py);
    out.set_item("n", n)?;
    out.set_item("els", r.counts.els)?;
    out.set_item("ols", r.counts.ols)?;
    out.set_item("diff", r.counts.difference() as i64)?;
    out.set_item("c_jn", r.c_jn.clone())?;
    out.set_item("expected", r.expected.clone())?;
    out.set_item("agree", r.agree())?;
    out.set_item("convention", detpow::latin::PARITY_CONVENTION)?;
    Ok(out.unbind())
}

/// For even n, reports the els/ols difference and whether n+1 is prime.
#[pyfunction]
#[pyo3(signature = (n, max_latin_order=None))]
fn alon_tarsi(py: Python<'_>, n: usize, max_latin_order: Option<usize>) -> PyResult<Py<PyDict>> {
    let g = guards(None, None, max_latin_order);
    let r = detpow::alon_tarsi_check(n, &g).map_err(to_py_err)?;
    let out = PyDict::new(py);
    out.set_item("n", n)?;
    out.set_item("els", r.counts.els)?;
    out.set_item("ols", r.counts.ols)?;
    out.set_item("diff", r.counts.difference() as i64)?;
    out.set_item("nonzero", r.nonzero())?;
    out.set_item("prime_case", r.prime_case)?;
    Ok(out.unbind())
}

#[pymodule]
fn detpow_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyExponentMatrix>()?;
    m.add_function(wrap_pyfunction!(factorial, m)?)?;
    m.add_function(wrap_pyfunction!(multinomial, m)?)?;
    m.add_function(wrap_pyfunction!(matrix_factorial, m)?)?;
    m.add_function(wrap_pyfunction!(psi_count, m)?)?;
    m.add_function(wrap_pyfunction!(psi_list, m)?)?;
    m.add_function(wrap_pyfunction!(birkhoff_combinations, m)?)?;
    m.add_function(wrap_pyfunction!(coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(coefficient_bruteforce, m)?)?;
    m.add_function(wrap_pyfunction!(expand, m)?)?;
    m.add_function(wrap_pyfunction!(glynn_scan, m)?)?;
    m.add_function(wrap_pyfunction!(find_zeros, m)?)?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(factor_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(build_witness, m)?)?;
    m.add_function(wrap_pyfunction!(witness_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(witness_multinomials_equal, m)?)?;
    m.add_function(wrap_pyfunction!(find_zero_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(latin_parity, m)?)?;
    m.add_function(wrap_pyfunction!(count_latin_parities, m)?)?;
    m.add_function(wrap_pyfunction!(latin_relation, m)?)?;
    m.add_function(wrap_pyfunction!(alon_tarsi, m)?)?;
    Ok(())
}
