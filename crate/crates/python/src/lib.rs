//! Python bindings: the main bound functions, the equality predictions,
//! the dimension-count comparison, and the sparse-polynomial oracle.

use multizero_core::closed;
use multizero_core::dbound;
use multizero_core::field::PrimeField;
use multizero_core::linear::{self, HBoundOutcome};
use multizero_core::poly;
use multizero_core::pw;
use multizero_core::query::BoundQuery;
use multizero_core::Error as CoreError;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: CoreError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn query(exponents: Vec<u32>, r: u32, sizes: Vec<u32>) -> PyResult<BoundQuery> {
    BoundQuery::new(exponents, r, sizes).map_err(err)
}

/// Recursive upper bound on the number of grid points of multiplicity >= r.
#[pyfunction]
fn d_bound(exponents: Vec<u32>, r: u32, sizes: Vec<u32>) -> PyResult<u64> {
    Ok(dbound::d_bound(&query(exponents, r, sizes)?)
        .map_err(err)?
        .value())
}

/// Constructive lower bound attained by products of univariate linear
/// terms: `(count, witness)` or `None` when no such product has the exact
/// leading monomial.
#[pyfunction]
fn h_bound(exponents: Vec<u32>, r: u32, sizes: Vec<u32>) -> PyResult<Option<(u64, Vec<Vec<u32>>)>> {
    match linear::h_bound(&query(exponents, r, sizes)?).map_err(err)? {
        HBoundOutcome::Attained { count, witness } => {
            Ok(Some((count.value(), witness.per_variable().to_vec())))
        }
        HBoundOutcome::NoExactProduct { .. } => Ok(None),
    }
}

/// Baseline count `floor((i_1 s_2..s_m + ... + s_1..s_{m-1} i_m) / r)`.
#[pyfunction]
fn sz_gen_bound(exponents: Vec<u32>, r: u32, sizes: Vec<u32>) -> PyResult<u64> {
    Ok(dbound::sz_gen_bound(&query(exponents, r, sizes)?)
        .map_err(err)?
        .value())
}

/// True when every grid point can carry multiplicity r simultaneously.
#[pyfunction]
fn trivial_full_grid(exponents: Vec<u32>, r: u32, sizes: Vec<u32>) -> PyResult<bool> {
    Ok(dbound::trivial_full_grid(&query(exponents, r, sizes)?))
}

/// Multiplicity-1 count `s_1..s_m - (s_1 - i_1)..(s_m - i_m)`.
#[pyfunction]
fn footprint_bound(exponents: Vec<u32>, sizes: Vec<u32>) -> PyResult<u64> {
    Ok(closed::footprint_bound(&exponents, &sizes)
        .map_err(err)?
        .value())
}

/// Closed two-variable bound: `((numerator, denominator), case)`.
#[pyfunction]
fn two_var_upper(i1: u32, i2: u32, r: u32, s1: u32, s2: u32) -> PyResult<((i128, i128), String)> {
    let (value, case) = closed::two_var_upper(i1, i2, r, s1, s2).map_err(err)?;
    Ok(((value.numerator(), value.denominator()), case.to_string()))
}

#[pyfunction]
fn condition_a_holds(exponents: Vec<u32>, r: u32, sizes: Vec<u32>) -> PyResult<bool> {
    closed::condition_a_holds(&query(exponents, r, sizes)?).map_err(err)
}

/// Product-form bound `s_1..s_m - prod (s_j - i_j/r)` under condition A,
/// as `(numerator, denominator)`.
#[pyfunction]
fn small_exponent_bound(exponents: Vec<u32>, r: u32, sizes: Vec<u32>) -> PyResult<(i128, i128)> {
    let value = closed::small_exponent_bound(&query(exponents, r, sizes)?).map_err(err)?;
    Ok((value.numerator(), value.denominator()))
}

/// Predicted common value of the two bounds, when a proven equality rule
/// applies: `(value, rule)` or `None`.
#[pyfunction]
fn equality_prediction(
    exponents: Vec<u32>,
    r: u32,
    sizes: Vec<u32>,
) -> PyResult<Option<(u64, String)>> {
    Ok(linear::equality_prediction(&query(exponents, r, sizes)?)
        .map_err(err)?
        .map(|(v, rule)| (v.value(), rule.to_string())))
}

/// Dimension-count bound over `F_q^m` for total degree `d < q*r`, as
/// `(numerator, denominator)`.
#[pyfunction]
fn gamma1(q: u64, r: u64, m: u64, d: u64) -> PyResult<(i128, i128)> {
    let value = pw::gamma1(&pw::PWQuery::new(q, r, m, d).map_err(err)?).map_err(err)?;
    Ok((value.numerator(), value.denominator()))
}

/// Multiplicity count `d q^(m-1) / r`, as `(numerator, denominator)`.
#[pyfunction]
fn gamma2(q: u64, r: u64, m: u64, d: u64) -> PyResult<(i128, i128)> {
    let value = pw::gamma2(&pw::PWQuery::new(q, r, m, d).map_err(err)?).map_err(err)?;
    Ok((value.numerator(), value.denominator()))
}

/// True when the dimension-count bound dominates the multiplicity count
/// for every degree in `[0, rq-1]` and the endpoint equalities hold.
#[pyfunction]
fn dominance_holds(q: u64, r: u64, m: u64) -> PyResult<bool> {
    Ok(pw::dominance_sweep(q, r, m).map_err(err)?.ok())
}

/// Sparse multivariate polynomial over a prime field.
#[pyclass(name = "SparsePoly")]
struct PySparsePoly {
    inner: poly::SparsePolynomial,
}

#[pymethods]
impl PySparsePoly {
    /// Builds a polynomial from `(exponent_vector, coefficient)` pairs.
    #[new]
    fn new(p: u64, num_vars: usize, terms: Vec<(Vec<u32>, u64)>) -> PyResult<Self> {
        let field = PrimeField::new(p).map_err(err)?;
        let inner = poly::SparsePolynomial::from_terms(field, num_vars, terms).map_err(err)?;
        Ok(PySparsePoly { inner })
    }

    fn __repr__(&self) -> String {
        format!(
            "SparsePoly(p={}, vars={}, terms={})",
            self.inner.field().characteristic(),
            self.inner.num_vars(),
            self.inner.num_terms()
        )
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    fn terms(&self) -> Vec<(Vec<u32>, u64)> {
        self.inner.terms().map(|(e, c)| (e.to_vec(), c)).collect()
    }

    /// Exponent vector maximal in the lexicographic order (first variable
    /// most significant).
    fn leading_monomial(&self) -> PyResult<Vec<u32>> {
        Ok(self.inner.leading_monomial().map_err(err)?.to_vec())
    }

    fn eval(&self, point: Vec<u64>) -> PyResult<u64> {
        self.inner.eval(&point).map_err(err)
    }

    fn hasse_derivative(&self, k: Vec<u32>) -> PyResult<PySparsePoly> {
        Ok(PySparsePoly {
            inner: self.inner.hasse_derivative(&k).map_err(err)?,
        })
    }

    /// Multiplicity at a point; `None` encodes infinity (zero polynomial).
    fn multiplicity_at(&self, point: Vec<u64>) -> PyResult<Option<u32>> {
        Ok(self.inner.multiplicity_at(&point).map_err(err)?.finite())
    }

    /// Exact number of points of `sets[0] x ... x sets[m-1]` with
    /// multiplicity at least `r`.
    fn count_zeros_with_min_mult(&self, sets: Vec<Vec<u64>>, r: u32) -> PyResult<u64> {
        let grid = poly::GridSpec::new(sets).map_err(err)?;
        Ok(poly::count_zeros_with_min_mult(&self.inner, &grid, r)
            .map_err(err)?
            .value())
    }

    /// Sum of multiplicities over the grid.
    fn total_multiplicity_sum(&self, sets: Vec<Vec<u64>>) -> PyResult<u64> {
        let grid = poly::GridSpec::new(sets).map_err(err)?;
        poly::total_multiplicity_sum(&self.inner, &grid).map_err(err)
    }
}

/// Random polynomial with the given leading monomial: coefficient 1 on
/// `lm`, uniform coefficients below it inside the cap box. Deterministic
/// for a fixed seed.
#[pyfunction]
fn random_poly_with_lm(
    lm: Vec<u32>,
    p: u64,
    support_cap: Vec<u32>,
    seed: u64,
) -> PyResult<PySparsePoly> {
    let field = PrimeField::new(p).map_err(err)?;
    Ok(PySparsePoly {
        inner: poly::random_poly_with_lm(&lm, &field, &support_cap, seed).map_err(err)?,
    })
}

#[pymodule]
fn multizero(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(d_bound, m)?)?;
    m.add_function(wrap_pyfunction!(h_bound, m)?)?;
    m.add_function(wrap_pyfunction!(sz_gen_bound, m)?)?;
    m.add_function(wrap_pyfunction!(trivial_full_grid, m)?)?;
    m.add_function(wrap_pyfunction!(footprint_bound, m)?)?;
    m.add_function(wrap_pyfunction!(two_var_upper, m)?)?;
    m.add_function(wrap_pyfunction!(condition_a_holds, m)?)?;
    m.add_function(wrap_pyfunction!(small_exponent_bound, m)?)?;
    m.add_function(wrap_pyfunction!(equality_prediction, m)?)?;
    m.add_function(wrap_pyfunction!(gamma1, m)?)?;
    m.add_function(wrap_pyfunction!(gamma2, m)?)?;
    m.add_function(wrap_pyfunction!(dominance_holds, m)?)?;
    m.add_function(wrap_pyfunction!(random_poly_with_lm, m)?)?;
    m.add_class::<PySparsePoly>()?;
    Ok(())
}
