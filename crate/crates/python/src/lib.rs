use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use lg_periods::expr::parse_polynomial;
use lg_periods::frobenius;
use lg_periods::mutation::{self, MutationData, MutationOutcome};
use lg_periods::oracles::{reference_potential, reference_quantum_period, ReferenceSpace};
use lg_periods::period::classical_period as period;
use lg_periods::{LaurentPoly, Rational};

fn err(e: lg_periods::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fractions<'py>(py: Python<'py>, values: &[Rational]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    values
        .iter()
        .map(|c| fraction.call1((c.numer().clone(), c.denom().clone())))
        .collect()
}

/// Sparse Laurent polynomial with exact rational coefficients.
#[pyclass(
    name = "LaurentPolynomial",
    module = "lgperiods",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyLaurent {
    inner: LaurentPoly<Rational>,
}

#[pymethods]
impl PyLaurent {
    /// Parse an expression such as `"x + y + x^-1*y^-1"`.
    #[new]
    #[pyo3(signature = (text, rank=None))]
    fn new(text: &str, rank: Option<usize>) -> PyResult<Self> {
        parse_polynomial(text, rank)
            .map(|inner| Self { inner })
            .map_err(err)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LaurentPolynomial('{}')", self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.inner
            .add(&other.inner)
            .map(|inner| Self { inner })
            .map_err(err)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.inner
            .sub(&other.inner)
            .map(|inner| Self { inner })
            .map_err(err)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.inner
            .mul(&other.inner)
            .map(|inner| Self { inner })
            .map_err(err)
    }

    fn __neg__(&self) -> Self {
        Self {
            inner: self.inner.neg(),
        }
    }

    fn __pow__(&self, exponent: u32, _modulo: Option<u32>) -> Self {
        Self {
            inner: self.inner.pow(exponent),
        }
    }

    fn constant_term<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        Ok(fractions(py, &[self.inner.constant_term()])?.remove(0))
    }

    /// `[c_0, ..., c_D]` as `fractions.Fraction` values.
    fn period<'py>(&self, py: Python<'py>, degree: usize) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, period(&self.inner, degree).entries())
    }
}

/// Period sequence of a polynomial or expression string.
#[pyfunction]
fn classical_period<'py>(
    py: Python<'py>,
    potential: &Bound<'py, PyAny>,
    degree: usize,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let poly = match potential.cast::<PyLaurent>() {
        Ok(p) => p.get().inner.clone(),
        Err(_) => parse_polynomial(&potential.extract::<String>()?, None).map_err(err)?,
    };
    fractions(py, period(&poly, degree).entries())
}

/// True when the reference space's quantum period equals its potential's
/// period to the given degree.
#[pyfunction]
fn verify(space: &str, degree: usize) -> PyResult<bool> {
    let space: ReferenceSpace = space.parse().map_err(err)?;
    let quantum = reference_quantum_period(space, degree).map_err(err)?;
    Ok(quantum == period(&reference_potential(space), degree))
}

#[pyfunction]
fn multinomial(d: u32, parts: Vec<u32>) -> PyResult<BigInt> {
    if parts.is_empty() {
        return Err(PyValueError::new_err("at least one part is required"));
    }
    frobenius::multinomial(d, &frobenius::SPartition::new(parts))
        .map(BigInt::from)
        .map_err(err)
}

#[pyfunction]
fn enumerate_s_partitions(d: u32, s: usize) -> PyResult<Vec<Vec<u32>>> {
    if s == 0 {
        return Err(PyValueError::new_err("s must be positive"));
    }
    Ok(frobenius::enumerate_s_partitions(d, s)
        .into_iter()
        .map(|p| p.parts().to_vec())
        .collect())
}

/// The mutated polynomial, or None when `h` does not divide a negative level.
/// A lower-rank `h` is embedded into the rank of `f`.
#[pyfunction]
fn mutate(f: &PyLaurent, w: Vec<i64>, h: &PyLaurent) -> PyResult<Option<PyLaurent>> {
    let h = if h.inner.rank() < f.inner.rank() {
        h.inner.embed(f.inner.rank()).map_err(err)?
    } else {
        h.inner.clone()
    };
    let data = MutationData::new(w, h).map_err(err)?;
    Ok(match mutation::mutate(&f.inner, &data).map_err(err)? {
        MutationOutcome::Mutated(inner) => Some(PyLaurent { inner }),
        MutationOutcome::NotMutable { .. } => None,
    })
}

#[pymodule]
fn lgperiods(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLaurent>()?;
    m.add_function(wrap_pyfunction!(classical_period, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(multinomial, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_s_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(mutate, m)?)?;
    Ok(())
}
