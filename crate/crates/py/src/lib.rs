//! Python bindings: thin wrappers over the exact counting library.
//!
//! Field elements cross the boundary as their integer encodings, so a
//! value in F_{p^k} is the integer Σ cᵢ pⁱ built from its coordinates;
//! all arithmetic stays in Rust. Library errors surface as ValueError.

use curvecount::charsums::CubicCoeffs;
use curvecount::extremal::{
    certify as run_certify, classify_cubic, classify_quartic, PlaneFermatLike,
};
use curvecount::families::FamilySpec;
use curvecount::field::{Extension, FieldCtx, FieldElement};
use curvecount::frobenius::{trace_general, TraceStrategy};
use curvecount::oracle::{count_total, DEFAULT_BUDGET};
use curvecount::Error;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite field F_{p^k} of odd characteristic.
#[pyclass]
struct Field {
    ctx: FieldCtx,
}

impl Field {
    fn decode(&self, enc: u64) -> PyResult<FieldElement> {
        self.ctx.from_encoding(enc).map_err(err)
    }
}

#[pymethods]
impl Field {
    #[new]
    #[pyo3(signature = (p, k = 1))]
    fn new(p: u64, k: u32) -> PyResult<Self> {
        Ok(Self {
            ctx: FieldCtx::new(p, k).map_err(err)?,
        })
    }

    fn size(&self) -> u64 {
        self.ctx.size()
    }

    fn characteristic(&self) -> u64 {
        self.ctx.characteristic()
    }

    fn extension_degree(&self) -> u32 {
        self.ctx.extension_degree()
    }

    /// Encoding of the fixed multiplicative generator.
    fn generator(&self) -> u64 {
        self.ctx.generator().encoding()
    }

    /// Coefficients of the monic modulus polynomial, ascending degree.
    fn modulus(&self) -> Vec<u64> {
        self.ctx.modulus_coeffs().to_vec()
    }

    /// Encoding of the prime-subfield constant `value` (reduced mod p).
    fn element(&self, value: i64) -> u64 {
        self.ctx.element(value).encoding()
    }

    fn add(&self, x: u64, y: u64) -> PyResult<u64> {
        Ok(self.ctx.add(self.decode(x)?, self.decode(y)?).encoding())
    }

    fn sub(&self, x: u64, y: u64) -> PyResult<u64> {
        Ok(self.ctx.sub(self.decode(x)?, self.decode(y)?).encoding())
    }

    fn mul(&self, x: u64, y: u64) -> PyResult<u64> {
        Ok(self.ctx.mul(self.decode(x)?, self.decode(y)?).encoding())
    }

    fn div(&self, x: u64, y: u64) -> PyResult<u64> {
        Ok(self
            .ctx
            .div(self.decode(x)?, self.decode(y)?)
            .map_err(err)?
            .encoding())
    }

    fn neg(&self, x: u64) -> PyResult<u64> {
        Ok(self.ctx.neg(self.decode(x)?).encoding())
    }

    fn inv(&self, x: u64) -> PyResult<u64> {
        Ok(self.ctx.inv(self.decode(x)?).map_err(err)?.encoding())
    }

    fn pow(&self, x: u64, e: u64) -> PyResult<u64> {
        Ok(self.ctx.pow(self.decode(x)?, e).encoding())
    }

    /// Index of x with respect to the fixed generator.
    fn dlog(&self, x: u64) -> PyResult<u64> {
        self.ctx.dlog(self.decode(x)?).map_err(err)
    }
}

/// Trace of Frobenius of y² = ax³ + bx² + cx + d over F_p.
#[pyfunction]
fn trace(p: u64, a: i64, b: i64, c: i64, d: i64) -> PyResult<i64> {
    let ctx = FieldCtx::new(p, 1).map_err(err)?;
    let f = CubicCoeffs::from_ints(&ctx, a, b, c, d).map_err(err)?;
    Ok(trace_general(&ctx, &f, TraceStrategy::Auto)
        .map_err(err)?
        .trace())
}

/// Closed-form N_n for a family over F_{p^k}, one (label, count) pair
/// per curve the family tag describes; coefficients are integers
/// reduced into the prime subfield.
#[pyfunction]
#[pyo3(signature = (family, coeffs, p, k = 1, n = 1, char_order = None))]
fn count(
    family: &str,
    coeffs: Vec<i64>,
    p: u64,
    k: u32,
    n: u32,
    char_order: Option<u32>,
) -> PyResult<Vec<(Option<String>, u128)>> {
    let ctx = FieldCtx::new(p, k).map_err(err)?;
    let specs = FamilySpec::parse(&ctx, family, &coeffs, char_order).map_err(err)?;
    specs
        .iter()
        .map(|spec| {
            let n_points = spec.closed_count(&ctx, n).map_err(err)?.value;
            Ok((spec.curve_label().map(str::to_owned), n_points))
        })
        .collect()
}

/// Brute-force N_n for a family over F_{p^k}, same shape as `count`.
#[pyfunction]
#[pyo3(signature = (family, coeffs, p, k = 1, n = 1, char_order = None, budget = None))]
#[allow(clippy::too_many_arguments)]
fn oracle_count(
    family: &str,
    coeffs: Vec<i64>,
    p: u64,
    k: u32,
    n: u32,
    char_order: Option<u32>,
    budget: Option<u64>,
) -> PyResult<Vec<(Option<String>, u128)>> {
    let ctx = FieldCtx::new(p, k).map_err(err)?;
    let ext = Extension::new(&ctx, n).map_err(err)?;
    let specs = FamilySpec::parse(&ctx, family, &coeffs, char_order).map_err(err)?;
    specs
        .iter()
        .map(|spec| {
            let n_points = count_total(spec, &ext, budget.unwrap_or(DEFAULT_BUDGET))
                .map_err(err)?
                .value;
            Ok((spec.curve_label().map(str::to_owned), n_points))
        })
        .collect()
}

/// Predicted Hasse-Weil status of ax^d + by^d + cz^d = 0 over F_{p^{2n}}:
/// "Maximal", "Minimal", or "Neither".
#[pyfunction]
#[pyo3(signature = (degree, p, a, b, c, n = 1))]
fn classify(degree: u32, p: u64, a: i64, b: i64, c: i64, n: u32) -> PyResult<String> {
    let curve = PlaneFermatLike::new(degree, p, a, b, c).map_err(err)?;
    let verdict = match degree {
        3 => classify_cubic(&curve, n),
        _ => classify_quartic(&curve, n),
    }
    .map_err(err)?;
    Ok(verdict.kind.to_string())
}

/// Classification of ax^d + by^d + cz^d = 0 certified by exact count.
#[pyfunction]
#[pyo3(signature = (degree, p, a, b, c, n = 1, budget = None))]
#[allow(clippy::too_many_arguments)]
fn certify(
    py: Python<'_>,
    degree: u32,
    p: u64,
    a: i64,
    b: i64,
    c: i64,
    n: u32,
    budget: Option<u64>,
) -> PyResult<Py<PyDict>> {
    let curve = PlaneFermatLike::new(degree, p, a, b, c).map_err(err)?;
    let report = run_certify(&curve, n, budget.unwrap_or(DEFAULT_BUDGET)).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("verdict", report.verdict.kind.to_string())?;
    out.set_item("predicted", report.predicted.to_string())?;
    out.set_item("count", report.count)?;
    out.set_item("interval", report.interval)?;
    out.set_item("agrees", report.agrees)?;
    out.set_item("over", report.verdict.over)?;
    Ok(out.into())
}

#[pymodule]
fn curvecount_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_function(wrap_pyfunction!(trace, m)?)?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_count, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    Ok(())
}
