//! Python bindings. Degrees are lists of ints over the simple roots outside
//! Delta_P; roots are coefficient lists over all simple roots.

use std::sync::Arc;

use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use cascade_lab::cascade::cascade_of;
use cascade_lab::harness::{golden_counts, run_sweep, SweepConfig};
use cascade_lab::minimal::{compute_d_x, enumerate_minimal_degrees, is_minimal_degree, lifting};
use cascade_lab::quasihom::certificate;
use cascade_lab::{Context, Degree, DynkinSpec, Error, RootSystem, SimpleSet};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Usage(_) | Error::Contract(_) => PyValueError::new_err(e.to_string()),
        Error::Resource(_) | Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
    }
}

fn parse_spec(t: &str) -> Result<DynkinSpec, Error> {
    t.parse()
}

fn build(t: &str, parabolic: &[usize]) -> Result<Context, Error> {
    let spec = parse_spec(t)?;
    if let Some(i) = parabolic.iter().find(|&&i| i == 0 || i > spec.rank) {
        return Err(Error::Usage(format!("parabolic index {i} outside 1..{}", spec.rank)));
    }
    let rs = Arc::new(RootSystem::new(spec)?);
    Ok(Context::new(rs, parabolic.iter().map(|i| i - 1).collect::<SimpleSet>()))
}

/// The partial flag variety G/P.
#[pyclass(name = "Flag", module = "cascade_lab_py", frozen)]
struct Flag {
    ctx: Context,
}

impl Flag {
    fn degree(&self, d: Vec<u32>) -> PyResult<Degree> {
        let d = Degree(d);
        self.ctx.check_degree(&d).map_err(py_err)?;
        Ok(d)
    }

    fn roots(&self, roots: &[usize]) -> Vec<Vec<i64>> {
        roots.iter().map(|&k| self.ctx.rs().root(k).to_vec()).collect()
    }
}

#[pymethods]
impl Flag {
    /// Flag("D4", [2]) is D4/P with Delta_P = {alpha_2}; [] means P = B.
    #[new]
    #[pyo3(signature = (dynkin, parabolic = Vec::new()))]
    fn new(dynkin: &str, parabolic: Vec<usize>) -> PyResult<Self> {
        Ok(Flag { ctx: build(dynkin, &parabolic).map_err(py_err)? })
    }

    #[getter]
    fn label(&self) -> String {
        self.ctx.label()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.ctx.dim_x()
    }

    #[getter]
    fn parabolic(&self) -> Vec<usize> {
        self.ctx.parabolic().to_bourbaki()
    }

    fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.ctx.rs().positive_roots().to_vec()
    }

    fn d_x(&self) -> PyResult<Vec<u32>> {
        Ok(compute_d_x(&self.ctx).map_err(py_err)?.0)
    }

    /// Reduced word of z_d^P, e.g. "s2*s1".
    fn z(&self, degree: Vec<u32>) -> PyResult<String> {
        let d = self.degree(degree)?;
        Ok(self.ctx.z_d_p(&d).word_string(self.ctx.rs()))
    }

    fn greedy(&self, degree: Vec<u32>) -> PyResult<Vec<Vec<i64>>> {
        let d = self.degree(degree)?;
        Ok(self.roots(&self.ctx.greedy_decomposition(&d)))
    }

    #[pyo3(signature = (degree = None))]
    fn count_greedy(&self, degree: Option<Vec<u32>>) -> PyResult<BigUint> {
        let d = match degree {
            Some(v) => self.degree(v)?,
            None => compute_d_x(&self.ctx).map_err(py_err)?,
        };
        Ok(self.ctx.count_greedy(&d))
    }

    fn is_minimal(&self, degree: Vec<u32>) -> PyResult<bool> {
        let d = self.degree(degree)?;
        Ok(is_minimal_degree(&self.ctx, &d))
    }

    fn minimal_degrees(&self) -> PyResult<Vec<Vec<u32>>> {
        let pi = enumerate_minimal_degrees(&self.ctx).map_err(py_err)?;
        Ok(pi.into_iter().map(|d| d.0).collect())
    }

    fn lifting(&self, degree: Vec<u32>) -> PyResult<Vec<u32>> {
        let d = self.degree(degree)?;
        Ok(lifting(&self.ctx, &d).map_err(py_err)?.0)
    }

    /// Cascade of the lifting of a minimal degree.
    fn cascade(&self, degree: Vec<u32>) -> PyResult<Vec<Vec<i64>>> {
        let d = self.degree(degree)?;
        let e = if self.ctx.is_borel() { d } else { lifting(&self.ctx, &d).map_err(py_err)? };
        let c = cascade_of(self.ctx.borel(), &e).map_err(py_err)?;
        Ok(self.roots(&c.roots))
    }

    /// Certificate as a JSON string.
    fn certificate(&self, degree: Vec<u32>) -> PyResult<String> {
        let d = self.degree(degree)?;
        let c = certificate(&self.ctx, &d).map_err(py_err)?;
        serde_json::to_string(&c).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!("Flag({})", self.ctx.label())
    }
}

#[pyfunction]
fn weyl_order(dynkin: &str) -> PyResult<u128> {
    Ok(parse_spec(dynkin).map_err(py_err)?.weyl_order())
}

/// Rows (p, r_p, N_p, ok) for D_3..D_8.
#[pyfunction(name = "golden_counts")]
fn py_golden_counts() -> PyResult<Vec<(usize, usize, String, bool)>> {
    let rows = golden_counts().map_err(py_err)?;
    Ok(rows.into_iter().map(|r| (r.p, r.r, r.n, r.ok)).collect())
}

/// Run a verification sweep over one type and return the JSON report.
#[pyfunction]
#[pyo3(signature = (dynkin, checks = Vec::new()))]
fn verify(py: Python<'_>, dynkin: &str, checks: Vec<String>) -> PyResult<String> {
    let spec = parse_spec(dynkin).map_err(py_err)?;
    let mut cfg = SweepConfig::new(vec![spec]);
    cfg.checks = checks;
    let report = py.allow_threads(|| run_sweep(&cfg)).map_err(py_err)?;
    serde_json::to_string(&report).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pymodule]
fn cascade_lab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Flag>()?;
    m.add_function(wrap_pyfunction!(weyl_order, m)?)?;
    m.add_function(wrap_pyfunction!(py_golden_counts, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_checks_indices() {
        assert!(build("A3", &[1, 3]).is_ok());
        assert!(matches!(build("A3", &[4]), Err(Error::Usage(_))));
        assert!(matches!(build("A3", &[0]), Err(Error::Usage(_))));
        assert!(build("Q2", &[]).is_err());
        assert_eq!(build("D4", &[2]).unwrap().label(), "D4/P={2}");
    }
}
