use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use tiltlab::schur::decomp::decomposition_row as row;
use tiltlab::schur::Engine;
use tiltlab::tilting::TmcOptions;
use tiltlab::weights::DominantWeight;
use tiltlab::{Error, Partition};

create_exception!(tiltlab_py, GuardError, PyRuntimeError);

fn err(e: Error) -> PyErr {
    if e.is_guard() {
        GuardError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn part(v: Vec<u32>) -> PyResult<Partition> {
    Partition::new(v).map_err(err)
}

fn factors(m: impl IntoIterator<Item = (Partition, u64)>) -> Vec<(Vec<u32>, u64)> {
    m.into_iter().map(|(mu, k)| (mu.into_parts(), k)).collect()
}

/// Shared memo of modules and characters.
#[pyclass(frozen)]
struct Session {
    engine: Engine,
}

#[pymethods]
impl Session {
    #[new]
    fn new() -> Self {
        Session { engine: Engine::default() }
    }

    /// [∇(λ):L(μ)] over GL_n as a list of (μ, multiplicity), ascending.
    fn decomposition_row(&self, py: Python<'_>, lam: Vec<u32>, n: usize, p: u32) -> PyResult<Vec<(Vec<u32>, u64)>> {
        let lam = part(lam)?;
        let r = py.allow_threads(|| row(&self.engine, &lam, n, p)).map_err(err)?;
        Ok(factors(r))
    }

    /// Composition factors of G^m_n(L(σ)) and its dimension inside ∇(σ).
    fn inverse_simple<'py>(&self, py: Python<'py>, sigma: Vec<u32>, n: usize, m: usize, p: u32) -> PyResult<Bound<'py, PyDict>> {
        let sigma = part(sigma)?;
        let r = py.allow_threads(|| tiltlab::functor::inverse_simple(&self.engine, &sigma, n, m, p)).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("factors", factors(r.factor_map()))?;
        d.set_item("submodule_dim", r.submodule_dim)?;
        d.set_item("nabla_dim", r.nabla_dim)?;
        Ok(d)
    }

    /// The S(n, d)-socle of T(μ), ascending.
    fn tilting_socle(&self, py: Python<'_>, mu: Vec<u32>, n: usize, p: u32) -> PyResult<Vec<(Vec<u32>, u64)>> {
        let mu = part(mu)?;
        let r = py.allow_threads(|| tiltlab::tilting::tilting_socle(&self.engine, &mu, n, p)).map_err(err)?;
        Ok(factors(r.socle_map()))
    }

    /// TMC verdict for a restricted SL_n weight given in fundamental coordinates.
    fn tmc_check_weight<'py>(&self, py: Python<'py>, weight: Vec<u32>, p: u32) -> PyResult<Bound<'py, PyDict>> {
        let w = DominantWeight::new(weight);
        let v = py.allow_threads(|| tiltlab::tilting::tmc_check_weight(&self.engine, &w, p, TmcOptions::default())).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("holds", v.holds)?;
        d.set_item("hat", v.hat.into_parts())?;
        d.set_item("pivot", v.pivot.into_parts())?;
        d.set_item("degree", v.d)?;
        d.set_item("witness", v.witness.into_iter().map(|w| (w.sigma.into_parts(), w.mult)).collect::<Vec<_>>())?;
        Ok(d)
    }

    /// Labels σ whose recomputed S(4,12), p = 3 data differ from the shipped fixture.
    fn appendix_mismatches(&self, py: Python<'_>) -> PyResult<Vec<Vec<u32>>> {
        let report = py
            .allow_threads(|| {
                let corpus = tiltlab::fixtures::FixtureCorpus::appendix()?;
                tiltlab::fixtures::reproduce_appendix(&self.engine, &corpus)
            })
            .map_err(err)?;
        Ok(report.mismatches().map(|e| e.sigma.clone().into_parts()).collect())
    }
}

#[pyfunction]
fn mullineux(lam: Vec<u32>, p: u32) -> PyResult<Vec<u32>> {
    Ok(tiltlab::mullineux::mullineux(&part(lam)?, p).map_err(err)?.into_parts())
}

#[pyfunction]
fn mullineux_conjugate(lam: Vec<u32>, p: u32) -> PyResult<Vec<u32>> {
    Ok(tiltlab::mullineux::mullineux_conjugate(&part(lam)?, p).map_err(err)?.into_parts())
}

#[pyfunction]
fn weight_to_partition(weight: Vec<u32>) -> Vec<u32> {
    tiltlab::weights::weight_to_partition(&DominantWeight::new(weight)).into_parts()
}

#[pyfunction]
fn partition_to_weight(mu: Vec<u32>, n: usize) -> PyResult<Vec<u32>> {
    Ok(tiltlab::weights::partition_to_weight(&part(mu)?, n).map_err(err)?.coords)
}

#[pyfunction]
fn premet_criterion(lam: u32, p: u32) -> bool {
    tiltlab::rank_one::premet_criterion(lam, p)
}

#[pyfunction]
fn sl2_costandard_indecomposable(lam: u32, p: u32) -> PyResult<bool> {
    tiltlab::rank_one::sl2_costandard_g1t_indecomposable(lam, p).map_err(err)
}

#[pyfunction]
fn andersen_haboush_check(n: usize, p: u32, r: u32, gamma: Vec<u32>) -> PyResult<bool> {
    tiltlab::rank_one::andersen_haboush_check(n, p, r, &DominantWeight::new(gamma)).map_err(err)
}

#[pymodule]
fn tiltlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Session>()?;
    m.add("GuardError", m.py().get_type::<GuardError>())?;
    m.add_function(wrap_pyfunction!(mullineux, m)?)?;
    m.add_function(wrap_pyfunction!(mullineux_conjugate, m)?)?;
    m.add_function(wrap_pyfunction!(weight_to_partition, m)?)?;
    m.add_function(wrap_pyfunction!(partition_to_weight, m)?)?;
    m.add_function(wrap_pyfunction!(premet_criterion, m)?)?;
    m.add_function(wrap_pyfunction!(sl2_costandard_indecomposable, m)?)?;
    m.add_function(wrap_pyfunction!(andersen_haboush_check, m)?)?;
    Ok(())
}
