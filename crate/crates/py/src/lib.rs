//! Python bindings. Reports are returned as plain dicts (their JSON form);
//! tableaux and networks as lists of ints.

use pyo3::exceptions::{PyIOError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

use osplpp::densities::{density_v_recursive, pu4_closed_form, HypoexpSpec, PathDensity, PathModel};
use osplpp::edelman_greene::{eg_inverse_search, eg_map, schuetzenberger_step};
use osplpp::genfun::{term_table_f, term_table_g, verify_identity as core_verify_identity, IdentityMethod, RationalFunction};
use osplpp::processes::{ks_two_sample, sample_vectors as core_sample_vectors, sample_vw_pairs, Model};
use osplpp::rsk::{burge as core_burge, lpp_tableau as core_lpp, rsk as core_rsk, thm22_report, OracleLaw};
use osplpp::shapes::{count_syt as core_count_syt, enumerate_syt, tableau_params};
use osplpp::sortnet::{enumerate_sorting_networks, network_params};
use osplpp::{Error, Permutation, Tableau, TestReport, YoungDiagram};

fn err(e: Error) -> PyErr {
    match e {
        Error::Io(m) => PyIOError::new_err(m),
        Error::NotFound(m) => PyRuntimeError::new_err(m),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn report_dict<'py>(py: Python<'py>, r: &TestReport) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(r).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "SortingNetwork", module = "osplpp", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySortingNetwork(osplpp::SortingNetwork);

#[pymethods]
impl PySortingNetwork {
    #[new]
    fn new(swaps: Vec<usize>) -> PyResult<Self> {
        osplpp::SortingNetwork::from_swaps(swaps).map(Self).map_err(err)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn swaps(&self) -> Vec<usize> {
        self.0.swaps().to_vec()
    }

    /// `(last, pi, deg)` with `pi` in one-line notation.
    fn params(&self) -> (Vec<u32>, Vec<usize>, Vec<u32>) {
        let p = network_params(&self.0);
        (p.last, p.pi.into_vec(), p.deg)
    }

    /// The staircase tableau mapped to this network by Edelman–Greene.
    fn to_tableau(&self) -> PyResult<PyStandardTableau> {
        eg_inverse_search(&self.0).map(PyStandardTableau).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SortingNetwork([{}])", self.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

#[pyclass(name = "StandardTableau", module = "osplpp", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyStandardTableau(osplpp::StandardTableau);

#[pymethods]
impl PyStandardTableau {
    #[new]
    fn new(rows: Vec<Vec<u32>>) -> PyResult<Self> {
        osplpp::StandardTableau::from_rows(rows).map(Self).map_err(err)
    }

    #[getter]
    fn rows(&self) -> Vec<Vec<u32>> {
        self.0.tableau().rows().to_vec()
    }

    #[getter]
    fn shape(&self) -> Vec<usize> {
        self.0.shape().rows().to_vec()
    }

    /// `(cor, sigma, deg)` for a staircase tableau.
    fn params(&self) -> PyResult<(Vec<u32>, Vec<usize>, Vec<u32>)> {
        let p = tableau_params(&self.0).map_err(err)?;
        Ok((p.cor, p.sigma.into_vec(), p.deg))
    }

    fn schuetzenberger(&self) -> Self {
        Self(schuetzenberger_step(&self.0))
    }

    fn edelman_greene(&self) -> PyResult<PySortingNetwork> {
        eg_map(&self.0).map(PySortingNetwork).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("StandardTableau({:?})", self.0.tableau().rows())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

/// Number of standard tableaux of the staircase of order `n`.
#[pyfunction]
fn count_syt(n: usize) -> PyResult<u128> {
    Ok(core_count_syt(&YoungDiagram::staircase(n).map_err(err)?))
}

#[pyfunction]
fn sorting_networks(n: usize) -> PyResult<Vec<PySortingNetwork>> {
    if !(2..=6).contains(&n) {
        return Err(PyValueError::new_err(format!("order {n} outside 2..=6")));
    }
    Ok(enumerate_sorting_networks(n).map(PySortingNetwork).collect())
}

#[pyfunction]
fn staircase_tableaux(n: usize) -> PyResult<Vec<PyStandardTableau>> {
    if !(2..=6).contains(&n) {
        return Err(PyValueError::new_err(format!("order {n} outside 2..=6")));
    }
    Ok(enumerate_syt(&YoungDiagram::staircase(n).map_err(err)?).map(PyStandardTableau).collect())
}

fn tableau(rows: Vec<Vec<f64>>) -> PyResult<Tableau<f64>> {
    Tableau::from_rows(rows).map_err(err)
}

#[pyfunction]
fn rsk(rows: Vec<Vec<f64>>) -> PyResult<Vec<Vec<f64>>> {
    Ok(core_rsk(&tableau(rows)?).rows().to_vec())
}

#[pyfunction]
fn burge(rows: Vec<Vec<f64>>) -> PyResult<Vec<Vec<f64>>> {
    Ok(core_burge(&tableau(rows)?).rows().to_vec())
}

#[pyfunction]
fn lpp_tableau(rows: Vec<Vec<f64>>) -> PyResult<Vec<Vec<f64>>> {
    Ok(core_lpp(&tableau(rows)?).rows().to_vec())
}

#[pyfunction]
#[pyo3(signature = (n, method = "canonical", points = 20, seed = 1, workers = 1))]
fn verify_identity<'py>(
    py: Python<'py>,
    n: usize,
    method: &str,
    points: usize,
    seed: u64,
    workers: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let method = match method {
        "canonical" => IdentityMethod::Canonical,
        "evaluation" => IdentityMethod::Evaluation { points, seed },
        other => return Err(PyValueError::new_err(format!("method {other:?}"))),
    };
    let r = py.detach(|| core_verify_identity(n, method, workers)).map_err(err)?;
    report_dict(py, &r)
}

/// The `pi`-components of both generating functions as printed rational
/// functions.
#[pyfunction]
fn identity_component(n: usize, pi: Vec<usize>) -> PyResult<(String, String)> {
    let p = Permutation::new(pi).map_err(err)?;
    let f = RationalFunction::from_form(&term_table_f(n).map_err(err)?.component(&p));
    let g = RationalFunction::from_form(&term_table_g(n).map_err(err)?.component(&p));
    Ok((f.to_string(), g.to_string()))
}

#[pyfunction]
#[pyo3(signature = (shape, bernoulli = false, p = "1/2", support = 0, cap = 4))]
fn thm22<'py>(
    py: Python<'py>,
    shape: Vec<usize>,
    bernoulli: bool,
    p: &str,
    support: u64,
    cap: i64,
) -> PyResult<Bound<'py, PyAny>> {
    let shape = YoungDiagram::new(shape).map_err(err)?;
    let law = if bernoulli {
        OracleLaw::BernoulliUniform
    } else {
        let p = p.parse().map_err(|e| PyValueError::new_err(format!("p={p:?}: {e}")))?;
        OracleLaw::Geometric { p, support }
    };
    report_dict(py, &thm22_report(&shape, &law, cap).map_err(err)?)
}

fn model(name: &str) -> PyResult<Model> {
    Ok(match name {
        "osp" => Model::Osp,
        "osp-clocks" => Model::OspClocks,
        "growth" => Model::CornerGrowth,
        "lpp-v" => Model::LppV,
        "lpp-w" => Model::LppW,
        other => return Err(PyValueError::new_err(format!("model {other:?}"))),
    })
}

/// One vector per replica: `U_n` for osp, `V_n` for growth and lpp-v,
/// `W_n` for lpp-w.
#[pyfunction]
#[pyo3(signature = (model_name, n, replicas, seed = 1, workers = 1))]
fn sample_vectors(py: Python<'_>, model_name: &str, n: usize, replicas: usize, seed: u64, workers: usize) -> PyResult<Vec<Vec<f64>>> {
    let m = model(model_name)?;
    py.detach(|| core_sample_vectors(m, n, replicas, seed, workers)).map_err(err)
}

/// `(V_n, W_n)` pairs sharing one weight array per replica.
#[pyfunction]
#[pyo3(signature = (n, replicas, seed = 1, workers = 1))]
fn sample_vw(py: Python<'_>, n: usize, replicas: usize, seed: u64, workers: usize) -> PyResult<Vec<(Vec<f64>, Vec<f64>)>> {
    py.detach(|| sample_vw_pairs(n, replicas, seed, workers)).map_err(err)
}

/// Two-sample Kolmogorov–Smirnov statistic and asymptotic p-value.
#[pyfunction]
fn ks_test(a: Vec<f64>, b: Vec<f64>) -> PyResult<(f64, f64)> {
    let r = ks_two_sample(&a, &b).map_err(err)?;
    Ok((r.statistic, r.p_value))
}

#[pyfunction]
fn pu4(u1: f64, u2: f64, u3: f64) -> f64 {
    pu4_closed_form(u1, u2, u3)
}

/// Joint density of `U_n` (`model="osp"`) or `V_n` (`"growth"`) at `u`, by
/// summing over paths.
#[pyfunction]
#[pyo3(signature = (u, model_name = "osp"))]
fn path_density(u: Vec<f64>, model_name: &str) -> PyResult<f64> {
    let m = match model_name {
        "osp" => PathModel::Osp,
        "growth" => PathModel::Growth,
        other => return Err(PyValueError::new_err(format!("model {other:?}"))),
    };
    PathDensity::new(u.len() + 1, m).and_then(|d| d.eval(&u)).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (v, tol = 1e-9))]
fn density_v(v: Vec<f64>, tol: f64) -> PyResult<f64> {
    density_v_recursive(&v, tol).map_err(err)
}

#[pyfunction]
fn hypoexp_cdf(rates: Vec<f64>, x: f64) -> PyResult<f64> {
    Ok(HypoexpSpec::new(rates).map_err(err)?.cdf(x))
}

#[pyfunction]
fn hypoexp_density(rates: Vec<f64>, x: f64) -> PyResult<f64> {
    Ok(HypoexpSpec::new(rates).map_err(err)?.density(x))
}

#[pymodule]
#[pyo3(name = "osplpp")]
fn osplpp_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySortingNetwork>()?;
    m.add_class::<PyStandardTableau>()?;
    m.add_function(wrap_pyfunction!(count_syt, m)?)?;
    m.add_function(wrap_pyfunction!(sorting_networks, m)?)?;
    m.add_function(wrap_pyfunction!(staircase_tableaux, m)?)?;
    m.add_function(wrap_pyfunction!(rsk, m)?)?;
    m.add_function(wrap_pyfunction!(burge, m)?)?;
    m.add_function(wrap_pyfunction!(lpp_tableau, m)?)?;
    m.add_function(wrap_pyfunction!(verify_identity, m)?)?;
    m.add_function(wrap_pyfunction!(identity_component, m)?)?;
    m.add_function(wrap_pyfunction!(thm22, m)?)?;
    m.add_function(wrap_pyfunction!(sample_vectors, m)?)?;
    m.add_function(wrap_pyfunction!(sample_vw, m)?)?;
    m.add_function(wrap_pyfunction!(ks_test, m)?)?;
    m.add_function(wrap_pyfunction!(pu4, m)?)?;
    m.add_function(wrap_pyfunction!(path_density, m)?)?;
    m.add_function(wrap_pyfunction!(density_v, m)?)?;
    m.add_function(wrap_pyfunction!(hypoexp_cdf, m)?)?;
    m.add_function(wrap_pyfunction!(hypoexp_density, m)?)?;
    Ok(())
}
