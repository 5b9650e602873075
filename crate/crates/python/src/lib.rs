//! Python bindings for `ccp_core`.
//!
//! Results are returned as plain dicts/lists built from the serialized core
//! values, so every number is the exact `f64` the core produced. Heavy calls
//! release the interpreter lock.

use std::path::PathBuf;

use ccp_core::applications as app;
use ccp_core::causal_eval as ce;
use ccp_core::class_eval as cl;
use ccp_core::cost_model::{self as cm, CostBenefitDistribution};
use ccp_core::{dataset, BaselineKind, Sample};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList, PyString};
use serde::Serialize;
use serde_json::Value;

type Cells = [[f64; 2]; 2];

fn core_err(e: ccp_core::Error) -> PyErr {
    if e.is_internal() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn json_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) if n.is_f64() => n.as_f64().into_pyobject(py)?.into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_u64().into_pyobject(py)?.into_any(),
        },
        Value::String(s) => PyString::new(py, s).into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let value = serde_json::to_value(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    json_to_py(py, &value)
}

fn result_to_py<'py, T: Serialize>(py: Python<'py>, r: ccp_core::Result<T>) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &r.map_err(core_err)?)
}

fn baseline(name: &str) -> PyResult<BaselineKind> {
    BaselineKind::parse(name).ok_or_else(|| {
        PyValueError::new_err(format!(
            "unknown baseline `{name}`; expected perfect, pos, neg, random or absolute"
        ))
    })
}

fn sample(name: &str) -> PyResult<Sample> {
    match name {
        "treatment" => Ok(Sample::Treatment),
        "control" => Ok(Sample::Control),
        _ => Err(PyValueError::new_err(format!("unknown sample `{name}`"))),
    }
}

fn cb(cells: Cells) -> PyResult<cm::CostBenefitMatrix> {
    cm::CostBenefitMatrix::new(cells).map_err(core_err)
}

fn ccb(cells: Cells) -> PyResult<cm::CausalCostBenefitMatrix> {
    cm::CausalCostBenefitMatrix::new(cells).map_err(core_err)
}

/// Accepts a JSON string or any object `json.dumps` can serialize.
fn json_arg(obj: &Bound<'_, PyAny>) -> PyResult<Value> {
    let text: String = if let Ok(s) = obj.cast::<PyString>() {
        s.to_string()
    } else {
        obj.py().import("json")?.call_method1("dumps", (obj,))?.extract()?
    };
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(format!("invalid JSON: {e}")))
}

/// Immutable conventional dataset: scores in [0, 1], outcomes in {0, 1}.
#[pyclass(frozen, module = "ccp", name = "ClassificationDataset")]
struct PyClassificationDataset {
    inner: dataset::ClassificationDataset,
}

#[pymethods]
impl PyClassificationDataset {
    #[new]
    fn new(scores: Vec<f64>, outcomes: Vec<i64>) -> PyResult<Self> {
        let inner = dataset::ClassificationDataset::from_arrays(&scores, &outcomes).map_err(core_err)?;
        Ok(Self { inner })
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn priors<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.priors())
    }

    fn thresholds(&self) -> Vec<f64> {
        self.inner.threshold_grid().thresholds().to_vec()
    }
}

/// Immutable randomized-trial dataset: scores in [-1, 1], outcomes and
/// treatment flags in {0, 1}.
#[pyclass(frozen, module = "ccp", name = "CausalDataset")]
struct PyCausalDataset {
    inner: dataset::CausalDataset,
}

#[pymethods]
impl PyCausalDataset {
    #[new]
    fn new(scores: Vec<f64>, outcomes: Vec<i64>, treatments: Vec<i64>) -> PyResult<Self> {
        let inner = dataset::CausalDataset::from_arrays(&scores, &outcomes, &treatments).map_err(core_err)?;
        Ok(Self { inner })
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn priors<'py>(&self, py: Python<'py>, which: &str) -> PyResult<Bound<'py, PyAny>> {
        result_to_py(py, self.inner.priors(sample(which)?))
    }

    fn thresholds(&self) -> PyResult<Vec<f64>> {
        Ok(self.inner.threshold_grid().map_err(core_err)?.thresholds().to_vec())
    }

    fn warnings(&self) -> Vec<String> {
        self.inner.warnings()
    }
}

fn open(path: &PathBuf) -> PyResult<std::fs::File> {
    std::fs::File::open(path).map_err(|e| PyValueError::new_err(format!("{}: {e}", path.display())))
}

/// From a CSV path (`score,outcome`) or from `scores` and `outcomes` arrays.
#[pyfunction]
#[pyo3(signature = (path=None, *, scores=None, outcomes=None))]
fn load_classification(
    path: Option<PathBuf>,
    scores: Option<Vec<f64>>,
    outcomes: Option<Vec<i64>>,
) -> PyResult<PyClassificationDataset> {
    match (path, scores, outcomes) {
        (Some(p), None, None) => Ok(PyClassificationDataset {
            inner: dataset::load_classification(open(&p)?).map_err(core_err)?,
        }),
        (None, Some(s), Some(o)) => PyClassificationDataset::new(s, o),
        _ => Err(PyValueError::new_err("pass either a path or both scores and outcomes")),
    }
}

/// From a CSV path (`score,outcome,treatment`) or from three arrays.
#[pyfunction]
#[pyo3(signature = (path=None, *, scores=None, outcomes=None, treatments=None))]
fn load_causal(
    path: Option<PathBuf>,
    scores: Option<Vec<f64>>,
    outcomes: Option<Vec<i64>>,
    treatments: Option<Vec<i64>>,
) -> PyResult<PyCausalDataset> {
    match (path, scores, outcomes, treatments) {
        (Some(p), None, None, None) => Ok(PyCausalDataset {
            inner: dataset::load_causal(open(&p)?).map_err(core_err)?,
        }),
        (None, Some(s), Some(o), Some(t)) => PyCausalDataset::new(s, o, t),
        _ => Err(PyValueError::new_err(
            "pass either a path or scores, outcomes and treatments",
        )),
    }
}

// ---- conventional classification ----

#[pyfunction]
fn confusion_matrix<'py>(py: Python<'py>, ds: &PyClassificationDataset, threshold: f64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &cl::confusion_matrix(&ds.inner, threshold))
}

#[pyfunction]
fn scalar_metrics<'py>(py: Python<'py>, ds: &PyClassificationDataset, threshold: f64) -> PyResult<Bound<'py, PyAny>> {
    result_to_py(py, cl::scalar_metrics(&cl::confusion_matrix(&ds.inner, threshold)))
}

/// `(curve, auc)`
#[pyfunction]
fn roc_auc<'py>(py: Python<'py>, ds: &PyClassificationDataset) -> PyResult<Bound<'py, PyAny>> {
    result_to_py(py, py.detach(|| cl::roc_auc(&ds.inner)))
}

/// `(curve, gini)`
#[pyfunction]
fn gains_gini<'py>(py: Python<'py>, ds: &PyClassificationDataset) -> PyResult<Bound<'py, PyAny>> {
    result_to_py(py, py.detach(|| cl::gains_gini(&ds.inner)))
}

#[pyfunction]
fn lift<'py>(py: Python<'py>, ds: &PyClassificationDataset, rate: f64) -> PyResult<Bound<'py, PyAny>> {
    result_to_py(py, cl::lift(&ds.inner, rate))
}

#[pyfunction]
fn lift_curve<'py>(py: Python<'py>, ds: &PyClassificationDataset) -> PyResult<Bound<'py, PyAny>> {
    result_to_py(py, py.detach(|| cl::lift_curve(&ds.inner)))
}

#[pyfunction]
#[pyo3(name = "baseline_confusion")]
fn baseline_confusion_py<'py>(py: Python<'py>, ds: &PyClassificationDataset, kind: &str) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &cl::baseline_confusion(baseline(kind)?, ds.inner.priors()))
}

#[pyfunction]
#[pyo3(signature = (ds, threshold, baseline="absolute"))]
fn effect_matrix<'py>(
    py: Python<'py>,
    ds: &PyClassificationDataset,
    threshold: f64,
    baseline: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let cf_b = cl::baseline_confusion(self::baseline(baseline)?, ds.inner.priors());
    result_to_py(py, cl::effect_matrix(&cl::confusion_matrix(&ds.inner, threshold), &cf_b))
}

#[pyfunction]
fn profit(ds: &PyClassificationDataset, threshold: f64, cb_cells: Cells) -> PyResult<f64> {
    Ok(cl::profit(&cl::confusion_matrix(&ds.inner, threshold), &cb(cb_cells)?))
}

#[pyfunction]
#[pyo3(signature = (ds, threshold, cb_cells, baseline="absolute"))]
fn relative_profit(ds: &PyClassificationDataset, threshold: f64, cb_cells: Cells, baseline: &str) -> PyResult<f64> {
    let cf_b = cl::baseline_confusion(self::baseline(baseline)?, ds.inner.priors());
    cl::relative_profit(&cl::confusion_matrix(&ds.inner, threshold), &cf_b, &cb(cb_cells)?).map_err(core_err)
}

#[pyfunction]
#[pyo3(signature = (ds, cb_cells, baseline="absolute"))]
fn max_profit<'py>(
    py: Python<'py>,
    ds: &PyClassificationDataset,
    cb_cells: Cells,
    baseline: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let (m, b) = (cb(cb_cells)?, self::baseline(baseline)?);
    to_py(py, &py.detach(|| cl::max_profit(&ds.inner, &m, b)))
}

#[pyfunction]
#[pyo3(signature = (ds, cb_cells, baseline="absolute"))]
fn profit_table<'py>(
    py: Python<'py>,
    ds: &PyClassificationDataset,
    cb_cells: Cells,
    baseline: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let (m, b) = (cb(cb_cells)?, self::baseline(baseline)?);
    to_py(py, &py.detach(|| cl::profit_table(&ds.inner, &m, b)))
}

// ---- causal classification ----

#[pyfunction]
fn sample_causal_confusion<'py>(
    py: Python<'py>,
    ds: &PyCausalDataset,
    which: &str,
    threshold: f64,
) -> PyResult<Bound<'py, PyAny>> {
    result_to_py(py, ce::sample_causal_confusion(&ds.inner, sample(which)?, threshold))
}

#[pyfunction]
fn causal_confusion<'py>(py: Python<'py>, ds: &PyCausalDataset, threshold: f64) -> PyResult<Bound<'py, PyAny>> {
    result_to_py(py, ce::causal_confusion(&ds.inner, threshold))
}

#[pyfunction]
fn baseline_causal_confusion<'py>(py: Python<'py>, ds: &PyCausalDataset) -> PyResult<Bound<'py, PyAny>> {
    result_to_py(py, ce::baseline_causal_confusion(&ds.inner))
}

#[pyfunction]
fn positive_treatment_rate(ds: &PyCausalDataset, threshold: f64) -> PyResult<f64> {
    ce::positive_treatment_rate(&ds.inner, threshold).map_err(core_err)
}

#[pyfunction]
fn qini_curve<'py>(py: Python<'py>, ds: &PyCausalDataset) -> PyResult<Bound<'py, PyAny>> {
    result_to_py(py, py.detach(|| ce::qini_curve(&ds.inner)))
}

#[pyfunction]
fn qini_coefficient(py: Python<'_>, ds: &PyCausalDataset) -> PyResult<f64> {
    py.detach(|| ce::qini_coefficient(&ds.inner)).map_err(core_err)
}

#[pyfunction]
fn little_qini(py: Python<'_>, ds: &PyCausalDataset) -> PyResult<f64> {
    py.detach(|| ce::little_qini(&ds.inner)).map_err(core_err)
}

#[pyfunction]
fn liftup<'py>(py: Python<'py>, ds: &PyCausalDataset, rate: f64) -> PyResult<Bound<'py, PyAny>> {
    result_to_py(py, py.detach(|| ce::liftup(&ds.inner, rate)))
}

#[pyfunction]
fn liftup_curve<'py>(py: Python<'py>, ds: &PyCausalDataset) -> PyResult<Bound<'py, PyAny>> {
    result_to_py(py, py.detach(|| ce::liftup_curve(&ds.inner)))
}

/// `(curve, aucroc)`
#[pyfunction]
fn croc_aucroc<'py>(py: Python<'py>, ds: &PyCausalDataset) -> PyResult<Bound<'py, PyAny>> {
    result_to_py(py, py.detach(|| ce::croc_aucroc(&ds.inner)))
}

#[pyfunction]
fn causal_effect_matrix<'py>(py: Python<'py>, ds: &PyCausalDataset, threshold: f64) -> PyResult<Bound<'py, PyAny>> {
    result_to_py(py, ce::causal_effect_matrix(&ds.inner, threshold))
}

#[pyfunction]
fn causal_cost_benefit(ob: Cells, tc: Cells) -> PyResult<Cells> {
    let ob = cm::OutcomeBenefitMatrix::new(ob).map_err(core_err)?;
    let tc = cm::TreatmentCostMatrix::new(tc).map_err(core_err)?;
    Ok(cm::causal_cost_benefit(&ob, &tc).cells())
}

#[pyfunction]
fn causal_profit(ds: &PyCausalDataset, threshold: f64, ccb_cells: Cells) -> PyResult<f64> {
    ce::causal_profit(&ds.inner, threshold, &ccb(ccb_cells)?).map_err(core_err)
}

#[pyfunction]
fn max_causal_profit<'py>(py: Python<'py>, ds: &PyCausalDataset, ccb_cells: Cells) -> PyResult<Bound<'py, PyAny>> {
    let m = ccb(ccb_cells)?;
    result_to_py(py, py.detach(|| ce::max_causal_profit(&ds.inner, &m)))
}

#[pyfunction]
fn causal_profit_table<'py>(py: Python<'py>, ds: &PyCausalDataset, ccb_cells: Cells) -> PyResult<Bound<'py, PyAny>> {
    let m = ccb(ccb_cells)?;
    result_to_py(py, py.detach(|| ce::causal_profit_table(&ds.inner, &m)))
}

// ---- Monte Carlo ----

/// `dist` uses the `{"cb": [[spec, ..], ..]}` grammar, as a dict or JSON string.
#[pyfunction]
#[pyo3(signature = (ds, dist, draws, seed, baseline="absolute"))]
fn expected_max_profit<'py>(
    py: Python<'py>,
    ds: &PyClassificationDataset,
    dist: &Bound<'py, PyAny>,
    draws: u64,
    seed: u64,
    baseline: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let b = self::baseline(baseline)?;
    let CostBenefitDistribution::Conventional(d) =
        CostBenefitDistribution::from_json(&json_arg(dist)?).map_err(core_err)?
    else {
        return Err(PyValueError::new_err("expected a `cb` distribution"));
    };
    result_to_py(py, py.detach(|| cm::expected_max_profit(&ds.inner, &d, b, draws, seed)))
}

/// `dist` uses the `{"ob": .., "tc": ..}` grammar, as a dict or JSON string.
#[pyfunction]
fn expected_max_causal_profit<'py>(
    py: Python<'py>,
    ds: &PyCausalDataset,
    dist: &Bound<'py, PyAny>,
    draws: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let CostBenefitDistribution::Causal(d) =
        CostBenefitDistribution::from_json(&json_arg(dist)?).map_err(core_err)?
    else {
        return Err(PyValueError::new_err("expected an `ob`/`tc` distribution"));
    };
    result_to_py(py, py.detach(|| cm::expected_max_causal_profit(&ds.inner, &d, draws, seed)))
}

#[pyfunction]
fn sample_cost_benefit<'py>(
    py: Python<'py>,
    dist: &Bound<'py, PyAny>,
    draw_index: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let d = CostBenefitDistribution::from_json(&json_arg(dist)?).map_err(core_err)?;
    let out = PyDict::new(py);
    match cm::sample_cost_benefit(&d, draw_index, seed) {
        cm::RealizedCostBenefit::Conventional(m) => out.set_item("cb", m.cells())?,
        cm::RealizedCostBenefit::Causal { ob, tc, ccb } => {
            out.set_item("ob", ob.cells())?;
            out.set_item("tc", tc.cells())?;
            out.set_item("ccb", ccb.cells())?;
        }
    }
    Ok(out.into_any())
}

// ---- applications ----

#[pyfunction]
fn retention_matrices(clv: f64, contact_cost: f64, incentive_cost: f64) -> PyResult<(Cells, Cells)> {
    let p = app::RetentionParams::new(clv, contact_cost, incentive_cost).map_err(core_err)?;
    let (ob, tc) = app::retention_matrices(&p);
    Ok((ob.cells(), tc.cells()))
}

#[pyfunction]
fn retention_profit_direct(
    alpha: f64,
    beta_c: f64,
    beta_t: f64,
    clv: f64,
    contact_cost: f64,
    incentive_cost: f64,
) -> PyResult<f64> {
    let s = app::RetentionCampaignStats::new(alpha, beta_c, beta_t).map_err(core_err)?;
    let p = app::RetentionParams::new(clv, contact_cost, incentive_cost).map_err(core_err)?;
    Ok(app::retention_profit_direct(&s, &p))
}

/// `{"engine": .., "direct": ..}`; `direct` is None when the campaign
/// statistics are undefined at this threshold.
#[pyfunction]
fn retention_profit_routes<'py>(
    py: Python<'py>,
    ds: &PyCausalDataset,
    threshold: f64,
    clv: f64,
    contact_cost: f64,
    incentive_cost: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let p = app::RetentionParams::new(clv, contact_cost, incentive_cost).map_err(core_err)?;
    result_to_py(py, app::retention_profit_routes(&ds.inner, threshold, &p))
}

#[pyfunction]
fn maximum_profit_uplift<'py>(
    py: Python<'py>,
    ds: &PyCausalDataset,
    clv: f64,
    contact_cost: f64,
    incentive_cost: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let p = app::RetentionParams::new(clv, contact_cost, incentive_cost).map_err(core_err)?;
    result_to_py(py, py.detach(|| app::maximum_profit_uplift(&ds.inner, &p)))
}

#[pyfunction]
fn response_matrices(delta_t: f64, delta_c: f64, contact_cost: f64, incentive_cost: f64) -> PyResult<(Cells, Cells)> {
    let p = app::ResponseParams::new(delta_t, delta_c, contact_cost, incentive_cost).map_err(core_err)?;
    let (ob, tc) = app::response_matrices(&p);
    Ok((ob.cells(), tc.cells()))
}

#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn response_profit_direct(
    tau: f64,
    pi_tau: f64,
    pi_zeta: f64,
    delta_t: f64,
    delta_c: f64,
    contact_cost: f64,
    incentive_cost: f64,
) -> PyResult<f64> {
    let s = app::ResponseCampaignStats::new(tau, pi_tau, pi_zeta).map_err(core_err)?;
    let p = app::ResponseParams::new(delta_t, delta_c, contact_cost, incentive_cost).map_err(core_err)?;
    Ok(app::response_profit_direct(&s, &p))
}

#[pyfunction]
fn response_profit_routes<'py>(
    py: Python<'py>,
    ds: &PyCausalDataset,
    threshold: f64,
    delta_t: f64,
    delta_c: f64,
    contact_cost: f64,
    incentive_cost: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let p = app::ResponseParams::new(delta_t, delta_c, contact_cost, incentive_cost).map_err(core_err)?;
    result_to_py(py, app::response_profit_routes(&ds.inner, threshold, &p))
}

#[pyfunction]
fn maximum_response_profit<'py>(
    py: Python<'py>,
    ds: &PyCausalDataset,
    delta_t: f64,
    delta_c: f64,
    contact_cost: f64,
    incentive_cost: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let p = app::ResponseParams::new(delta_t, delta_c, contact_cost, incentive_cost).map_err(core_err)?;
    result_to_py(py, py.detach(|| app::maximum_response_profit(&ds.inner, &p)))
}

#[pymodule]
pub fn ccp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyClassificationDataset>()?;
    m.add_class::<PyCausalDataset>()?;
    m.add_function(wrap_pyfunction!(load_classification, m)?)?;
    m.add_function(wrap_pyfunction!(load_causal, m)?)?;
    m.add_function(wrap_pyfunction!(confusion_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(scalar_metrics, m)?)?;
    m.add_function(wrap_pyfunction!(roc_auc, m)?)?;
    m.add_function(wrap_pyfunction!(gains_gini, m)?)?;
    m.add_function(wrap_pyfunction!(lift, m)?)?;
    m.add_function(wrap_pyfunction!(lift_curve, m)?)?;
    m.add_function(wrap_pyfunction!(baseline_confusion_py, m)?)?;
    m.add_function(wrap_pyfunction!(effect_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(profit, m)?)?;
    m.add_function(wrap_pyfunction!(relative_profit, m)?)?;
    m.add_function(wrap_pyfunction!(max_profit, m)?)?;
    m.add_function(wrap_pyfunction!(profit_table, m)?)?;
    m.add_function(wrap_pyfunction!(sample_causal_confusion, m)?)?;
    m.add_function(wrap_pyfunction!(causal_confusion, m)?)?;
    m.add_function(wrap_pyfunction!(baseline_causal_confusion, m)?)?;
    m.add_function(wrap_pyfunction!(positive_treatment_rate, m)?)?;
    m.add_function(wrap_pyfunction!(qini_curve, m)?)?;
    m.add_function(wrap_pyfunction!(qini_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(little_qini, m)?)?;
    m.add_function(wrap_pyfunction!(liftup, m)?)?;
    m.add_function(wrap_pyfunction!(liftup_curve, m)?)?;
    m.add_function(wrap_pyfunction!(croc_aucroc, m)?)?;
    m.add_function(wrap_pyfunction!(causal_effect_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(causal_cost_benefit, m)?)?;
    m.add_function(wrap_pyfunction!(causal_profit, m)?)?;
    m.add_function(wrap_pyfunction!(max_causal_profit, m)?)?;
    m.add_function(wrap_pyfunction!(causal_profit_table, m)?)?;
    m.add_function(wrap_pyfunction!(expected_max_profit, m)?)?;
    m.add_function(wrap_pyfunction!(expected_max_causal_profit, m)?)?;
    m.add_function(wrap_pyfunction!(sample_cost_benefit, m)?)?;
    m.add_function(wrap_pyfunction!(retention_matrices, m)?)?;
    m.add_function(wrap_pyfunction!(retention_profit_direct, m)?)?;
    m.add_function(wrap_pyfunction!(retention_profit_routes, m)?)?;
    m.add_function(wrap_pyfunction!(maximum_profit_uplift, m)?)?;
    m.add_function(wrap_pyfunction!(response_matrices, m)?)?;
    m.add_function(wrap_pyfunction!(response_profit_direct, m)?)?;
    m.add_function(wrap_pyfunction!(response_profit_routes, m)?)?;
    m.add_function(wrap_pyfunction!(maximum_response_profit, m)?)?;
    Ok(())
}
