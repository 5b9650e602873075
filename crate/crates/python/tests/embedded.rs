use std::ffi::CString;

use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run(code: &str) -> PyResult<()> {
    Python::attach(|py| {
        let globals = PyDict::new(py);
        globals.set_item("ccp", pyo3::wrap_pymodule!(ccp::ccp)(py))?;
        py.run(&CString::new(code).unwrap(), Some(&globals), None)
    })
}

#[test]
fn conventional_calls() {
    run(r#"
ds = ccp.ClassificationDataset([0.9, 0.8, 0.4, 0.2], [1, 0, 1, 0])
assert ccp.roc_auc(ds)[1] == 0.75
best = ccp.max_profit(ds, [[0, -1], [-5, 10]], baseline="absolute")
assert (best["value"], best["optimal_threshold"]) == (4.75, 0.2), best
assert ccp.relative_profit(ds, 0.5, [[0, -1], [-5, 10]], "absolute") == ccp.profit(ds, 0.5, [[0, -1], [-5, 10]])
"#)
    .unwrap();
}

#[test]
fn causal_calls() {
    run(r#"
ds = ccp.load_causal(scores=[0.9, 0.6, 0.2, 0.5, 0.3, -0.1], outcomes=[1, 1, 0, 0, 1, 0], treatments=[1, 1, 1, 0, 0, 0])
assert abs(ccp.qini_coefficient(ds) - 4.5) < 1e-12
dist = '{"ob": [[{"point": 0}, {"point": 0}], [{"point": 10}, {"point": 10}]], "tc": [[{"point": 0}, {"point": 1}], [{"point": 0}, {"point": 3}]]}'
a = ccp.expected_max_causal_profit(ds, dist, 200, 1)
b = ccp.expected_max_causal_profit(ds, dist, 200, 1)
assert a == b and abs(a["mean_profit"] - 14 / 3) < 1e-12, a
"#)
    .unwrap();
}

#[test]
fn errors_map_to_value_error() {
    let err = run("ccp.ClassificationDataset([0.5], [2])").unwrap_err();
    Python::attach(|py| assert!(err.is_instance_of::<pyo3::exceptions::PyValueError>(py)));
    let err = run("ccp.max_profit(ccp.ClassificationDataset([0.5], [1]), [[0, 0], [0, 0]], 'best')").unwrap_err();
    Python::attach(|py| assert!(err.to_string().contains("unknown baseline"), "{}", err.value(py)));
}
