"""Smoke test for the ccp extension module.

Build and install first:  pip install --no-build-isolation ./crates/python
"""

import json
import math
import os
import subprocess
import tempfile

import ccp

FIX_U = "score,outcome,treatment\n0.9,1,1\n0.6,1,1\n0.2,0,1\n0.5,0,0\n0.3,1,0\n-0.1,0,0\n"


FIX_C = "score,outcome\n0.9,1\n0.8,0\n0.4,1\n0.2,0\n"
CLI = os.path.join(os.path.dirname(__file__), "..", "target", "debug", "ccp")


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def cli_matches(cls):
    """Compares against the CLI report when the binary has been built."""
    if not os.path.exists(CLI):
        print("skip: cli binary not built")
        return
    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "fixc.csv")
        with open(path, "w") as f:
            f.write(FIX_C)
        out = subprocess.run(
            [CLI, "eval", "--input", path, "--mode", "class", "--threshold", "0.5"],
            check=True, capture_output=True,
        )
    report = json.loads(out.stdout)["results"]
    assert report["auc"] == ccp.roc_auc(cls)[1]
    assert report["gini"] == ccp.gains_gini(cls)[1]


def main():
    cls = ccp.ClassificationDataset([0.9, 0.8, 0.4, 0.2], [1, 0, 1, 0])
    assert len(cls) == 4
    _, auc = ccp.roc_auc(cls)
    assert auc == 0.75, auc
    assert ccp.scalar_metrics(cls, 0.5)["accuracy"] == 0.5

    cb = [[0, -1], [-5, 10]]
    best = ccp.max_profit(cls, cb)
    assert (best["value"], best["optimal_threshold"]) == (4.75, 0.2), best

    point = {"cb": [[{"point": 0}, {"point": -1}], [{"point": -5}, {"point": 10}]]}
    emp = ccp.expected_max_profit(cls, point, 100, 3)
    assert emp["mean_profit"] == 4.75, emp

    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "fixu.csv")
        with open(path, "w") as f:
            f.write(FIX_U)
        cau = ccp.load_causal(path)
    same = ccp.load_causal(
        scores=[0.9, 0.6, 0.2, 0.5, 0.3, -0.1],
        outcomes=[1, 1, 0, 0, 1, 0],
        treatments=[1, 1, 1, 0, 0, 0],
    )
    assert cau.thresholds() == same.thresholds()

    assert close(ccp.qini_coefficient(cau), 4.5)
    assert close(ccp.little_qini(cau), 2.25)
    assert close(ccp.croc_aucroc(cau)[1], 0.75)

    ccb = ccp.causal_cost_benefit([[0, 0], [10, 10]], [[0, 1], [0, 3]])
    best = ccp.max_causal_profit(cau, ccb)
    assert close(best["value"], 14 / 3), best

    routes = ccp.retention_profit_routes(cau, 0.4, 200, 1, 10)
    assert routes["direct"] is not None
    assert close(routes["engine"], routes["direct"], 1e-9), routes

    try:
        ccp.ClassificationDataset([0.5, 1.5], [0, 1])
    except ValueError as e:
        assert "score" in str(e), e
    else:
        raise AssertionError("out-of-range score accepted")

    assert not math.isnan(emp["profit_std_dev"])
    cli_matches(cls)
    print("ok")


if __name__ == "__main__":
    main()
