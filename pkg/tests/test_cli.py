import json

import pytest
from click.testing import CliRunner

from defcms import verify as V
from defcms.cli import main
from defcms.spectral import TheoremViolation


def run(args, env=None):
    return CliRunner().invoke(main, args, env=env)


def test_eqclass_text():
    res = run(["eqclass", "--n", "1", "--m", "1", "--weight", "(0|0)"])
    assert res.exit_code == 0
    assert "class: (1|-1), (0|0)" in res.output
    assert "r: 1" in res.output and "chi_min: (0|0)" in res.output


def test_eqclass_singleton():
    res = run(["--json", "eqclass", "--n", "1", "--m", "1", "--weight", "(2|0)"])
    assert res.exit_code == 0
    obj = json.loads(res.output)
    assert obj["outputs"]["class"] == ["(2|0)"] and obj["outputs"]["r"] == 0


@pytest.mark.parametrize("w", ["(0|)", "0|0", "(a|0)"])
def test_bad_weight_is_usage_error(w):
    res = run(["eqclass", "--n", "1", "--m", "1", "--weight", w])
    assert res.exit_code == 2


def test_non_dominant_is_domain_error():
    res = run(["eqclass", "--n", "2", "--m", "1", "--weight", "(0,1|0)"])
    assert res.exit_code == 3


def test_to_weight():
    res = run(["bipartition", "to-weight", "--n", "1", "--m", "1", "--lambda", "1", "--mu", "1"])
    assert res.exit_code == 0
    assert "weight: (1|-1)" in res.output and "sigma_check: pass" in res.output


def test_from_weight():
    res = run(["bipartition", "from-weight", "--n", "1", "--m", "1", "--weight", "(0|0)"])
    assert res.exit_code == 0
    assert "lambda: []" in res.output and "mu: []" in res.output


def test_not_in_cross():
    res = run(["bipartition", "to-weight", "--n", "1", "--m", "1", "--lambda", "2,2", "--mu", "2,2"])
    assert res.exit_code == 3
    assert "not in (1,1) cross" in res.output


def test_spectral_r1():
    res = run(["spectral", "--n", "1", "--m", "1", "--weight", "(0|0)"])
    assert res.exit_code == 0
    assert "dimension: 2" in res.output and "algebra checks: pass" in res.output


def test_spectral_r0():
    res = run(["--json", "spectral", "--n", "1", "--m", "1", "--weight", "(2|0)"])
    assert res.exit_code == 0
    obj = json.loads(res.output)
    assert obj["outputs"]["dimension"] == 1 and obj["outputs"]["r"] == 0


def test_spectral_not_regular():
    res = run(["spectral", "--n", "1", "--m", "1", "--weight", "(1|-1)"])
    assert res.exit_code == 3
    assert "not in X_reg" in res.output


@pytest.mark.parametrize("args", [
    ["verify", "commute", "--n", "1", "--m", "1", "--rmax", "3"],
    ["verify", "bernoulli", "--n", "2", "--m", "1", "--box", "3", "--rmax", "5"],
    ["verify", "bijection", "--n", "2", "--m", "2", "--box", "3"],
    ["verify", "spectral", "--n", "1", "--m", "1", "--box", "1"],
])
def test_verify_suites_pass(args):
    res = run(args)
    assert res.exit_code == 0, res.output
    assert "FAIL" not in res.output


def test_k_sample_screen():
    res = run(["--json", "verify", "commute", "--n", "1", "--m", "1", "--k-sample", "5"])
    assert res.exit_code == 0
    obj = json.loads(res.output)
    assert all(v["k_sample_screen"] for v in obj["verdicts"] if "k_sample_screen" in v)


def test_failed_check_exits_1(monkeypatch):
    def fake(n, m, B):
        return {"property": "p", "pass": False, "checked": 1, "counterexample": {"x": 1}}

    monkeypatch.setattr(V, "check_bijection", fake)
    res = run(["verify", "bijection", "--n", "1", "--m", "1"])
    assert res.exit_code == 1
    assert "counterexample" in res.output


def test_theorem_violation_exits_1(monkeypatch):
    def boom(*a, **kw):
        raise TheoremViolation("synthetic")

    monkeypatch.setattr(V, "check_bijection", boom)
    res = run(["verify", "bijection", "--n", "1", "--m", "1"])
    assert res.exit_code == 1


def test_resource_bound_exits_4():
    res = run(["spectral", "--n", "2", "--m", "1", "--weight", "(1,0|0)"], env={"CMS_MAX_CELLS": "10"})
    assert res.exit_code == 4


def test_json_is_deterministic():
    args = ["--json", "eqclass", "--n", "2", "--m", "2", "--weight", "(1,0|0,-1)"]
    a, b = run(args), run(args)
    assert a.exit_code == 0 and a.output == b.output
    obj = json.loads(a.output)
    assert obj["schema"] == "defcms.report/1" and "seconds" not in obj
    assert obj["outputs"]["r"] == 2


def test_timing_flag():
    res = run(["--json", "--timing", "eqclass", "--n", "1", "--m", "1", "--weight", "(0|0)"])
    assert "seconds" in json.loads(res.output)
