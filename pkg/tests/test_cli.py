import json

import pytest

from qes_workbench.cli import run


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_list(capsys):
    assert run(["list", "--format", "json"]) == 0
    assert len(_json(capsys)["systems"]) == 14


def test_spectrum_example(capsys):
    assert run(["spectrum", "S211", "--k1", "1/4", "--k2", "1/4", "--k3", "-1/2", "--N", "2"]) == 0
    doc = _json(capsys)
    assert doc["constraint_value"] == "12" and doc["kernel_dim"] == 3


def test_check_gl3(capsys):
    assert run(["check", "gl3", "--N", "2"]) == 0
    doc = _json(capsys)
    assert doc["passed"] and doc["checks"][0]["pairs"] == 36


def test_check_is_deterministic(capsys, monkeypatch):
    monkeypatch.setenv("QES_WORKBENCH_SEED", "7")
    run(["check", "gauge", "--sys", "S211", "S0"])
    a = capsys.readouterr().out
    run(["check", "gauge", "--sys", "S211", "S0"])
    assert capsys.readouterr().out == a


def test_failure_exit_code(capsys):
    assert run(["separate", "S211", "--coords", "elliptic", "--N", "2", "--c", "3/2", "--variant", "printed"]) == 1
    assert run(["separate", "S211", "--coords", "elliptic", "--N", "2", "--c", "3/2"]) == 0


@pytest.mark.parametrize("argv", [
    ["spectrum", "G", "--N", "1"],
    ["separate", "S211", "--coords", "bogus", "--N", "1"],
    ["spectrum", "S211", "--k1", "0.25", "--N", "1"],
    ["frobnicate"],
    ["stackel", "S1111", "--target", "E16"],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == 2


def test_stackel(capsys):
    assert run(["stackel", "S211", "--target", "E16", "--k1", "1/4", "--k2", "1/4", "--a4", "12", "--N", "2"]) == 0
    assert _json(capsys)["a3"] == "1"
    assert run(["stackel", "S211", "--target", "S4", "--k1", "1", "--k2", "1/4", "--k3", "-1", "--N", "0"]) == 0
    assert _json(capsys)["b2_derived"] == "-7/8"


def test_operator_matrix(capsys):
    assert run(["operator", "S211", "--k1", "1/4", "--k2", "1/4", "--k3", "-1/2", "--matrix", "1"]) == 0
    assert len(_json(capsys)["matrix"]["entries"]) == 3


def test_classical_csv(tmp_path):
    out = tmp_path / "traj.csv"
    code = run(["--out", str(out), "classical", "E1", "--init", "1,0.7,0.3,-0.2", "--tmax", "1",
                "--steps", "200", "--a1", "3/10", "--a2", "0.5", "--a3", "-0.4", "--format", "csv"])
    assert code == 0
    assert out.read_text().startswith("t,tau,x,y,p_x,p_y,H,L1,L2\n")
