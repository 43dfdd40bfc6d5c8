from __future__ import annotations

import json
import subprocess
import sys

import pytest

from heightcensus.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_census_E_json(capsys):
    code, out, _ = run(capsys, "census", "--kind", "E", "--D", "1", "--N", "1", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["count"] == "7" and doc["verdict"] == "pass"
    lower = doc["checks"][0]["bound"]
    assert lower == {"lo": "1/1", "hi": "1/1"}  # e^0 is exact


def test_census_half_disk_csv(capsys):
    code, out, _ = run(capsys, "census", "--kind", "half_disk", "--D", "1", "--N", "1", "--csv")
    assert code == 0
    assert out.splitlines()[1].startswith("1,1/1,5,7,")


def test_census_budget_exit_code(capsys):
    code, _, err = run(capsys, "census", "--kind", "E", "--D", "3", "--N", "4")
    assert code == 2
    assert "budget" in err


def test_rejects_float_input(capsys):
    code, _, err = run(capsys, "census", "--kind", "E", "--D", "1", "--N", "0.5")
    assert code == 4
    assert "rational" in err


def test_faithful_depth_two_exit_code(capsys):
    code, _, err = run(capsys, "function", "build", "--depth", "2")
    assert code == 2
    assert "infeasible" in err


def test_function_build_writes_schedule(capsys, tmp_path):
    path = tmp_path / "sched.json"
    code, _, _ = run(capsys, "function", "build", "--depth", "1", "--out", str(path))
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["entries"][0]["N"] == "3/1" and doc["entries"][0]["epsilon"] == "511"


def test_function_eval_rational(capsys):
    code, out, _ = run(capsys, "function", "eval", "--alpha", "1/2", "--json")
    assert code == 0
    assert json.loads(out)  # exact value reported


def test_function_eval_uncaptured(capsys):
    code, _, err = run(capsys, "function", "eval", "--mode", "toy", "--depth", "2", "--alpha", "1/3")
    assert code == 4
    assert "not captured" in err


def test_machine_siegel_demo(capsys):
    code, out, _ = run(capsys, "machine", "siegel", "--demo", "basic", "--json")
    assert code == 0
    assert "X1" in out and "X2" in out


def test_machine_siegel_infeasible(capsys):
    code, _, _ = run(capsys, "machine", "siegel", "--demo", "infeasible")
    assert code == 2


def test_machine_liouville_equality(capsys):
    code, out, _ = run(capsys, "machine", "liouville", "--poly", "3X - 1", "--gamma", "1/2", "--json")
    assert code == 0
    assert '"0/1"' in out


def test_machine_liouville_field_point(capsys):
    code, _, _ = run(capsys, "machine", "liouville", "--poly", "X1*X2 - 1", "--gamma", "a,a+1",
                     "--field", "X^2 - 2", "--root-index", "0")
    assert code == 0


def test_machine_schwarz(capsys):
    code, _, _ = run(capsys, "machine", "schwarz", "--poly", "X", "--R", "2", "--r", "1", "--zeros", "0")
    assert code == 0


def test_machine_sigma(capsys):
    code, out, _ = run(capsys, "machine", "sigma", "--oracle", "id", "--oracle", "poly:z^2",
                       "--D", "1", "--N", "1", "--json")
    assert code == 0
    assert json.loads(out)["count"] == 3


def test_machine_thresholds(capsys):
    code, _, _ = run(capsys, "machine", "thresholds", "--R", "2", "--r", "1", "--gamma", "1446")
    assert code == 0


def test_machine_constants(capsys):
    code, out, _ = run(capsys, "machine", "constants", "--R", "2", "--r", "1", "--json")
    assert code == 0
    assert "4/5" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "heightcensus", "census", "--kind", "A", "--D", "1",
                           "--H", "2"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "pass" in proc.stdout


@pytest.mark.parametrize("argv", [["census"], ["machine", "liouville", "--poly", "X"]])
def test_argparse_errors(argv):
    with pytest.raises(SystemExit):
        main(argv)
