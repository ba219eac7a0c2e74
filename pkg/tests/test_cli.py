import json
import subprocess
import sys

import pytest

from tropsi.cli import main, parse_weights, UsageError
from tropsi.combinatorics import WeightVector


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_psi_json(capsys):
    code, out, _ = run(capsys, "psi", "4", "--n", "5", "--w", "3,2")
    assert code == 0
    data = json.loads(out)
    assert data["dim"] == 1 and data["w"] == {"heavy": 3, "light": 2}
    # canonical sides avoid mark 1: 234 is the ray v_15
    assert data["cones"] == [{"splits": [[2, 5]], "weight": 1}, {"splits": [[3, 5]], "weight": 1},
                             {"splits": [[2, 3, 4]], "weight": 1}]


def test_psi_explicit_weights_same_output(capsys):
    _, a, _ = run(capsys, "psi", "4", "--n", "5", "--w", "3,2")
    _, b, _ = run(capsys, "psi", "4", "--w", "1,1,1,1/3,1/3")
    assert a == b


def test_degree(capsys):
    code, out, _ = run(capsys, "degree", "1", "1", "0", "0", "0", "--n", "5", "--w", "2,3")
    assert code == 0 and json.loads(out) == "2"


def test_intersect_routes_agree(capsys):
    _, a, _ = run(capsys, "intersect", "1", "0", "1", "0", "0", "0", "--n", "6", "--w", "4,2")
    _, b, _ = run(capsys, "intersect", "1", "0", "1", "0", "0", "0", "--n", "6", "--w", "4,2",
                  "--route", "recursive")
    assert a == b and json.loads(a)["dim"] == 1


def test_enumerate_and_rays(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "5", "--w", "2,3", "--codim", "1")
    assert code == 0 and len(json.loads(out)["types"]) == 6
    code, out, _ = run(capsys, "rays", "--n", "5", "--w", "2,3")
    data = json.loads(out)
    assert len(data["rays"]) == 6 and all(isinstance(x, str) for r in data["rays"] for x in r["vector"])


def test_table_format(capsys):
    code, out, _ = run(capsys, "psi", "1", "--n", "5", "--w", "3,2", "--format", "table")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].startswith("# n=5") and len(lines) == 6


@pytest.mark.parametrize("argv", [
    ["psi", "1", "--n", "5", "--w", "1,1/2,1/2,1/2,1/2"],
    ["psi", "9", "--n", "5"],
    ["degree", "1", "0", "0", "0", "0", "--n", "5"],
    ["intersect", "1", "0", "--n", "5"],
    ["psi", "1", "--n", "6", "--w", "3,2"],
    ["psi", "1"],
    ["enumerate", "--n", "5", "--codim", "4"],
    ["verify", "oracle", "--max-n", "7"],
    ["nonsense"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "balance", "--max-n", "5")
    assert code == 0 and out.startswith("PASS balance")


def test_verify_failure_reports_counterexample(capsys):
    code, out, _ = run(capsys, "verify", "divisor", "--max-n", "5", "--format", "json")
    data = json.loads(out)
    assert code == 1 and not data["passed"]
    assert data["failures"][0] == "div f_3 = 2 psi_3 (1^2, eps^2)"


def test_parse_weights():
    assert parse_weights("3,2", None) == WeightVector(5, 2)
    assert parse_weights(None, 6) == WeightVector(6, 0)
    with pytest.raises(UsageError):
        parse_weights("1,1,1", 4)


def test_byte_identical_across_processes():
    argv = [sys.executable, "-m", "tropsi", "intersect", "2", "0", "0", "0", "1", "0", "--n", "6", "--w", "3,3"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True, env={"PYTHONHASHSEED": "7"}).stdout
    assert first == second and first


def test_thread_pool_same_result(monkeypatch):
    from tropsi.verify import run_suite
    serial = run_suite("balance", max_n=5)
    monkeypatch.setenv("TROPSI_THREADS", "2")
    assert run_suite("balance", max_n=5) == serial
