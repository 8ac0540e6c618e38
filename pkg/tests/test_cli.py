import json
import math
import subprocess
import sys

import numpy as np
import pytest

from quditkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_usage(capsys, *argv):
    with pytest.raises(SystemExit) as info:
        main(list(argv))
    out, err = capsys.readouterr()
    return info.value.code, err


@pytest.fixture
def qc(tmp_path):
    def write(text, name="c.qc"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def test_gate_shift(capsys):
    code, out, _ = run(capsys, "gate", "--name", "X", "--d", "3")
    assert code == 0
    rows = [line.split() for line in out.splitlines()]
    assert rows == [["0+0i", "0+0i", "1+0i"], ["1+0i", "0+0i", "0+0i"], ["0+0i", "1+0i", "0+0i"]]


def test_gate_phase_json(capsys):
    code, out, _ = run(capsys, "gate", "--name", "P", "--d", "2", "--theta", "pi/4", "--json")
    assert code == 0
    m = np.array([[complex(*z) for z in row] for row in json.loads(out)["matrix"]])
    r = 1 / math.sqrt(2)
    assert np.max(np.abs(m - np.diag([1, r + r * 1j]))) < 1e-15


def test_gate_adjoint_hadamard(capsys):
    _, plain, _ = run(capsys, "gate", "--name", "H", "--d", "2")
    _, adj, _ = run(capsys, "gate", "--name", "H", "--d", "2", "--adjoint")
    assert plain == adj
    assert "0.707107+0i" in plain and "-0.707107+0i" in plain


def test_gate_two_wire(capsys):
    code, out, _ = run(capsys, "gate", "--name", "SUMP", "--d", "3", "--theta", "1.0")
    assert code == 0
    assert len(out.splitlines()) == 9


@pytest.mark.parametrize(
    "argv",
    [
        ["gate", "--name", "P", "--d", "3"],
        ["gate", "--name", "X", "--d", "3", "--theta", "1"],
        ["gate", "--name", "Y", "--d", "3"],
        ["gate", "--name", "X", "--d", "1"],
        ["gate", "--name", "P", "--d", "3", "--theta", "pi/q"],
        ["bench", "--d", "2", "--n", "3", "--reps", "0"],
        ["qft", "--d", "2"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    code, err = run_usage(capsys, *argv)
    assert code == 2
    assert "usage" in err


def test_run_empty_circuit(capsys, qc):
    code, out, _ = run(capsys, "run", qc("qudits d=2 n=2\n"), "--input", "00")
    assert code == 0
    assert out.splitlines() == ["|00⟩ 1.000000 1+0i"]


def test_run_hadamard(capsys, qc):
    code, out, _ = run(capsys, "run", qc("qudits d=2 n=1\nH 0\n"))
    lines = out.splitlines()
    assert code == 0 and len(lines) == 2
    assert all(line.split()[1] == "0.500000" for line in lines)


def test_run_qutrit_fourier(capsys, qc):
    code, out, _ = run(capsys, "run", qc("qudits d=3 n=1\nHDG 0\n"), "--json")
    obj = json.loads(out)
    amps = [complex(a["re"], a["im"]) for a in obj["amplitudes"]]
    assert len(amps) == 3
    assert np.max(np.abs(np.array(amps) - 1 / math.sqrt(3))) < 1e-15


def test_run_labels_put_wire_zero_rightmost(capsys, qc):
    code, out, _ = run(capsys, "run", qc("qudits d=3 n=2\nX 0\n"), "--input", "10")
    assert out.split()[0] == "|11⟩"
    code, out, _ = run(capsys, "run", qc("qudits d=3 n=2\nX 1\n"), "--input", "01")
    assert out.split()[0] == "|11⟩"


def test_run_large_dimension_labels(capsys, qc):
    code, out, _ = run(capsys, "run", qc("qudits d=12 n=2\nX 0\n"), "--input", "3,11")
    assert out.split()[0] == "|3,0⟩"


def test_run_top_k(capsys, qc):
    code, out, _ = run(capsys, "run", qc("qudits d=2 n=3\nH 0\nH 1\nH 2\n"), "--top-k", "3")
    assert len(out.splitlines()) == 3


def test_run_parse_error(capsys, qc):
    path = qc("qudits d=3 n=2\nX 0\nSUMX 1 1\n")
    code, out, err = run(capsys, "run", path)
    assert code == 1
    assert f"{path}:3:8:" in err


def test_run_bad_input(capsys, qc):
    code, err = run_usage(capsys, "run", qc("qudits d=3 n=2\n"), "--input", "3")
    assert code == 2


def test_qft_verified(capsys):
    code, out, _ = run(capsys, "qft", "--d", "2", "--n", "4")
    assert code == 0
    assert "passed: True" in out


def test_qft_json(capsys):
    code, out, _ = run(capsys, "qft", "--d", "3", "--n", "2", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["passed"] and obj["N"] == 9
    code, out, _ = run(capsys, "qft", "--d", "3", "--n", "2", "--json", "--no-swaps")
    assert set(json.loads(out)) == set(obj)


def test_qft_cap(capsys):
    code, out, err = run(capsys, "qft", "--d", "2", "--n", "13")
    assert code == 3
    assert "8192" in err and "4096" in err


def test_qft_cap_override(capsys, monkeypatch):
    monkeypatch.setenv("QUDITKIT_UNITARY_CAP", "4")
    code, _, _ = run(capsys, "qft", "--d", "3", "--n", "2")
    assert code == 3


def test_qft_failure_exit(capsys):
    code, _, _ = run(capsys, "qft", "--d", "3", "--n", "2", "--tolerance", "1e-40")
    assert code == 1


def test_bench_rows(capsys):
    code, out, _ = run(capsys, "bench", "--d", "3", "--n", "4", "--reps", "2", "--json")
    obj = json.loads(out)
    assert code == 0
    assert [r["gate"] for r in obj["rows"]] == ["H", "SUMP"]
    assert all(r["amplitudes"] == 81 for r in obj["rows"])


def test_bench_both_backends(capsys):
    code, out, _ = run(capsys, "bench", "--d", "2", "--n", "6", "--reps", "1", "--backend", "both")
    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 1 + 4


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "quditkit", "qft", "--d", "2", "--n", "3", "--json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["passed"] is True
