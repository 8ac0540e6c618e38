import cmath
import json
import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st

from quditkit.circuit import CircuitOp, unitary_of
from quditkit.errors import QuditError, UnitaryCapError
from quditkit.qft import (
    dft_matrix,
    digit_reversal,
    inverse_dft_matrix,
    max_entry_distance,
    qft_circuit,
    verify_qft,
)

QFT_GRID = [(d, n) for d in range(2, 9) for n in range(1, 4) if d**n <= 512]
QFT_GRID += [(2, 4), (2, 5), (2, 6)]


def test_single_wire_circuit():
    c = qft_circuit(2, 1)
    assert c.ops == (CircuitOp("HDG", (0,)),)
    r = 1 / math.sqrt(2)
    assert max_entry_distance(unitary_of(c), [[r, r], [r, -r]]) < 1e-15


def test_two_qubit_layout():
    c = qft_circuit(2, 2)
    assert c.ops == (
        CircuitOp("HDG", (1,)),
        CircuitOp("SUMP", (0, 1), math.pi / 2),
        CircuitOp("HDG", (0,)),
        CircuitOp("SWAP", (0, 1)),
    )


def test_textbook_two_qubit_qft():
    # H on the top wire, controlled-phase(pi/2), H on wire 0, swap
    h = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    cp = np.diag([1, 1, 1, 1j])
    swap = np.eye(4)[[0, 2, 1, 3]]
    u = swap @ np.kron(np.eye(2), h) @ cp @ np.kron(h, np.eye(2))
    assert max_entry_distance(unitary_of(qft_circuit(2, 2)), u) < 1e-15


def test_qutrit_angle():
    sump = [op for op in qft_circuit(3, 2).ops if op.kind == "SUMP"]
    assert sump[0].theta == math.pi / 3
    assert sump[0].theta_text == "pi/3"


@pytest.mark.parametrize("d,n", [(2, 1), (3, 4), (5, 5), (7, 6)])
def test_op_counts(d, n):
    c = qft_circuit(d, n)
    kinds = [op.kind for op in c.ops]
    assert kinds.count("HDG") == n
    assert kinds.count("SUMP") == n * (n - 1) // 2
    assert kinds.count("SWAP") == n // 2
    assert len(kinds) == n + n * (n - 1) // 2 + n // 2
    assert len(qft_circuit(d, n, include_swaps=False)) == n + n * (n - 1) // 2


def test_qft_rejects_bad_dimension():
    with pytest.raises(QuditError):
        qft_circuit(1, 2)


def test_dft_examples():
    r = 1 / math.sqrt(2)
    assert max_entry_distance(inverse_dft_matrix(2), [[r, r], [r, -r]]) < 1e-15
    assert max_entry_distance(dft_matrix(2), [[r, r], [r, -r]]) < 1e-15
    assert abs(inverse_dft_matrix(4)[1, 1] - 0.5j) < 1e-16
    f = inverse_dft_matrix(12)
    assert np.max(np.abs(f @ f.conj().T - np.eye(12))) < 1e-13
    with pytest.raises(QuditError):
        dft_matrix(0)


@pytest.mark.parametrize("size", [1, 2, 3, 7, 16, 81, 512])
def test_dft_inverse_pair(size):
    assert np.max(np.abs(dft_matrix(size) @ inverse_dft_matrix(size) - np.eye(size))) < 1e-12


@pytest.mark.parametrize("size", [2, 9, 16, 25])
def test_dft_agrees_with_scipy(size):
    ref = scipy.linalg.dft(size, scale="sqrtn")
    assert max_entry_distance(dft_matrix(size), ref) < 1e-13
    assert max_entry_distance(inverse_dft_matrix(size), ref.conj().T) < 1e-13


def test_inverse_dft_entries_from_definition():
    size = 10
    f = inverse_dft_matrix(size)
    for y in range(size):
        for x in range(size):
            assert abs(f[y, x] - cmath.exp(2j * math.pi * x * y / size) / math.sqrt(size)) < 1e-14


def test_max_entry_distance():
    rng = np.random.default_rng(3)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    assert max_entry_distance(a, a) == 0
    assert max_entry_distance(np.eye(2), np.diag([1, -1])) == 2
    with pytest.raises(QuditError):
        max_entry_distance(np.eye(2), np.eye(3))


@given(st.integers(0, 2**32 - 1))
def test_max_entry_distance_metric(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)) for _ in range(3))
    assert max_entry_distance(a, b) == max_entry_distance(b, a)
    assert max_entry_distance(a, c) <= max_entry_distance(a, b) + max_entry_distance(b, c) + 1e-15


@pytest.mark.parametrize("d,n", QFT_GRID)
def test_verify_qft_grid(d, n):
    report = verify_qft(d, n, 1e-9)
    assert report.passed, report
    assert report.N == d**n


@pytest.mark.parametrize("d,n", [(2, 3), (3, 2), (4, 2), (3, 3)])
def test_swap_layer_is_digit_reversal(d, n):
    u = unitary_of(qft_circuit(d, n, include_swaps=False))
    perm = digit_reversal(d, n)
    assert max_entry_distance(u[perm], inverse_dft_matrix(d**n)) < 1e-9
    assert verify_qft(d, n, include_swaps=False).passed


def test_digit_reversal():
    assert list(digit_reversal(2, 3)) == [0, 4, 2, 6, 1, 5, 3, 7]
    assert list(digit_reversal(3, 2)) == [0, 3, 6, 1, 4, 7, 2, 5, 8]


def test_literal_angle_rule_fails():
    literal = qft_circuit(2, 2, angle=lambda d, c, t: math.pi * 2 ** (d * (c - t)))
    assert max_entry_distance(unitary_of(literal), inverse_dft_matrix(4)) > 0.1


def test_report_json():
    report = verify_qft(3, 1)
    obj = json.loads(report.to_json())
    assert set(obj) == {"d", "n", "N", "max_entry_error", "tolerance", "passed", "runtime_ms"}
    assert obj["passed"] is True
    assert obj["passed"] == (obj["max_entry_error"] < obj["tolerance"])


def test_report_fails_below_error():
    report = verify_qft(3, 2, tolerance=1e-30)
    assert not report.passed


def test_verify_respects_cap():
    with pytest.raises(UnitaryCapError):
        verify_qft(2, 13)
    with pytest.raises(UnitaryCapError):
        verify_qft(3, 3, cap=26)
