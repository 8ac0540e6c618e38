"""Qudit quantum Fourier transform and its check against the inverse DFT."""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .circuit import Circuit, CircuitOp, unitary_of
from .errors import QuditError
from .gates import _check_dimension
from .statevec import _check_n

DEFAULT_TOLERANCE = 1e-9


def rotation_angle(d: int, control: int, target: int) -> float:
    """SUMP angle between ``control`` and ``target``: ``pi / d**(target - control)``."""
    return math.pi / d ** (target - control)


def qft_circuit(
    d: int,
    n: int,
    include_swaps: bool = True,
    angle: Callable[[int, int, int], float] | None = None,
) -> Circuit:
    """Fourier circuit on ``n`` qudits, little-endian.

    Wires are processed from the top (``n - 1``) down: an ``HDG`` on the wire,
    then a ``SUMP`` from every lower wire. The trailing SWAP layer reverses the
    digit order. ``angle(d, control, target)`` overrides the rotation rule.
    """
    d = _check_dimension(d)
    n = _check_n(n)
    ops = []
    for t in range(n - 1, -1, -1):
        ops.append(CircuitOp("HDG", (t,)))
        for c in range(t - 1, -1, -1):
            if angle is None:
                ops.append(
                    CircuitOp("SUMP", (c, t), rotation_angle(d, c, t), f"pi/{d ** (t - c)}")
                )
            else:
                ops.append(CircuitOp("SUMP", (c, t), angle(d, c, t)))
    if include_swaps:
        for i in range(n // 2):
            ops.append(CircuitOp("SWAP", (i, n - 1 - i)))
    return Circuit(d, n, tuple(ops))


def _fourier_phases(size: int) -> np.ndarray:
    if size < 1:
        raise QuditError(f"DFT size must be >= 1, got {size}")
    k = np.arange(size)
    # reduce the product mod N first to keep the exponent argument small
    return np.exp(2j * np.pi * (np.outer(k, k) % size) / size) / np.sqrt(size)


def inverse_dft_matrix(size: int) -> np.ndarray:
    """Unitary inverse DFT, entry ``[y, x] = exp(+2*pi*i*x*y/N) / sqrt(N)``."""
    return _fourier_phases(size)


def dft_matrix(size: int) -> np.ndarray:
    return _fourier_phases(size).conj()


def max_entry_distance(a, b) -> float:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise QuditError(f"shape mismatch: {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def digit_reversal(d: int, n: int) -> np.ndarray:
    """``perm[x]`` is ``x`` with its ``n`` base-``d`` digits reversed."""
    perm = np.zeros(d**n, dtype=np.int64)
    x = np.arange(d**n)
    for i in range(n):
        perm += ((x // d**i) % d) * d ** (n - 1 - i)
    return perm


@dataclass(frozen=True)
class VerificationReport:
    d: int
    n: int
    N: int
    max_entry_error: float
    tolerance: float
    passed: bool
    runtime_ms: float

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def verify_qft(
    d: int,
    n: int,
    tolerance: float = DEFAULT_TOLERANCE,
    *,
    include_swaps: bool = True,
    cap: int | None = None,
    backend=None,
) -> VerificationReport:
    """Compare the QFT circuit's unitary entrywise against the inverse DFT.

    No global phase is factored out. With ``include_swaps=False`` the digit
    reversal is applied to the rows of the unitary before comparing.
    """
    start = time.perf_counter()
    circuit = qft_circuit(d, n, include_swaps=include_swaps)
    u = unitary_of(circuit, cap=cap, backend=backend)
    if not include_swaps:
        u = u[digit_reversal(d, n)]
    err = max_entry_distance(u, inverse_dft_matrix(d**n))
    elapsed = (time.perf_counter() - start) * 1e3
    return VerificationReport(
        d=d,
        n=n,
        N=d**n,
        max_entry_error=err,
        tolerance=tolerance,
        passed=bool(err < tolerance),
        runtime_ms=elapsed,
    )
