"""n-qudit statevectors and in-place gate application.

Basis indices are little-endian: wire ``i`` holds digit ``x_i`` of
``x = sum(x_i * d**i)``, so wire 0 is the least significant digit.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import _kernels
from .errors import DigitError, DimensionMismatchError, QuditError, WireError
from .gates import GateMatrix, _check_dimension


def _check_n(n) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise QuditError(f"number of qudits must be an integer >= 1, got {n!r}")
    return int(n)


def index_to_digits(x: int, d: int, n: int) -> list[int]:
    """Little-endian base-``d`` digits of ``x``, padded to ``n`` wires."""
    d = _check_dimension(d)
    n = _check_n(n)
    if not 0 <= x < d**n:
        raise DigitError(f"basis index {x} out of range [0, {d**n})")
    digits = []
    for _ in range(n):
        x, r = divmod(x, d)
        digits.append(r)
    return digits


def digits_to_index(digits: Sequence[int], d: int) -> int:
    d = _check_dimension(d)
    x = 0
    for i, digit in enumerate(digits):
        if not 0 <= digit < d:
            raise DigitError(f"digit {digit} on wire {i} out of range [0, {d})")
        x += int(digit) * d**i
    return x


class StateVector:
    """Amplitudes of an ``n``-qudit register, length ``d**n``."""

    __slots__ = ("d", "n", "amplitudes")

    def __init__(self, d: int, n: int, amplitudes=None, *, check_norm: bool = True):
        self.d = _check_dimension(d)
        self.n = _check_n(n)
        size = self.d**self.n
        if amplitudes is None:
            amplitudes = np.zeros(size, dtype=np.complex128)
            amplitudes[0] = 1.0
        else:
            amplitudes = np.ascontiguousarray(amplitudes, dtype=np.complex128)
            if amplitudes.shape != (size,):
                raise DimensionMismatchError(
                    f"expected {size} amplitudes for d={self.d}, n={self.n}, "
                    f"got shape {amplitudes.shape}"
                )
            if check_norm and abs(np.linalg.norm(amplitudes) - 1.0) > 1e-10:
                raise QuditError("amplitudes must have unit L2 norm")
        self.amplitudes = amplitudes

    def __len__(self):
        return self.amplitudes.shape[0]

    def __repr__(self):
        return f"StateVector(d={self.d}, n={self.n})"

    def copy(self) -> StateVector:
        return StateVector(self.d, self.n, self.amplitudes.copy(), check_norm=False)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def basis_state(d: int, n: int, digits: Sequence[int]) -> StateVector:
    d = _check_dimension(d)
    n = _check_n(n)
    if len(digits) != n:
        raise DigitError(f"expected {n} digits, got {len(digits)}")
    amps = np.zeros(d**n, dtype=np.complex128)
    amps[digits_to_index(digits, d)] = 1.0
    return StateVector(d, n, amps)


def _check_wire(w, n):
    if isinstance(w, bool) or not isinstance(w, (int, np.integer)) or not 0 <= w < n:
        raise WireError(f"wire {w!r} out of range for {n} qudits")
    return int(w)


def _check_gate(state, g, arity):
    if g.arity != arity:
        raise QuditError(f"expected a {arity}-wire gate, got arity {g.arity}")
    if g.d != state.d:
        raise DimensionMismatchError(f"gate dimension {g.d} != state dimension {state.d}")


def apply_1(state: StateVector, g: GateMatrix, target: int, *, backend=None) -> None:
    """Apply a one-wire gate to ``target`` in place."""
    _check_gate(state, g, 1)
    target = _check_wire(target, state.n)
    kern = _kernels.get_backend(backend)
    if g.is_diagonal:
        kern.apply_diag_1(state.amplitudes, np.diag(g.matrix).copy(), state.d, target)
    else:
        kern.apply_1(state.amplitudes, g.matrix, state.d, target)


def apply_2(
    state: StateVector, g: GateMatrix, control: int, target: int, *, backend=None
) -> None:
    """Apply a two-wire gate in place.

    Slices are indexed by ``control_digit * d + target_digit``, matching the
    layout of :func:`quditkit.gates.sumx` and :func:`quditkit.gates.sump`.
    """
    _check_gate(state, g, 2)
    control = _check_wire(control, state.n)
    target = _check_wire(target, state.n)
    if control == target:
        raise WireError(f"control and target must differ, both are {control}")
    kern = _kernels.get_backend(backend)
    if g.is_diagonal:
        kern.apply_diag_2(
            state.amplitudes, np.diag(g.matrix).copy(), state.d, control, target
        )
    else:
        kern.apply_2(state.amplitudes, g.matrix, state.d, control, target)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """``<a|b>``, conjugate-linear in ``a``."""
    if (a.d, a.n) != (b.d, b.n):
        raise DimensionMismatchError(
            f"states differ in shape: (d={a.d}, n={a.n}) vs (d={b.d}, n={b.n})"
        )
    return complex(np.vdot(a.amplitudes, b.amplitudes))
