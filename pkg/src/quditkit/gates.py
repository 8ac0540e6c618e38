"""Gate matrices for qudits of arbitrary dimension ``d``.

All phases are powers of the unit root ``omega = exp(2*pi*i/d)``. Fractional
powers go through :func:`omega_power`, which defines ``omega**x`` as
``exp(2*pi*i*x/d)`` for any real ``x``, so ``omega**(1/2)`` is never
ambiguous.

Two-wire gates use the combined basis index ``control * d + target``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidDimensionError, NonFiniteAngleError, QuditError

_QUARTER_TURNS = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)


def _check_dimension(d) -> int:
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or d < 2:
        raise InvalidDimensionError(f"qudit dimension must be an integer >= 2, got {d!r}")
    return int(d)


def _check_angle(theta) -> float:
    theta = float(theta)
    if not math.isfinite(theta):
        raise NonFiniteAngleError(f"angle must be finite, got {theta!r}")
    return theta


def omega_power(d: int, x: float) -> complex:
    """Return ``omega**x = exp(2*pi*i*x/d)``.

    Exponents landing on a quarter turn return the exact value (1, i, -1, -i),
    which keeps permutation-like products free of rounding residue.
    """
    d = _check_dimension(d)
    x = float(x)
    if not math.isfinite(x):
        raise NonFiniteAngleError(f"exponent must be finite, got {x!r}")
    r = x % d
    quarters = 4.0 * r / d
    if quarters == int(quarters):
        return _QUARTER_TURNS[int(quarters) % 4]
    return cmath.exp(2j * math.pi * r / d)


@dataclass(frozen=True, eq=False)
class GateMatrix:
    """Dense unitary acting on one or two wires of dimension ``d``."""

    d: int
    arity: int
    matrix: np.ndarray = field(repr=False)
    is_diagonal: bool = field(init=False, repr=False)

    def __post_init__(self):
        d = _check_dimension(self.d)
        if self.arity not in (1, 2):
            raise QuditError(f"gate arity must be 1 or 2, got {self.arity!r}")
        size = d**self.arity
        m = np.array(self.matrix, dtype=np.complex128, copy=True)
        if m.shape != (size, size):
            raise QuditError(f"expected a {size}x{size} matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise QuditError("gate matrix has non-finite entries")
        if np.max(np.abs(m.conj().T @ m - np.eye(size))) > 1e-10:
            raise QuditError("gate matrix is not unitary")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "is_diagonal", not np.any(m - np.diag(np.diag(m))))

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, other: GateMatrix) -> GateMatrix:
        if not isinstance(other, GateMatrix):
            return NotImplemented
        if (self.d, self.arity) != (other.d, other.arity):
            raise QuditError("cannot multiply gates of different shape")
        return GateMatrix(self.d, self.arity, self.matrix @ other.matrix)

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


def _diagonal(d: int, arity: int, exponents) -> GateMatrix:
    return GateMatrix(d, arity, np.diag([omega_power(d, x) for x in exponents]))


def _permutation(d: int, image) -> GateMatrix:
    m = np.zeros((d, d), dtype=np.complex128)
    for j in range(d):
        m[image(j), j] = 1.0
    return GateMatrix(d, 1, m)


def identity(d: int, arity: int = 1) -> GateMatrix:
    d = _check_dimension(d)
    return GateMatrix(d, arity, np.eye(d**arity))


def pauli_x(d: int) -> GateMatrix:
    """Shift: ``|j> -> |(j+1) mod d>``."""
    d = _check_dimension(d)
    return _permutation(d, lambda j: (j + 1) % d)


def pauli_z(d: int) -> GateMatrix:
    """Clock: ``|j> -> omega**j |j>``."""
    d = _check_dimension(d)
    return _diagonal(d, 1, range(d))


def hadamard(d: int) -> GateMatrix:
    """Fourier gate with entries ``omega**(-j*k) / sqrt(d)``.

    With this sign, ``H @ Z @ H^dagger == X``; the adjoint carries the
    ``+j*k`` phases.
    """
    d = _check_dimension(d)
    m = np.array(
        [[omega_power(d, -j * k) for k in range(d)] for j in range(d)]
    ) / math.sqrt(d)
    return GateMatrix(d, 1, m)


def s_gate(d: int) -> GateMatrix:
    d = _check_dimension(d)
    return _diagonal(d, 1, (j / 2 for j in range(d)))


def t_gate(d: int) -> GateMatrix:
    d = _check_dimension(d)
    return _diagonal(d, 1, (j / 4 for j in range(d)))


def phase_gate(d: int, theta: float) -> GateMatrix:
    """``P(theta)|j> = omega**(j*theta/pi) |j>``; ``P(pi)`` is the clock gate."""
    d = _check_dimension(d)
    theta = _check_angle(theta)
    return _diagonal(d, 1, (j * theta / math.pi for j in range(d)))


def complement_gate(d: int) -> GateMatrix:
    """``K|j> = |(-j) mod d>``. The identity for ``d == 2``."""
    d = _check_dimension(d)
    return _permutation(d, lambda j: (-j) % d)


def sumx(d: int) -> GateMatrix:
    """Controlled shift ``|j>|k> -> |j>|(j+k) mod d>``."""
    d = _check_dimension(d)
    m = np.zeros((d * d, d * d), dtype=np.complex128)
    for j in range(d):
        for k in range(d):
            m[j * d + (j + k) % d, j * d + k] = 1.0
    return GateMatrix(d, 2, m)


def sump(d: int, theta: float) -> GateMatrix:
    """Controlled phase ``|j>|k> -> omega**(j*k*theta/pi) |j>|k>``."""
    d = _check_dimension(d)
    theta = _check_angle(theta)
    return _diagonal(
        d, 2, (j * k * theta / math.pi for j in range(d) for k in range(d))
    )


def adjoint(g: GateMatrix) -> GateMatrix:
    return GateMatrix(g.d, g.arity, g.matrix.conj().T)
