"""Circuit representation, execution and unitary extraction."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _kernels, gates
from .errors import CircuitError, NonFiniteAngleError, QuditError, UnitaryCapError
from .gates import _check_dimension
from .statevec import StateVector, _check_n, apply_1, apply_2, basis_state

ONE_WIRE = frozenset({"X", "Z", "H", "HDG", "S", "T", "P", "K"})
TWO_WIRE = frozenset({"SUMX", "SUMXDG", "SUMP", "SWAP"})
PARAMETRIC = frozenset({"P", "SUMP"})
KINDS = ONE_WIRE | TWO_WIRE

DEFAULT_UNITARY_CAP = 4096


@dataclass(frozen=True)
class CircuitOp:
    """One gate application.

    For two-wire ops ``wires`` is ``(control, target)``; SWAP is symmetric.
    ``theta_text`` remembers how an angle was written (e.g. ``"pi/9"``) so it
    can be serialized back verbatim; it does not take part in equality.
    """

    kind: str
    wires: tuple[int, ...]
    theta: float | None = None
    theta_text: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise QuditError(f"unknown gate kind {self.kind!r}")
        wires = tuple(int(w) for w in self.wires)
        object.__setattr__(self, "wires", wires)
        arity = 1 if self.kind in ONE_WIRE else 2
        if len(wires) != arity:
            raise QuditError(f"{self.kind} takes {arity} wire(s), got {len(wires)}")
        if any(w < 0 for w in wires):
            raise QuditError(f"negative wire index in {wires}")
        if arity == 2 and wires[0] == wires[1]:
            raise QuditError(f"{self.kind} needs two distinct wires, got {wires}")
        if self.kind in PARAMETRIC:
            if self.theta is None:
                raise QuditError(f"{self.kind} requires an angle")
            theta = float(self.theta)
            if not math.isfinite(theta):
                raise NonFiniteAngleError(f"angle must be finite, got {theta!r}")
            object.__setattr__(self, "theta", theta)
        elif self.theta is not None:
            raise QuditError(f"{self.kind} takes no angle")

    @property
    def arity(self) -> int:
        return len(self.wires)


@dataclass(frozen=True)
class Circuit:
    d: int
    n: int
    ops: tuple[CircuitOp, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "d", _check_dimension(self.d))
        object.__setattr__(self, "n", _check_n(self.n))
        ops = tuple(self.ops)
        for i, op in enumerate(ops):
            if not isinstance(op, CircuitOp):
                raise CircuitError(i, f"expected CircuitOp, got {type(op).__name__}")
            if max(op.wires) >= self.n:
                raise CircuitError(i, f"wire {max(op.wires)} out of range for {self.n} qudits")
        object.__setattr__(self, "ops", ops)

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def extended(self, ops: Iterable[CircuitOp]) -> Circuit:
        return Circuit(self.d, self.n, self.ops + tuple(ops))

    def concat(self, other: Circuit) -> Circuit:
        """``self`` followed by ``other``."""
        if (self.d, self.n) != (other.d, other.n):
            raise QuditError("cannot concatenate circuits of different shape")
        return self.extended(other.ops)

    def inverse(self) -> Circuit:
        """The adjoint circuit: ops reversed, each replaced by its inverse."""
        out = []
        for op in reversed(self.ops):
            out.extend(_inverse_op(op, self.d))
        return Circuit(self.d, self.n, tuple(out))

    def lowered(self) -> Circuit:
        """Same circuit with every SWAP expanded by :func:`swap_macro`."""
        out = []
        for op in self.ops:
            out.extend(swap_macro(*op.wires) if op.kind == "SWAP" else (op,))
        return Circuit(self.d, self.n, tuple(out))


def _inverse_op(op: CircuitOp, d: int) -> list[CircuitOp]:
    kind, w = op.kind, op.wires
    if kind == "X":
        return [op] * (d - 1)
    if kind == "Z":
        return [CircuitOp("P", w, -math.pi)]
    if kind == "S":
        return [CircuitOp("P", w, -math.pi / 2)]
    if kind == "T":
        return [CircuitOp("P", w, -math.pi / 4)]
    if kind in PARAMETRIC:
        return [CircuitOp(kind, w, -op.theta)]
    swapped = {"H": "HDG", "HDG": "H", "SUMX": "SUMXDG", "SUMXDG": "SUMX"}
    if kind in swapped:
        return [CircuitOp(swapped[kind], w)]
    return [op]  # K and SWAP are involutions


def swap_macro(c_wire: int, t_wire: int) -> list[CircuitOp]:
    """Exchange two qudits with three sum gates and a complement.

    ``|j>|k> -> |j-k>|k> -> |j-k>|j> -> |-k>|j> -> |k>|j>`` with
    ``c_wire`` carrying the first digit.
    """
    if c_wire == t_wire:
        raise QuditError(f"SWAP needs two distinct wires, got {c_wire} twice")
    return [
        CircuitOp("SUMXDG", (t_wire, c_wire)),
        CircuitOp("SUMX", (c_wire, t_wire)),
        CircuitOp("SUMXDG", (t_wire, c_wire)),
        CircuitOp("K", (c_wire,)),
    ]


@lru_cache(maxsize=512)
def _gate(kind: str, d: int, theta: float | None) -> gates.GateMatrix:
    if kind == "X":
        return gates.pauli_x(d)
    if kind == "Z":
        return gates.pauli_z(d)
    if kind == "H":
        return gates.hadamard(d)
    if kind == "HDG":
        return gates.adjoint(gates.hadamard(d))
    if kind == "S":
        return gates.s_gate(d)
    if kind == "T":
        return gates.t_gate(d)
    if kind == "P":
        return gates.phase_gate(d, theta)
    if kind == "K":
        return gates.complement_gate(d)
    if kind == "SUMX":
        return gates.sumx(d)
    if kind == "SUMXDG":
        return gates.adjoint(gates.sumx(d))
    if kind == "SUMP":
        return gates.sump(d, theta)
    raise QuditError(f"no matrix for gate kind {kind!r}")


def gate_of(op: CircuitOp, d: int) -> gates.GateMatrix:
    return _gate(op.kind, d, op.theta)


def _lowered_ops(c: Circuit):
    """Yield ``(index, op)`` pairs with SWAPs expanded; index is the source op."""
    for i, op in enumerate(c.ops):
        if op.kind == "SWAP":
            for sub in swap_macro(*op.wires):
                yield i, sub
        else:
            yield i, op


def run(c: Circuit, state: StateVector, *, backend=None) -> StateVector:
    """Apply ``c`` to ``state`` in place and return it."""
    if (state.d, state.n) != (c.d, c.n):
        raise QuditError(
            f"state (d={state.d}, n={state.n}) does not match circuit (d={c.d}, n={c.n})"
        )
    for i, op in _lowered_ops(c):
        try:
            if op.arity == 1:
                apply_1(state, gate_of(op, c.d), op.wires[0], backend=backend)
            else:
                apply_2(state, gate_of(op, c.d), *op.wires, backend=backend)
        except CircuitError:
            raise
        except QuditError as exc:
            raise CircuitError(i, str(exc)) from exc
    return state


def simulate(c: Circuit, initial_digits: Sequence[int] | None = None, *, backend=None) -> StateVector:
    """Run ``c`` from a basis state (all zeros by default)."""
    if initial_digits is None:
        initial_digits = [0] * c.n
    return run(c, basis_state(c.d, c.n, initial_digits), backend=backend)


def unitary_cap() -> int:
    raw = os.environ.get("QUDITKIT_UNITARY_CAP")
    if not raw:
        return DEFAULT_UNITARY_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise QuditError(f"QUDITKIT_UNITARY_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise QuditError(f"QUDITKIT_UNITARY_CAP must be positive, got {cap}")
    return cap


def unitary_of(c: Circuit, *, cap: int | None = None, backend=None) -> np.ndarray:
    """Dense ``N x N`` operator of ``c``; column ``x`` is ``simulate(c, digits(x))``.

    All columns run at once: the basis inputs are stacked as the high digits
    of a ``2n``-wire register whose low ``n`` wires the circuit acts on, so
    each column sees exactly the arithmetic of its own simulation.
    """
    if cap is None:
        cap = unitary_cap()
    size = c.d**c.n
    if size > cap:
        raise UnitaryCapError(size, cap)
    kern = _kernels.get_backend(backend)
    block = np.eye(size, dtype=np.complex128).reshape(-1)
    for _, op in _lowered_ops(c):
        g = gate_of(op, c.d)
        if g.is_diagonal:
            diag = np.diag(g.matrix).copy()
            if op.arity == 1:
                kern.apply_diag_1(block, diag, c.d, op.wires[0])
            else:
                kern.apply_diag_2(block, diag, c.d, *op.wires)
        elif op.arity == 1:
            kern.apply_1(block, g.matrix, c.d, op.wires[0])
        else:
            kern.apply_2(block, g.matrix, c.d, *op.wires)
    # row x of the block holds column x of the operator
    return block.reshape(size, size).T
