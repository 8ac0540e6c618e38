"""Kernel timing for one- and two-wire gate application."""

from __future__ import annotations

import gc
import statistics
import time
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .gates import hadamard, sump
from .statevec import StateVector, apply_1, apply_2


@dataclass(frozen=True)
class BenchRow:
    gate: str
    backend: str
    amplitudes: int
    reps: int
    median_ns_per_amplitude: float
    min_ns_per_amplitude: float


def _uniform_state(d, n):
    size = d**n
    return StateVector(d, n, np.full(size, 1 / np.sqrt(size), dtype=np.complex128))


def _time(fn, reps):
    fn()  # warm-up; triggers JIT compilation
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - t0)
    return samples


def bench_kernels(d: int, n: int, reps: int, backends=None) -> list[BenchRow]:
    """Time ``H`` on the top wire and ``SUMP`` between wires 0 and ``n - 1``.

    The SUMP row is omitted when ``n == 1``.
    """
    if reps < 1:
        raise ValueError(f"reps must be >= 1, got {reps}")
    names = backends or [_kernels.active.name]
    state = _uniform_state(d, n)
    size = len(state)
    h = hadamard(d)
    p = sump(d, np.pi / d)
    rows = []
    for name in names:
        _kernels.get_backend(name)
        cases = [("H", lambda: apply_1(state, h, n - 1, backend=name))]
        if n >= 2:
            cases.append(("SUMP", lambda: apply_2(state, p, 0, n - 1, backend=name)))
        for gate, fn in cases:
            gc.collect()
            samples = _time(fn, reps)
            rows.append(
                BenchRow(
                    gate=gate,
                    backend=name,
                    amplitudes=size,
                    reps=reps,
                    median_ns_per_amplitude=statistics.median(samples) / size,
                    min_ns_per_amplitude=min(samples) / size,
                )
            )
    return rows
