"""Compare the numba and numpy kernel backends.

    python benchmarks/compare_backends.py --reps 5

Times H (one wire) and SUMP (two wires) over a range of register shapes,
then a full QFT(2, n) statevector simulation on each backend.
"""

import argparse
import time

from quditkit import _kernels
from quditkit.bench import bench_kernels
from quditkit.circuit import run
from quditkit.qft import qft_circuit
from quditkit.statevec import basis_state

SHAPES = [(2, 10), (2, 16), (2, 20), (3, 8), (3, 12), (5, 8), (8, 6)]


def time_qft(n, backend):
    run(qft_circuit(2, 2), basis_state(2, 2, [0, 0]), backend=backend)
    c = qft_circuit(2, n)
    state = basis_state(2, n, [0] * n)
    t0 = time.perf_counter()
    run(c, state, backend=backend)
    return time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--reps", type=int, default=5)
    parser.add_argument("--qft-n", type=int, default=20)
    args = parser.parse_args()
    backends = sorted(_kernels.BACKENDS)

    print(f"{'d':>3}{'n':>4}{'gate':>6}" + "".join(f"{b + ' ns/amp':>16}" for b in backends))
    for d, n in SHAPES:
        rows = bench_kernels(d, n, args.reps, backends)
        for gate in ("H", "SUMP"):
            cells = [r for r in rows if r.gate == gate]
            print(f"{d:>3}{n:>4}{gate:>6}" + "".join(f"{r.median_ns_per_amplitude:>16.3f}" for r in cells))

    print()
    for b in backends:
        print(f"QFT(2, {args.qft_n}) statevector on {b}: {time_qft(args.qft_n, b):.3f} s")


if __name__ == "__main__":
    main()
