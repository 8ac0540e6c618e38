"""Command-line interface: ``quditkit {gate,run,qft,bench}``.

Exit codes: 0 success, 1 parse/runtime error or failed verification,
2 usage error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import _kernels, gates
from .bench import bench_kernels
from .circuit import simulate
from .circuit_text import ParseError, load, parse_angle
from .errors import QuditError, UnitaryCapError
from .qft import DEFAULT_TOLERANCE, verify_qft
from .statevec import index_to_digits

EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

GATE_NAMES = ("X", "Z", "H", "S", "T", "P", "K", "SUMX", "SUMP")


def _dimension(text):
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if d < 2:
        raise argparse.ArgumentTypeError(f"dimension must be >= 2, got {d}")
    return d


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _angle(text):
    try:
        return parse_angle(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _clean(x: float) -> float:
    return 0.0 if abs(x) < 5e-13 else x


def format_complex(z: complex) -> str:
    return f"{_clean(z.real):.6g}{_clean(z.imag):+.6g}i"


def basis_label(digits, d) -> str:
    """Digits with wire 0 rightmost; comma-separated when ``d > 10``."""
    sep = "," if d > 10 else ""
    return sep.join(str(x) for x in reversed(digits))


def _parse_input(text, d, n):
    """Inverse of :func:`basis_label`; returns digits in wire order."""
    if "," in text:
        parts = text.split(",")
    elif d <= 10:
        parts = list(text)
    else:
        parts = [text]
    try:
        digits = [int(p) for p in reversed(parts)]
    except ValueError:
        raise QuditError(f"malformed input digits {text!r}") from None
    if len(digits) != n:
        raise QuditError(f"expected {n} input digits, got {len(digits)}")
    for x in digits:
        if not 0 <= x < d:
            raise QuditError(f"input digit {x} out of range [0, {d})")
    return digits


def _print_json(obj):
    print(json.dumps(obj))


def cmd_gate(args, parser):
    if args.name in ("P", "SUMP") and args.theta is None:
        parser.error(f"--theta is required for gate {args.name}")
    if args.name not in ("P", "SUMP") and args.theta is not None:
        parser.error(f"gate {args.name} takes no --theta")
    build = {
        "X": gates.pauli_x,
        "Z": gates.pauli_z,
        "H": gates.hadamard,
        "S": gates.s_gate,
        "T": gates.t_gate,
        "K": gates.complement_gate,
        "SUMX": gates.sumx,
    }
    if args.name == "P":
        g = gates.phase_gate(args.d, args.theta)
    elif args.name == "SUMP":
        g = gates.sump(args.d, args.theta)
    else:
        g = build[args.name](args.d)
    if args.adjoint:
        g = gates.adjoint(g)
    m = g.matrix
    if args.json:
        _print_json(
            {
                "name": args.name,
                "d": args.d,
                "theta": args.theta,
                "adjoint": args.adjoint,
                "arity": g.arity,
                "size": g.size,
                "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in m],
            }
        )
    else:
        cells = [[format_complex(z) for z in row] for row in m]
        width = max(len(c) for row in cells for c in row)
        for row in cells:
            print("  ".join(c.rjust(width) for c in row))
    return EXIT_OK


def cmd_run(args, parser):
    try:
        circuit = load(args.circuit_file)
    except ParseError as exc:
        print(f"{args.circuit_file}:{exc.line}:{exc.column}: {exc.message}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"cannot read {args.circuit_file}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    d, n = circuit.d, circuit.n
    if args.input is None:
        digits = [0] * n
    else:
        try:
            digits = _parse_input(args.input, d, n)
        except QuditError as exc:
            parser.error(str(exc))
    state = simulate(circuit, digits)
    probs = state.probabilities()
    order = np.argsort(-probs, kind="stable")
    order = [int(x) for x in order if probs[x] > 1e-12][: args.top_k]
    rows = []
    for x in order:
        amp = complex(state.amplitudes[x])
        rows.append((basis_label(index_to_digits(x, d, n), d), x, amp, float(probs[x])))
    if args.json:
        _print_json(
            {
                "d": d,
                "n": n,
                "input": digits,
                "top_k": args.top_k,
                "norm": state.norm(),
                "amplitudes": [
                    {"label": lab, "index": x, "re": a.real, "im": a.imag, "prob": p}
                    for lab, x, a, p in rows
                ],
            }
        )
    else:
        for lab, _, amp, p in rows:
            print(f"|{lab}⟩ {p:.6f} {format_complex(amp)}")
    return EXIT_OK


def cmd_qft(args, parser):
    try:
        report = verify_qft(
            args.d, args.n, args.tolerance, include_swaps=not args.no_swaps
        )
    except UnitaryCapError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CAP
    if args.json:
        _print_json(report.to_dict())
    else:
        for key, value in report.to_dict().items():
            print(f"{key}: {value}")
    return EXIT_OK if report.passed else EXIT_ERROR


def cmd_bench(args, parser):
    if args.backend == "both":
        backends = sorted(_kernels.BACKENDS)
    elif args.backend == "active":
        backends = [_kernels.active.name]
    else:
        if args.backend not in _kernels.BACKENDS:
            parser.error(f"backend {args.backend!r} is not available")
        backends = [args.backend]
    try:
        rows = bench_kernels(args.d, args.n, args.reps, backends)
    except MemoryError:
        print(f"cannot allocate a statevector of {args.d}**{args.n} amplitudes", file=sys.stderr)
        return EXIT_CAP
    if args.json:
        _print_json(
            {
                "d": args.d,
                "n": args.n,
                "reps": args.reps,
                "rows": [
                    {
                        "gate": r.gate,
                        "backend": r.backend,
                        "amplitudes": r.amplitudes,
                        "median_ns_per_amplitude": r.median_ns_per_amplitude,
                        "min_ns_per_amplitude": r.min_ns_per_amplitude,
                    }
                    for r in rows
                ],
            }
        )
    else:
        print(f"{'gate':<6}{'backend':<9}{'amplitudes':>12}{'median ns/amp':>16}{'min ns/amp':>14}")
        for r in rows:
            print(
                f"{r.gate:<6}{r.backend:<9}{r.amplitudes:>12}"
                f"{r.median_ns_per_amplitude:>16.3f}{r.min_ns_per_amplitude:>14.3f}"
            )
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="quditkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gate", help="print a gate matrix")
    p.add_argument("--name", required=True, choices=GATE_NAMES)
    p.add_argument("--d", required=True, type=_dimension)
    p.add_argument("--theta", type=_angle, help="radians, pi/<k> or pi*<x>")
    p.add_argument("--adjoint", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gate, subparser=p)

    p = sub.add_parser("run", help="simulate a .qc circuit file")
    p.add_argument("circuit_file")
    p.add_argument("--input", help="input basis digits, wire 0 rightmost (e.g. 012 or 1,0,11)")
    p.add_argument("--top-k", type=_positive, default=16)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_run, subparser=p)

    p = sub.add_parser("qft", help="verify the QFT circuit against the inverse DFT")
    p.add_argument("--d", required=True, type=_dimension)
    p.add_argument("--n", required=True, type=_positive)
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.add_argument("--no-swaps", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_qft, subparser=p)

    p = sub.add_parser("bench", help="time the strided gate kernels")
    p.add_argument("--d", required=True, type=_dimension)
    p.add_argument("--n", required=True, type=_positive)
    p.add_argument("--reps", type=_positive, default=5)
    p.add_argument("--backend", default="active", choices=("active", "numba", "numpy", "both"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench, subparser=p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, args.subparser)
    except UnitaryCapError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CAP
    except QuditError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
