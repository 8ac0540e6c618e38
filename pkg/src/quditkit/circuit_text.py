"""Line-oriented text format for circuits (``.qc`` files).

Example::

    # two-qutrit fragment
    qudits d=3 n=2
    H 1
    SUMP 0 1 theta=pi/3
    SWAP 0 1

One statement per line, ``#`` comments, blank lines ignored. The header must
be the first statement. Angles are radians, written as a decimal literal,
``pi/<k>`` for a positive integer ``k``, or ``pi*<decimal>``.
"""

from __future__ import annotations

import math
import re

from .circuit import KINDS, ONE_WIRE, PARAMETRIC, Circuit, CircuitOp

_HEADER = re.compile(r"qudits\s+d=(\S+)\s+n=(\S+)")
_DECIMAL = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_PI_DIV = re.compile(r"(-?)pi/(\d+)")
_PI_MUL = re.compile(r"(-?)pi\*(" + _DECIMAL.pattern + r")")
_INT = re.compile(r"\d+")


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


def parse_angle(text: str) -> float:
    """Value of an angle literal; raises ``ValueError`` if malformed."""
    m = _PI_DIV.fullmatch(text)
    if m:
        k = int(m.group(2))
        if k == 0:
            raise ValueError("pi/<k> needs a positive k")
        value = math.pi / k
        return -value if m.group(1) else value
    m = _PI_MUL.fullmatch(text)
    if m:
        value = math.pi * float(m.group(2))
        return -value if m.group(1) else value
    if _DECIMAL.fullmatch(text):
        return float(text)
    raise ValueError(f"malformed angle {text!r}")


def _tokens(line: str):
    """Yield ``(column, token)`` with 1-based columns."""
    for m in re.finditer(r"\S+", line):
        yield m.start() + 1, m.group()


def parse(text: str) -> Circuit:
    header = None
    ops = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip("\r")
        toks = list(_tokens(line))
        if not toks:
            continue
        col, word = toks[0]
        if word == "qudits":
            if header is not None:
                raise ParseError(lineno, col, "duplicate header")
            header = _parse_header(lineno, col, line)
            continue
        if header is None:
            raise ParseError(lineno, col, "missing header; expected 'qudits d=<int> n=<int>' first")
        ops.append(_parse_op(lineno, toks, *header))
    if header is None:
        raise ParseError(1, 1, "missing header; expected 'qudits d=<int> n=<int>'")
    return Circuit(header[0], header[1], tuple(ops))


def _parse_header(lineno, col, line):
    m = _HEADER.fullmatch(line.strip())
    if not m:
        raise ParseError(lineno, col, "malformed header; expected 'qudits d=<int> n=<int>'")
    values = []
    for name, raw, lower in (("d", m.group(1), 2), ("n", m.group(2), 1)):
        if not _INT.fullmatch(raw) or int(raw) < lower:
            at = line.index(f"{name}=") + 1
            raise ParseError(lineno, at, f"{name} must be an integer >= {lower}, got {raw!r}")
        values.append(int(raw))
    return tuple(values)


def _parse_op(lineno, toks, d, n):
    col, kind = toks[0]
    if kind not in KINDS:
        raise ParseError(lineno, col, f"unknown mnemonic {kind!r}")
    arity = 1 if kind in ONE_WIRE else 2
    args = toks[1:]
    theta = theta_text = None
    if kind in PARAMETRIC:
        if len(args) != arity + 1 or not args[-1][1].startswith("theta="):
            raise ParseError(lineno, col, f"{kind} expects {arity} wire(s) and theta=<angle>")
        acol, atok = args.pop()
        theta_text = atok[len("theta="):]
        try:
            theta = parse_angle(theta_text)
        except ValueError as exc:
            raise ParseError(lineno, acol, str(exc)) from None
        if not math.isfinite(theta):
            raise ParseError(lineno, acol, f"angle {theta_text!r} is not finite")
    if len(args) != arity:
        for acol, atok in args:
            if atok.startswith("theta="):
                raise ParseError(lineno, acol, f"{kind} takes no angle")
        raise ParseError(lineno, col, f"{kind} expects {arity} wire(s), got {len(args)}")
    wires = []
    for wcol, wtok in args:
        if not _INT.fullmatch(wtok):
            raise ParseError(lineno, wcol, f"wire index must be a non-negative integer, got {wtok!r}")
        w = int(wtok)
        if w >= n:
            raise ParseError(lineno, wcol, f"wire {w} out of range for n={n}")
        wires.append(w)
    if arity == 2 and wires[0] == wires[1]:
        raise ParseError(lineno, args[1][0], f"{kind} needs two distinct wires, got {wires[0]} twice")
    return CircuitOp(kind, tuple(wires), theta, theta_text)


def format_angle(op: CircuitOp) -> str:
    """Angle literal for ``op``, preferring the text it was written with."""
    if op.theta_text is not None:
        try:
            if parse_angle(op.theta_text) == op.theta:
                return op.theta_text
        except ValueError:
            pass
    return repr(op.theta)


def serialize(c: Circuit) -> str:
    lines = [f"qudits d={c.d} n={c.n}"]
    for op in c.ops:
        parts = [op.kind, *map(str, op.wires)]
        if op.theta is not None:
            parts.append(f"theta={format_angle(op)}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def load(path) -> Circuit:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse(fh.read())


def dump(c: Circuit, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(c))
