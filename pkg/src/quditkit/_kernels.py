"""Strided statevector kernels.

Two implementations share one calling convention:

* ``numba`` -- ``@njit`` loops, one pass over the state with a length-``d``
  (or ``d*d``) scratch buffer;
* ``numpy`` -- reshaped views updated in fixed-size chunks.

The active backend is ``numba`` unless numba is missing or the environment
variable ``QUDITKIT_DISABLE_NUMBA`` is set to a non-empty value other than
``0``.

Every kernel mutates ``psi`` (a contiguous 1-D complex128 array of length
``d**n``) in place. Wire ``w`` is the digit with stride ``d**w``.
"""

from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

# amplitudes per numpy chunk; bounds the fallback's scratch memory
_CHUNK = 1 << 15


def _split_1(n_amp, d, target):
    lo = d**target
    return n_amp // (lo * d), lo


def _split_2(n_amp, d, a, b):
    lo = d**a
    mid = d ** (b - a - 1)
    return n_amp // (lo * mid * d * d), mid, lo


def _chunks(total, per_item):
    step = max(1, _CHUNK // max(per_item, 1))
    for start in range(0, total, step):
        yield slice(start, min(start + step, total))


# -- numpy fallback ---------------------------------------------------------


def np_apply_1(psi, mat, d, target):
    hi, lo = _split_1(psi.shape[0], d, target)
    view = psi.reshape(hi, d, lo)
    if hi >= lo:
        for s in _chunks(hi, d * lo):
            view[s] = np.einsum("ij,ajb->aib", mat, view[s])
    else:
        for s in _chunks(lo, d * hi):
            view[:, :, s] = np.einsum("ij,ajb->aib", mat, view[:, :, s])


def np_apply_diag_1(psi, diag, d, target):
    hi, lo = _split_1(psi.shape[0], d, target)
    psi.reshape(hi, d, lo)[...] *= diag[None, :, None]


def _five_axis(psi, d, control, target):
    a, b = min(control, target), max(control, target)
    hi, mid, lo = _split_2(psi.shape[0], d, a, b)
    return psi.reshape(hi, d, mid, d, lo), control == b


def np_apply_2(psi, mat, d, control, target):
    view, control_high = _five_axis(psi, d, control, target)
    g = mat.reshape(d, d, d, d)
    spec = "CTct,hcmtl->hCmTl" if control_high else "CTct,htmcl->hTmCl"
    hi, _, mid, _, lo = view.shape
    per = d * d
    if hi >= mid and hi >= lo:
        for s in _chunks(hi, per * mid * lo):
            view[s] = np.einsum(spec, g, view[s])
    elif mid >= lo:
        for s in _chunks(mid, per * hi * lo):
            view[:, :, s] = np.einsum(spec, g, view[:, :, s])
    else:
        for s in _chunks(lo, per * hi * mid):
            view[..., s] = np.einsum(spec, g, view[..., s])


def np_apply_diag_2(psi, diag, d, control, target):
    view, control_high = _five_axis(psi, d, control, target)
    phases = diag.reshape(d, d)
    if not control_high:
        phases = phases.T
    view *= phases[None, :, None, :, None]


numpy_backend = SimpleNamespace(
    name="numpy",
    apply_1=np_apply_1,
    apply_diag_1=np_apply_diag_1,
    apply_2=np_apply_2,
    apply_diag_2=np_apply_diag_2,
)


# -- numba ------------------------------------------------------------------


def _build_numba_backend():
    from numba import njit

    @njit(cache=True, nogil=True)
    def _apply_1(psi, mat, d, stride):
        n_amp = psi.shape[0]
        block = stride * d
        scratch = np.empty(d, dtype=np.complex128)
        for base_hi in range(0, n_amp, block):
            for lo in range(stride):
                base = base_hi + lo
                for j in range(d):
                    scratch[j] = psi[base + j * stride]
                for i in range(d):
                    acc = 0j
                    for j in range(d):
                        acc += mat[i, j] * scratch[j]
                    psi[base + i * stride] = acc

    @njit(cache=True, nogil=True)
    def _apply_diag_1(psi, diag, d, stride):
        block = stride * d
        for base_hi in range(0, psi.shape[0], block):
            for j in range(d):
                phase = diag[j]
                off = base_hi + j * stride
                for lo in range(stride):
                    psi[off + lo] *= phase

    @njit(cache=True, nogil=True)
    def _apply_2(psi, mat, d, s_control, s_target):
        s_lo = min(s_control, s_target)
        s_hi = max(s_control, s_target)
        dd = d * d
        scratch = np.empty(dd, dtype=np.complex128)
        for base_hi in range(0, psi.shape[0], s_hi * d):
            for base_mid in range(base_hi, base_hi + s_hi, s_lo * d):
                for base in range(base_mid, base_mid + s_lo):
                    for jc in range(d):
                        for jt in range(d):
                            scratch[jc * d + jt] = psi[base + jc * s_control + jt * s_target]
                    for oc in range(d):
                        for ot in range(d):
                            r = oc * d + ot
                            acc = 0j
                            for c in range(dd):
                                acc += mat[r, c] * scratch[c]
                            psi[base + oc * s_control + ot * s_target] = acc

    @njit(cache=True, nogil=True)
    def _apply_diag_2(psi, diag, d, s_control, s_target):
        s_lo = min(s_control, s_target)
        s_hi = max(s_control, s_target)
        low_is_control = s_lo == s_control
        for base_hi in range(0, psi.shape[0], s_hi * d):
            for j_hi in range(d):
                for base_mid in range(base_hi + j_hi * s_hi, base_hi + (j_hi + 1) * s_hi, s_lo * d):
                    for j_lo in range(d):
                        if low_is_control:
                            phase = diag[j_lo * d + j_hi]
                        else:
                            phase = diag[j_hi * d + j_lo]
                        off = base_mid + j_lo * s_lo
                        for lo in range(s_lo):
                            psi[off + lo] *= phase

    return SimpleNamespace(
        name="numba",
        apply_1=lambda psi, mat, d, t: _apply_1(psi, mat, d, d**t),
        apply_diag_1=lambda psi, diag, d, t: _apply_diag_1(psi, diag, d, d**t),
        apply_2=lambda psi, mat, d, c, t: _apply_2(psi, mat, d, d**c, d**t),
        apply_diag_2=lambda psi, diag, d, c, t: _apply_diag_2(psi, diag, d, d**c, d**t),
    )


try:
    numba_backend = _build_numba_backend()
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba_backend = None

BACKENDS = {"numpy": numpy_backend}
if numba_backend is not None:
    BACKENDS["numba"] = numba_backend


def _select():
    flag = os.environ.get("QUDITKIT_DISABLE_NUMBA", "")
    if numba_backend is None or flag not in ("", "0"):
        return numpy_backend
    return numba_backend


active = _select()


def get_backend(name=None):
    if name is None:
        return active
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown kernel backend {name!r}; available: {sorted(BACKENDS)}"
        ) from None
