"""Scalar information-theoretic functions on binary channels.

All quantities are in bits. Functions accept Python floats or numpy arrays
and return the same kind. Logarithms are taken in natural base internally
and converted once.
"""

from __future__ import annotations

import math

import numpy as np

LN2 = math.log(2.0)
LOG2E_HALF = 0.5 / LN2  # log2(e)/2, the t -> 0 limit of alpha
TOL_INV = 1e-12

_BISECT_ITERS = 80


def _as_array(x, name):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _ret(arr, scalar):
    return float(arr) if scalar else arr


def _check_unit(arr, name, hi=1.0):
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > hi):
        raise ValueError(f"{name} must lie in [0, {hi:g}]")


def _xlnx(x):
    # x * ln(x) with 0 ln 0 = 0
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = x[pos] * np.log(x[pos])
    return out


def binary_entropy(p):
    """Binary entropy ``h(p)`` in bits, with ``h(0) = h(1) = 0``."""
    arr, scalar = _as_array(p, "p")
    _check_unit(arr, "p")
    arr = np.atleast_1d(arr)
    q = 1.0 - arr
    # (1-p) ln(1-p) via log1p keeps precision for small p
    tail = np.zeros_like(arr)
    inner = (arr > 0) & (arr < 1)
    tail[inner] = q[inner] * np.log1p(-arr[inner])
    h = -(_xlnx(arr) + tail) / LN2
    h[(arr == 0) | (arr == 1)] = 0.0
    h[arr == 0.5] = 1.0
    return _ret(h.reshape(np.shape(p)) if not scalar else h[0], scalar)


def binary_entropy_inv(y):
    """Inverse of ``h`` restricted to ``[0, 1/2]``.

    Bisection on ``p`` run to floating-point convergence, so the returned
    crossover is within ``TOL_INV`` of the true preimage.
    """
    arr, scalar = _as_array(y, "y")
    _check_unit(arr, "y")
    arr = np.atleast_1d(arr).copy()
    lo = np.zeros_like(arr)
    hi = np.full_like(arr, 0.5)
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        below = binary_entropy(mid) < arr
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    p = 0.5 * (lo + hi)
    p[arr == 0.0] = 0.0
    p[arr == 1.0] = 0.5
    return _ret(p.reshape(np.shape(y)) if not scalar else p[0], scalar)


def star(a, b):
    """Binary convolution ``a(1-b) + b(1-a)``: crossover of two cascaded BSCs."""
    a_arr, sa = _as_array(a, "a")
    b_arr, sb = _as_array(b, "b")
    _check_unit(a_arr, "a")
    _check_unit(b_arr, "b")
    out = a_arr * (1.0 - b_arr) + b_arr * (1.0 - a_arr)
    return _ret(out, sa and sb)


def _bsc_capacity_from_bias(delta):
    # 1 - h((1 - delta)/2) written without cancellation near delta = 0
    d = np.atleast_1d(np.asarray(delta, dtype=float))
    up = (1.0 + d) * np.log1p(d)
    down = np.zeros_like(d)
    inner = d < 1.0
    down[inner] = (1.0 - d[inner]) * np.log1p(-d[inner])
    return (up + down) / (2.0 * LN2)


def bsc_bias(t):
    """Return ``1 - 2 h^{-1}(1 - t)``, the output bias of a BSC of capacity t.

    Solved directly on the bias scale, which stays accurate as ``t -> 0``
    where the crossover approaches 1/2.
    """
    arr, scalar = _as_array(t, "t")
    _check_unit(arr, "t")
    arr = np.atleast_1d(arr).copy()
    lo = np.zeros_like(arr)
    hi = np.ones_like(arr)
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        below = _bsc_capacity_from_bias(mid) < arr
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    d = 0.5 * (lo + hi)
    d[arr == 0.0] = 0.0
    d[arr == 1.0] = 1.0
    return _ret(d.reshape(np.shape(t)) if not scalar else d[0], scalar)


def bsc_crossover(t):
    """Crossover ``h^{-1}(1 - t)`` of the BSC with capacity ``t``."""
    d = bsc_bias(t)
    return (1.0 - d) / 2.0


def sdpi_eta_bsc(t):
    """SDPI coefficient ``(1 - 2 h^{-1}(1 - t))^2`` of a BSC with capacity t."""
    d = bsc_bias(t)
    return d * d


def alpha(t):
    """Ratio ``t / eta_t``; at ``t = 0`` the limit ``log2(e)/2`` is returned."""
    arr, scalar = _as_array(t, "t")
    _check_unit(arr, "t")
    arr = np.atleast_1d(arr)
    eta = np.atleast_1d(sdpi_eta_bsc(arr))
    out = np.full_like(arr, LOG2E_HALF)
    pos = arr > 0
    out[pos] = arr[pos] / eta[pos]
    out[arr == 1.0] = 1.0
    return _ret(out.reshape(np.shape(t)) if not scalar else out[0], scalar)


def mgl_phi(t, x):
    """Mrs. Gerber's Lemma function ``h(h^{-1}(1-t) * h^{-1}(x))``."""
    t_arr, st = _as_array(t, "t")
    x_arr, sx = _as_array(x, "x")
    _check_unit(t_arr, "t")
    _check_unit(x_arr, "x")
    p = bsc_crossover(t_arr)
    q = binary_entropy_inv(x_arr)
    out = binary_entropy(np.clip(star(p, q), 0.0, 1.0))
    # exact values on the degenerate edges
    out = np.where(x_arr == 1.0, 1.0, out)
    out = np.where(t_arr == 1.0, x_arr, out)
    out = np.where(t_arr == 0.0, 1.0, out)
    return _ret(np.asarray(out, dtype=float), st and sx)


def psi(t, x):
    """``phi_t(x) - (1 - t)``; maps [0, 1] onto [0, t] and lies below ``t x``."""
    t_arr, st = _as_array(t, "t")
    x_arr, sx = _as_array(x, "x")
    out = np.asarray(mgl_phi(t_arr, x_arr), dtype=float) - (1.0 - t_arr)
    out = np.where(x_arr == 0.0, 0.0, out)
    out = np.where(x_arr == 1.0, t_arr + 0.0 * out, out)
    return _ret(np.asarray(out, dtype=float), st and sx)


def tstar(R):
    """Capacity ``t*`` at which ``eta_{t*} = R``: ``1 - h((1 - sqrt R)/2)``."""
    arr, scalar = _as_array(R, "R")
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise ValueError("R must lie in (0, 1)")
    out = 1.0 - np.asarray(binary_entropy((1.0 - np.sqrt(arr)) / 2.0))
    return _ret(out, scalar)


def iid_bsc_mi_per_symbol(t, p):
    """Per-symbol MI of an i.i.d. Bern(p) input through a BSC of capacity t."""
    t_arr, st = _as_array(t, "t")
    p_arr, sp = _as_array(p, "p")
    _check_unit(t_arr, "t")
    _check_unit(p_arr, "p")
    crossover = bsc_crossover(t_arr)
    out = np.asarray(binary_entropy(np.clip(star(p_arr, crossover), 0.0, 1.0))) - (1.0 - t_arr)
    out = np.where(t_arr == 1.0, np.asarray(binary_entropy(p_arr)) + 0.0 * out, out)
    out = np.where(t_arr == 0.0, 0.0, out)
    return _ret(np.asarray(out, dtype=float), st and sp)


def entropy(pmf) -> float:
    """Shannon entropy in bits of a probability vector (zeros skipped)."""
    pmf = np.asarray(pmf, dtype=float).ravel()
    pos = pmf[pmf > 1e-300]
    return float(-np.sum(pos * np.log(pos)) / LN2)
