"""Lower estimates of the input-dependent SDPI coefficient ``eta(P_X, W)``."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize_scalar

from ..channels import Dmc, mutual_information
from ..scalar import entropy

_SINGULAR_GAP = 1e-4


class EtaEstimate(NamedTuple):
    eta: float
    note: str


def _kl(a: np.ndarray, b: np.ndarray) -> float:
    mask = a > 0
    return float(np.sum(a[mask] * np.log(a[mask] / b[mask])))


def chi2_contraction(ch: Dmc) -> float:
    """Squared second singular value of ``sqrt(P(x)) W(y|x) / sqrt(P_Y(y))``."""
    P, W = ch.input_dist, ch.matrix
    py = P @ W
    cols = py > 0
    B = np.sqrt(P)[:, None] * W[:, cols] / np.sqrt(py[cols])[None, :]
    sv = np.linalg.svd(B, compute_uv=False)
    return float(sv[1] ** 2) if sv.size > 1 else 0.0


def _kl_ratio(ch: Dmc, q0: float) -> float:
    Q = np.array([q0, 1.0 - q0])
    den = _kl(Q, ch.input_dist)
    if den <= 0:
        return 0.0
    return _kl(Q @ ch.matrix, ch.output_dist) / den


def kl_ratio_search(ch: Dmc, points: int = 400) -> float:
    """Sup over ``Q`` of ``D(QW || P_X W) / D(Q || P_X)`` for binary inputs.

    Grid search over ``Q(0)`` followed by bounded scalar refinement in the
    bracket around the best grid point.
    """
    if ch.n_inputs != 2:
        raise ValueError("KL-ratio search is implemented for binary inputs only")
    p0 = ch.input_dist[0]
    grid = np.linspace(0.0, 1.0, points + 1)
    # the ratio is 0/0 at Q = P_X; its limit there is the chi-square term
    grid = grid[np.abs(grid - p0) > _SINGULAR_GAP]
    vals = np.array([_kl_ratio(ch, q) for q in grid])
    best = int(np.argmax(vals))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, grid.size - 1)]
    if lo < p0 < hi:
        # never let the bracket straddle the removable singularity at Q = P_X
        lo, hi = (lo, p0 - _SINGULAR_GAP) if grid[best] < p0 else (p0 + _SINGULAR_GAP, hi)
    res = minimize_scalar(lambda q: -_kl_ratio(ch, q), bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    return float(max(vals[best], -res.fun))


def sdpi_eta_estimate(ch: Dmc) -> EtaEstimate:
    """Best available LOWER estimate of ``eta(P_X, W)``.

    Maximum of the chi-square contraction, the KL-ratio search (binary input
    only) and ``I(P_X, W) / H(P_X)``. Never a certified value of the true
    coefficient: a bound fed with it must be read as ``estimated``.
    """
    P = ch.input_dist
    if np.count_nonzero(P) < 2:
        raise ValueError("eta is undefined for a point-mass input (H(P_X) = 0)")
    if np.any(P == 0):
        raise ValueError("SDPI estimate requires a full-support input distribution")
    parts = {
        "chi2": chi2_contraction(ch),
        "mi_ratio": mutual_information(P, ch.matrix) / entropy(P),
    }
    if ch.n_inputs == 2:
        parts["kl_search"] = kl_ratio_search(ch)
    eta = float(min(1.0, max(parts.values())))
    detail = ", ".join(f"{k}={v:.12g}" for k, v in parts.items())
    return EtaEstimate(eta, f"lower estimate (max of {detail})")
