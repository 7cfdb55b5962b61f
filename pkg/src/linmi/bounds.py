"""Evaluable bounds on code and combining mutual information, and verifiers.

Every bound is a plain function returning bits. ``verify`` compares a bound
against a measured :class:`MIResult` and produces a :class:`BoundReport`;
the ``check_*`` helpers compute the measurement with the exact engines and
call ``verify``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

import numpy as np

from .channels import BmsChannel, Dmc, mutual_information
from .codes import BinaryLinearCode
from .engines import (
    EXACT_ENUM_LIMIT,
    EXACT_SUBSET_LIMIT,
    MIResult,
    bec_mi_curve,
    bms_mi,
    bsc_mi_exact,
    output_entropy_bsc_exact,
    repeated_input_mi_exact,
)
from .engines._base import exact
from .scalar import (
    LOG2E_HALF,
    alpha,
    binary_entropy,
    entropy,
    iid_bsc_mi_per_symbol,
    mgl_phi,
    psi,
    sdpi_eta_bsc,
    tstar,
)

TOL_VERDICT = 1e-9
Z_SIGMA = 4.0
ESTIMATED_ETA_BAND = 1e-6
EPSILON_GRID_POINTS = 512
REMARK3_CONSTANT = 0.92

HOLDS, VIOLATED, INCONCLUSIVE = "holds", "violated", "inconclusive"


def _capacity(t) -> float:
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"capacity must lie in [0, 1], got {t}")
    return t


def _bec(code: BinaryLinearCode, t: float, limit: int = EXACT_SUBSET_LIMIT) -> float:
    return float(bec_mi_curve(code, [t], limit)[0])


# --- linear-code bounds ------------------------------------------------------


def thm1_bound(code: BinaryLinearCode, t, limit: int = EXACT_SUBSET_LIMIT) -> float:
    """``alpha_t * I_BEC(eta_t)``: lower bound on ``I_BSC(t)`` for shifted linear codes."""
    t = _capacity(t)
    if t == 0.0 or code.k == 0:
        return 0.0
    return float(alpha(t)) * _bec(code, float(sdpi_eta_bsc(t)), limit)


def thm1_normalized(code: BinaryLinearCode, t, limit: int = EXACT_SUBSET_LIMIT) -> float:
    """``I_BEC(eta_t) / (n eta_t)``: the BEC fraction of capacity the BSC fraction dominates."""
    t = _capacity(t)
    eta = float(sdpi_eta_bsc(t))
    if eta == 0.0:
        return 0.0
    return _bec(code, eta, limit) / (code.n * eta)


def sam_psi_bound(code: BinaryLinearCode, t, t1=None, limit: int = EXACT_SUBSET_LIMIT) -> float:
    """``n psi_t(I_BEC(t1) / (n t1))`` for any ``t1 >= eta_t`` (default ``t1 = eta_t``)."""
    t = _capacity(t)
    eta = float(sdpi_eta_bsc(t))
    t1 = eta if t1 is None else _capacity(t1)
    if t1 < eta - 1e-15:
        raise ValueError(f"t1={t1} is below eta_t={eta}; the bound needs t1 >= eta_t")
    if t1 == 0.0 or t == 0.0:
        return 0.0
    x = min(1.0, max(0.0, _bec(code, t1, limit) / (code.n * t1)))
    return code.n * float(psi(t, x))


def sam_mgl_entropy_bound(code: BinaryLinearCode, t, limit: int = EXACT_SUBSET_LIMIT) -> float:
    """``n phi_t(I_BEC(eta_t) / (n eta_t))``: lower bound on ``H(Y^n)`` through BSC(t)."""
    t = _capacity(t)
    eta = float(sdpi_eta_bsc(t))
    if eta == 0.0:
        return float(code.n)
    x = min(1.0, max(0.0, _bec(code, eta, limit) / (code.n * eta)))
    return code.n * float(mgl_phi(t, x))


def cor1_lower(code: BinaryLinearCode, t, limit: int = EXACT_SUBSET_LIMIT) -> float:
    return thm1_bound(code, t, limit)


def cor2_lower(code: BinaryLinearCode, t, limit: int = EXACT_SUBSET_LIMIT) -> float:
    """``alpha_t * I_BEC(t)``, weaker than Theorem 1 because ``t <= eta_t``."""
    t = _capacity(t)
    if t == 0.0:
        return 0.0
    return float(alpha(t)) * _bec(code, t, limit)


def bec_upper(code: BinaryLinearCode, t, limit: int = EXACT_SUBSET_LIMIT) -> float:
    """``I_BEC(t)``, the most capable BMS channel of capacity ``t``."""
    return _bec(code, _capacity(t), limit)


# --- information combining -----------------------------------------------------


def _combining_factor(eta: float, n: int) -> float:
    # (1 - (1 - eta)**n) / eta without cancellation for small eta
    if eta == 1.0:
        return 1.0
    return -math.expm1(n * math.log1p(-eta)) / eta


def combining_bound(I1: float, H: float, eta: float, n: int) -> float:
    """``alpha (1 - (1-eta)**n) H`` with ``alpha = I1 / (eta H)``, i.e. ``I1 (1-(1-eta)**n) / eta``.

    ``eta`` must upper-bound the input-dependent SDPI coefficient for the
    result to be a valid lower bound on ``I(X; Y^n)``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 <= eta <= 1.0:
        raise ValueError("eta must lie in [0, 1]")
    if eta == 0.0:
        if I1 > 0.0:
            raise ValueError("eta = 0 with I(P_X, W) > 0 is impossible")
        return 0.0
    if I1 > eta * H * (1.0 + 1e-9) + 1e-12:
        raise ValueError(f"I1={I1} exceeds eta*H={eta * H}; eta cannot be an SDPI coefficient here")
    return I1 * _combining_factor(eta, n)


def combining_exp_relaxation(I1: float, eta: float, n: int) -> float:
    """``(1 - exp(-n eta)) / eta * I1``, never above :func:`combining_bound`."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 < eta <= 1.0:
        if eta == 0.0 and I1 == 0.0:
            return 0.0
        raise ValueError("eta must lie in (0, 1]")
    return -math.expm1(-n * eta) / eta * I1


def combining_upper_bounds(I1: float, H: float, n: int, c_mc: float | None = None):
    """``(n I1, H, (1 - (1-c_mc)**n) H)``; the last entry is ``None`` without ``c_mc``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    erasure = None
    if c_mc is not None:
        if not 0.0 <= c_mc <= 1.0:
            raise ValueError("c_mc must lie in [0, 1]")
        erasure = (1.0 - (1.0 - c_mc) ** n) * H
    return n * I1, H, erasure


# --- codes over the BEC at rates below capacity ----------------------------


def thm3_bound(n: int, R: float, eps: float, t) -> float:
    """Lower bound on ``I_BSC(t)`` for a rate-R code that is eps-information-capacity achieving."""
    t = _capacity(t)
    if not 0.0 < R < 1.0:
        raise ValueError("R must lie in (0, 1)")
    if not 0.0 <= eps <= R:
        raise ValueError("eps must lie in [0, R]")
    scale = n * (1.0 - eps / R)
    if t < tstar(R):
        return scale * t
    return scale * t * R / float(sdpi_eta_bsc(t))


def epsilon_grid(R: float, points: int = EPSILON_GRID_POINTS) -> np.ndarray:
    return np.linspace(R, 1.0, points)


def estimate_epsilon(code: BinaryLinearCode, grid=None, limit: int = EXACT_SUBSET_LIMIT) -> float:
    """Smallest eps with ``I_BEC(t) >= n (R - eps)`` for every capacity on the grid.

    The default grid runs from ``R`` to 1; since ``I_BEC`` increases with
    ``t`` its minimum over ``t > R`` is the limit at ``R`` itself.
    """
    R = code.rate
    if not 0.0 < R < 1.0:
        raise ValueError(f"code rate must lie in (0, 1), got {R}")
    grid = epsilon_grid(R) if grid is None else np.asarray(grid, dtype=float)
    if grid.size == 0 or np.any(grid < R - 1e-15):
        raise ValueError("epsilon grid must be nonempty with points >= R")
    worst = float(np.min(bec_mi_curve(code, grid, limit))) / code.n
    return max(0.0, R - worst)


# --- verdicts ----------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    """Outcome of comparing a bound with a measured quantity.

    ``slack`` is ``measured - bound`` for lower bounds and ``bound - measured``
    for upper bounds, so a nonnegative slack always means the bound holds.
    """

    bound_name: str
    params: Mapping[str, Any]
    bound_value: float
    measured_value: float
    measured_std_err: float
    slack: float
    verdict: str
    direction: str = "lower"
    method: str = "exact"
    seed: int | None = None
    reason: str = ""
    extra: Mapping[str, Any] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS


def decide(slack: float, std_err: float = 0.0, tol: float = TOL_VERDICT, z: float = Z_SIGMA, band: float = 0.0) -> str:
    """``holds`` iff ``slack >= -tol - z*std_err``; ``band`` widens an inconclusive zone below that."""
    floor = -tol - z * std_err
    if slack >= floor:
        return HOLDS
    if band > 0.0 and slack >= floor - band:
        return INCONCLUSIVE
    return VIOLATED


def _p(params, key):
    if key not in params:
        raise KeyError(f"bound parameters missing {key!r}")
    return params[key]


def _limit(params):
    return params.get("limit", EXACT_SUBSET_LIMIT)


BOUNDS: dict[str, tuple[Callable[[Mapping], float], str]] = {
    "thm1": (lambda p: thm1_bound(_p(p, "code"), _p(p, "t"), _limit(p)), "lower"),
    "thm1_iid": (
        lambda p: _p(p, "n") * float(_p(p, "t")) * float(binary_entropy(_p(p, "p"))),
        "lower",
    ),
    "sam_psi": (lambda p: sam_psi_bound(_p(p, "code"), _p(p, "t"), p.get("t1"), _limit(p)), "lower"),
    "sam_mgl": (lambda p: sam_mgl_entropy_bound(_p(p, "code"), _p(p, "t"), _limit(p)), "lower"),
    "cor1": (lambda p: cor1_lower(_p(p, "code"), _p(p, "t"), _limit(p)), "lower"),
    "cor2": (lambda p: cor2_lower(_p(p, "code"), _p(p, "t"), _limit(p)), "lower"),
    "bec_upper": (lambda p: bec_upper(_p(p, "code"), _p(p, "t"), _limit(p)), "upper"),
    "thm2": (lambda p: combining_bound(_p(p, "I1"), _p(p, "H"), _p(p, "eta"), _p(p, "n")), "lower"),
    "thm2_exp": (lambda p: combining_exp_relaxation(_p(p, "I1"), _p(p, "eta"), _p(p, "n")), "lower"),
    "combining_upper": (
        lambda p: min(x for x in combining_upper_bounds(_p(p, "I1"), _p(p, "H"), _p(p, "n"), p.get("c_mc")) if x is not None),
        "upper",
    ),
    "remark3_universal": (lambda p: LOG2E_HALF * (1.0 - (1.0 - _p(p, "t")) ** _p(p, "n")), "lower"),
    "remark3_092": (lambda p: REMARK3_CONSTANT * (1.0 - (1.0 - _p(p, "t")) ** _p(p, "n")), "lower"),
    "thm3": (lambda p: thm3_bound(_p(p, "n"), _p(p, "R"), _p(p, "eps"), _p(p, "t")), "lower"),
    "lemma1": (lambda p: float(_p(p, "previous_ratio")), "upper"),
}


def verify(
    bound_name: str,
    params: Mapping[str, Any],
    measurement: MIResult,
    tol: float = TOL_VERDICT,
    z: float = Z_SIGMA,
) -> BoundReport:
    """Evaluate ``bound_name`` at ``params`` and judge it against ``measurement``.

    If ``params['eta_source'] == 'estimated'`` the bound rests on a numeric
    lower estimate of eta, and results within ``ESTIMATED_ETA_BAND`` below
    the tolerance are reported as inconclusive rather than violated.
    """
    try:
        evaluate, direction = BOUNDS[bound_name]
    except KeyError:
        raise ValueError(f"unknown bound {bound_name!r}; known: {', '.join(sorted(BOUNDS))}") from None
    value = float(evaluate(params))
    measured = float(measurement.value)
    slack = measured - value if direction == "lower" else value - measured
    band = ESTIMATED_ETA_BAND if params.get("eta_source") == "estimated" else 0.0
    verdict = decide(slack, measurement.std_err, tol, z, band)
    return BoundReport(
        bound_name=bound_name,
        params=dict(params),
        bound_value=value,
        measured_value=measured,
        measured_std_err=float(measurement.std_err),
        slack=slack,
        verdict=verdict,
        direction=direction,
        method=measurement.method,
        seed=measurement.seed,
    )


# --- checks with exact measurements --------------------------------------------


def check_thm1(code: BinaryLinearCode, t, limit: int = EXACT_ENUM_LIMIT) -> BoundReport:
    return verify("thm1", {"code": code, "t": float(t), "limit": limit}, bsc_mi_exact(code, t, limit))


def check_sam_psi(code: BinaryLinearCode, t, t1=None, limit: int = EXACT_ENUM_LIMIT) -> BoundReport:
    params = {"code": code, "t": float(t), "limit": limit}
    if t1 is not None:
        params["t1"] = float(t1)
    return verify("sam_psi", params, bsc_mi_exact(code, t, limit))


def check_sam_mgl(code: BinaryLinearCode, t, limit: int = EXACT_ENUM_LIMIT) -> BoundReport:
    return verify("sam_mgl", {"code": code, "t": float(t), "limit": limit}, exact(output_entropy_bsc_exact(code, t, limit)))


def check_thm1_iid(n: int, p: float, t: float) -> BoundReport:
    """Theorem 1's inequality for an i.i.d. Bern(p) input, which is not a code.

    Both sides are closed forms: ``I_BSC = n g(t)`` and
    ``alpha_t I_BEC(eta_t) = n t h(p)``; the verdict is violated whenever
    ``0 < t < 1`` and ``p`` is not 0, 1/2 or 1.
    """
    measured = exact(n * float(iid_bsc_mi_per_symbol(t, p)))
    return verify("thm1_iid", {"n": n, "p": float(p), "t": float(t)}, measured)


def check_bms(code: BinaryLinearCode, ch: BmsChannel, mode: str = "exact", samples: int = 100_000, seed: int = 0):
    """Corollary 1 and 2 lower bounds plus the BEC upper bound for one BMS channel."""
    t = ch.capacity
    measured = bms_mi(code, ch, mode=mode, samples=samples, seed=seed)
    params = {"code": code, "t": t, "channel": ch}
    return [verify(name, params, measured) for name in ("cor1", "cor2", "bec_upper")]


def check_lemma1(code: BinaryLinearCode, ts, tol: float = 1e-12, limit: int = EXACT_SUBSET_LIMIT):
    """``t -> I_BEC(t)/t`` is non-increasing: one report per successive grid pair."""
    ts = np.asarray(ts, dtype=float)
    if np.any(ts <= 0):
        raise ValueError("lemma1 grid must be strictly positive")
    ratios = bec_mi_curve(code, ts, limit) / ts
    reports = []
    for i in range(1, ts.size):
        params = {"code": code, "t": float(ts[i]), "previous_t": float(ts[i - 1]), "previous_ratio": float(ratios[i - 1])}
        reports.append(verify("lemma1", params, exact(ratios[i]), tol=tol))
    return reports


def check_thm3(code: BinaryLinearCode, t, eps: float | None = None, limit: int = EXACT_ENUM_LIMIT) -> BoundReport:
    if eps is None:
        eps = estimate_epsilon(code)
    params = {"code": code, "n": code.n, "R": code.rate, "eps": eps, "t": float(t)}
    return verify("thm3", params, bsc_mi_exact(code, t, limit))


def check_combining(ch: Dmc, n: int, eta: float, eta_source: str = "closed_form", c_mc: float | None = None):
    """Theorem 2, its exponential relaxation and the upper bounds at block length ``n``."""
    if eta_source not in ("closed_form", "user", "estimated"):
        raise ValueError("eta_source must be closed_form, user or estimated")
    I1 = mutual_information(ch.input_dist, ch.matrix)
    H = entropy(ch.input_dist)
    measured = repeated_input_mi_exact(ch, n)
    params = {"channel": ch, "n": n, "I1": I1, "H": H, "eta": float(eta), "eta_source": eta_source}
    if c_mc is not None:
        params["c_mc"] = float(c_mc)
    return [verify(name, params, measured) for name in ("thm2", "thm2_exp", "combining_upper")]
