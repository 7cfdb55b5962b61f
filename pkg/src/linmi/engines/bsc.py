"""Mutual information of shifted linear codes over (heterogeneous) BSCs.

For ``Y = X + Z`` with ``X`` uniform on ``C + u``, the output law is constant
on each coset of ``C``: ``P(y) = 2**-k M(s)`` where ``M(s)`` is the noise mass
of the coset with syndrome ``s = syn(y + u)``. Hence

    H(Y) = k + H(M),    I(X; Y) = k + H(M) - H(Z),

and ``M`` is either a coset-weight-enumerator product (equal crossovers) or
a grouped sum of the product noise law (unequal crossovers).
"""

from __future__ import annotations

import numpy as np

from ..codes import BinaryLinearCode, coset_enumerator_table, syndrome_table
from ..scalar import LN2, binary_entropy, bsc_crossover
from ._base import EXACT_ENUM_LIMIT, EngineLimitError, MIResult, exact

_CLAMP = 1e-300


def _entropy_rows(mass: np.ndarray) -> np.ndarray:
    m = np.where(mass > _CLAMP, mass, 1.0)
    return -np.sum(np.where(mass > _CLAMP, mass * np.log(m), 0.0), axis=-1) / LN2


def _check_size(code: BinaryLinearCode, limit: int):
    if code.n > limit:
        raise EngineLimitError(
            f"exact BSC enumeration limited to n <= {limit} (got n={code.n}, cost 2**n)"
        )


def _coset_mass_homogeneous(code: BinaryLinearCode, ps: np.ndarray) -> np.ndarray:
    table = coset_enumerator_table(code).astype(float)
    w = np.arange(code.n + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        probs = ps[None, :] ** w[:, None] * (1.0 - ps[None, :]) ** (code.n - w)[:, None]
    return (table @ probs).T  # (len(ps), cosets)


def output_entropy_curve(code: BinaryLinearCode, ts, limit: int = EXACT_ENUM_LIMIT) -> np.ndarray:
    """Exact ``H(Y^n)`` through a BSC of each capacity in ``ts``."""
    _check_size(code, limit)
    ps = np.atleast_1d(np.asarray(bsc_crossover(np.asarray(ts, dtype=float)), dtype=float))
    mass = _coset_mass_homogeneous(code, ps)
    return code.k + _entropy_rows(mass)


def bsc_mi_curve(code: BinaryLinearCode, ts, limit: int = EXACT_ENUM_LIMIT) -> np.ndarray:
    """Exact ``I_BSC(t)`` on an array of capacities."""
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    ps = np.atleast_1d(np.asarray(bsc_crossover(ts), dtype=float))
    h_noise = code.n * np.atleast_1d(np.asarray(binary_entropy(ps), dtype=float))
    out = output_entropy_curve(code, ts, limit) - h_noise
    out[ts == 1.0] = code.k
    out[ts == 0.0] = 0.0
    return np.maximum(out, 0.0)


def bsc_mi_exact(code: BinaryLinearCode, t, limit: int = EXACT_ENUM_LIMIT) -> MIResult:
    """Exact ``I_BSC(t)`` for ``X ~ Uniform(C + u)``."""
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"capacity must lie in [0, 1], got {t}")
    return exact(bsc_mi_curve(code, [t], limit)[0])


def output_entropy_bsc_exact(code: BinaryLinearCode, t, limit: int = EXACT_ENUM_LIMIT) -> float:
    """Exact ``H(Y^n)`` through the BSC of capacity ``t``."""
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"capacity must lie in [0, 1], got {t}")
    if t == 1.0:
        return float(code.k)
    if t == 0.0:
        return float(code.n)
    return float(output_entropy_curve(code, [t], limit)[0])


def _noise_law(crossovers: np.ndarray) -> np.ndarray:
    """Product noise law over all ``2**n`` patterns, one row per crossover vector."""
    batch, n = crossovers.shape
    law = np.ones((batch, 1))
    for i in range(n):
        p = crossovers[:, i : i + 1]
        law = np.concatenate([law * (1.0 - p), law * p], axis=1)
    return law


def _coset_order(code: BinaryLinearCode) -> np.ndarray:
    return np.argsort(syndrome_table(code), kind="stable")


def heterogeneous_mi_batch(code: BinaryLinearCode, crossovers, limit: int = EXACT_ENUM_LIMIT) -> np.ndarray:
    """Exact MI when coordinate ``i`` sees a BSC(``p_i``), one row per vector."""
    _check_size(code, limit)
    P = np.atleast_2d(np.asarray(crossovers, dtype=float))
    if P.shape[1] != code.n:
        raise ValueError(f"expected {code.n} crossovers per row, got {P.shape[1]}")
    if np.any(P < 0) or np.any(P > 1):
        raise ValueError("crossovers must lie in [0, 1]")
    h_noise = np.asarray(binary_entropy(P), dtype=float).reshape(P.shape).sum(axis=1)
    order = _coset_order(code)
    cosets, size = 1 << (code.n - code.k), 1 << code.k
    out = np.empty(P.shape[0])
    # keep each block at about 2**22 doubles
    step = max(1, (1 << 22) >> code.n)
    for lo in range(0, P.shape[0], step):
        law = _noise_law(P[lo : lo + step])
        mass = law[:, order].reshape(-1, cosets, size).sum(axis=2)
        out[lo : lo + step] = code.k + _entropy_rows(mass) - h_noise[lo : lo + step]
    return np.maximum(out, 0.0)


def heterogeneous_bsc_mi_exact(code: BinaryLinearCode, crossovers, limit: int = EXACT_ENUM_LIMIT) -> MIResult:
    """Exact MI of ``Uniform(C + u)`` through BSC(``p_1``), ..., BSC(``p_n``)."""
    return exact(heterogeneous_mi_batch(code, [list(crossovers)], limit)[0])
