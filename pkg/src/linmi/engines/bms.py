"""Mutual information over BMS channels given as finite BSC mixtures.

The state vector ``a^n`` is revealed at the output and independent of the
input, so ``I_BMS = E_{a^n}[ I_het(p(a^n)) ]`` with ``I_het`` the exact
heterogeneous-BSC mutual information.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..channels import BmsChannel
from ..codes import BinaryLinearCode
from ._base import (
    BMS_EXACT_BUDGET,
    EXACT_ENUM_LIMIT,
    EngineLimitError,
    MIResult,
    RunningStats,
    batch_sizes,
    exact,
    make_rng,
)
from .bsc import bsc_mi_exact, heterogeneous_mi_batch

# Monte Carlo memoizes the integrand over all state vectors up to this many
MC_TABLE_LIMIT = 1 << 16


def _state_vectors(n_states: int, n: int) -> np.ndarray:
    # row j lists the base-n_states digits of j, coordinate 0 least significant
    idx = np.arange(n_states**n)
    return np.stack([(idx // n_states**i) % n_states for i in range(n)], axis=1)


@lru_cache(maxsize=32)
def _integrand_table(code: BinaryLinearCode, states: tuple, limit: int) -> np.ndarray:
    crossovers = np.array([p for _, p in states])
    vecs = _state_vectors(len(states), code.n)
    table = heterogeneous_mi_batch(code, crossovers[vecs], limit)
    table.setflags(write=False)
    return table


def _exact(code: BinaryLinearCode, ch: BmsChannel, budget: int, limit: int) -> float:
    s = len(ch.states)
    if s == 1:
        return bsc_mi_exact(code, ch.capacity, limit).value
    if s**code.n * (1 << code.n) > budget:
        raise EngineLimitError(
            f"exact BMS expectation needs {s}**{code.n} * 2**{code.n} work, over budget {budget}; use mode='mc'"
        )
    table = _integrand_table(code, ch.states, limit)
    weights = ch.weights[_state_vectors(s, code.n)].prod(axis=1)
    return float(np.dot(weights, table))


def bms_mi(
    code: BinaryLinearCode,
    ch: BmsChannel,
    mode: str = "exact",
    samples: int = 100_000,
    seed: int = 0,
    budget: int = BMS_EXACT_BUDGET,
    limit: int = EXACT_ENUM_LIMIT,
) -> MIResult:
    """``I_BMS(X^n; Y^n)`` exactly, or by sampling state vectors (``mode='mc'``)."""
    if mode == "exact":
        return exact(_exact(code, ch, budget, limit))
    if mode != "mc":
        raise ValueError(f"mode must be 'exact' or 'mc', got {mode!r}")

    s, n = len(ch.states), code.n
    rng = make_rng(seed)
    cdf = np.cumsum(ch.weights)
    cdf[-1] = 1.0
    table = _integrand_table(code, ch.states, limit) if s**n <= MC_TABLE_LIMIT else None
    digits = s ** np.arange(n, dtype=np.int64) if table is not None else None
    crossovers = ch.crossovers
    stats = RunningStats()
    for size in batch_sizes(samples):
        u = rng.random((size, n))
        # state index = number of cdf thresholds <= u (few states, so cheaper than searchsorted)
        draws = np.zeros(u.shape, dtype=np.int64)
        for c in cdf[:-1]:
            draws += u >= c
        if table is not None:
            vals = table[draws @ digits]
        else:
            uniq, inverse = np.unique(draws, axis=0, return_inverse=True)
            vals = heterogeneous_mi_batch(code, crossovers[uniq], limit)[inverse.ravel()]
        stats = stats.merge(RunningStats.from_batch(vals))
    return stats.result(seed)
