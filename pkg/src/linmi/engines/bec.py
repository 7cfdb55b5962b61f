"""Mutual information of shifted linear codes over the BEC.

With ``S`` the random set of unerased positions (each kept w.p. ``t``),
``I_BEC(t) = E[rank(G_S)]``. The rank of every restriction is read off the
number of codewords that vanish on ``S``:
``rank(G_S) = k - log2 #{c in C : supp(c) disjoint from S}``,
and those counts for all ``2**n`` sets come from one subset-sum transform of
the codeword support indicator.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..codes import BinaryLinearCode, popcount_table
from ._base import (
    EXACT_SUBSET_LIMIT,
    EngineLimitError,
    MIResult,
    RunningStats,
    batch_sizes,
    exact,
    make_rng,
)

# rank lookup tables are used by the Monte Carlo engine up to this length
RANK_TABLE_LIMIT = 20


def _check_t(t) -> float:
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"capacity must lie in [0, 1], got {t}")
    return t


@lru_cache(maxsize=8)
def rank_table(code: BinaryLinearCode) -> np.ndarray:
    """``rank(G_S)`` for every unerased set ``S`` given as an n-bit mask."""
    n, k = code.n, code.k
    dtype = np.int32 if k < 31 else np.int64
    g = np.bincount(code.codewords(), minlength=1 << n).astype(dtype)
    # zeta transform: g[T] <- #codewords with support inside T
    for i in range(n):
        view = g.reshape(-1, 2, 1 << i)
        view[:, 1, :] += view[:, 0, :]
    vanishing = g[::-1]  # index S -> count of codewords supported on complement of S
    ranks = k - np.log2(vanishing).round().astype(np.int64)
    ranks = ranks.astype(np.int8 if k < 127 else np.int64)
    ranks.setflags(write=False)
    return ranks


@lru_cache(maxsize=64)
def rank_profile(code: BinaryLinearCode, limit: int = EXACT_SUBSET_LIMIT) -> np.ndarray:
    """``R[j] = sum of rank(G_S)`` over all ``S`` with ``|S| = j``.

    ``I_BEC(t) = sum_j R[j] t**j (1-t)**(n-j)``, so one profile serves an
    entire capacity grid.
    """
    if code.n > limit:
        raise EngineLimitError(
            f"exact BEC engine limited to n <= {limit} (got n={code.n}); use bec_mi_mc instead"
        )
    if code.k == 0:
        return np.zeros(code.n + 1)
    ranks = rank_table(code)
    sizes = popcount_table(code.n)
    profile = np.bincount(sizes, weights=ranks.astype(float), minlength=code.n + 1)
    profile.setflags(write=False)
    return profile


def bec_mi_curve(code: BinaryLinearCode, ts, limit: int = EXACT_SUBSET_LIMIT) -> np.ndarray:
    """Exact ``I_BEC(t)`` evaluated on an array of capacities."""
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    if np.any(ts < 0) or np.any(ts > 1):
        raise ValueError("capacities must lie in [0, 1]")
    profile = rank_profile(code, limit)
    j = np.arange(code.n + 1)
    terms = profile[None, :] * ts[:, None] ** j[None, :] * (1.0 - ts[:, None]) ** (code.n - j)[None, :]
    out = terms.sum(axis=1)
    # exact endpoints
    out[ts == 0.0] = 0.0
    out[ts == 1.0] = code.k
    return out


def bec_mi_exact(code: BinaryLinearCode, t, limit: int = EXACT_SUBSET_LIMIT) -> MIResult:
    """Exact ``I_BEC(t)`` for ``X ~ Uniform(C + u)``; independent of the shift."""
    t = _check_t(t)
    return exact(bec_mi_curve(code, [t], limit)[0])


def _pack(bits: np.ndarray) -> np.ndarray:
    weights = np.left_shift(np.int64(1), np.arange(bits.shape[1], dtype=np.int64))
    return bits.astype(np.int64) @ weights


def batch_rank(rows: tuple[int, ...], masks: np.ndarray) -> np.ndarray:
    """GF(2) rank of ``G`` restricted to each mask, vectorized over masks (n <= 62)."""
    if not rows:
        return np.zeros(masks.shape[0], dtype=np.int64)
    work = np.asarray(rows, dtype=np.int64)[None, :] & masks[:, None]
    rank = np.zeros(masks.shape[0], dtype=np.int64)
    k = work.shape[1]
    for i in range(k):
        r = work[:, i]
        rank += r != 0
        if i + 1 < k:
            piv = r & -r
            rest = work[:, i + 1 :]
            hit = (rest & piv[:, None]) != 0
            rest ^= np.where(hit, r[:, None], 0)
    return rank


def bec_mi_mc(code: BinaryLinearCode, t, samples: int, seed: int) -> MIResult:
    """Monte Carlo estimate of ``E[rank(G_S)]`` over random erasure patterns."""
    t = _check_t(t)
    n = code.n
    if n > 62:
        raise EngineLimitError("Monte Carlo BEC engine supports n <= 62")
    rng = make_rng(seed)
    table = rank_table(code) if n <= RANK_TABLE_LIMIT else None
    stats = RunningStats()
    for size in batch_sizes(samples):
        kept = rng.random((size, n)) < t
        masks = _pack(kept)
        if table is not None:
            vals = table[masks].astype(float)
        else:
            vals = batch_rank(code.rows, masks).astype(float)
        stats = stats.merge(RunningStats.from_batch(vals))
    return stats.result(seed)
