"""Exact ``I(X; Y^n)`` when one symbol ``X ~ P_X`` is sent ``n`` times through ``W``.

Given ``X = x`` the outputs are i.i.d., so the type (vector of output symbol
counts) is a sufficient statistic. Summing over type classes instead of
sequences costs ``C(n + |Y| - 1, |Y| - 1)`` terms.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np
from scipy.special import logsumexp

from ..channels import Dmc, mutual_information
from ..scalar import LN2
from ._base import TYPE_BUDGET, EngineLimitError, MIResult, exact


@lru_cache(maxsize=32)
def compositions(n: int, parts: int) -> np.ndarray:
    """All nonnegative integer vectors of length ``parts`` summing to ``n``."""
    if parts == 1:
        return np.array([[n]], dtype=np.int64)
    blocks = []
    for first in range(n + 1):
        rest = compositions(n - first, parts - 1)
        blocks.append(np.column_stack([np.full(rest.shape[0], first, dtype=np.int64), rest]))
    out = np.concatenate(blocks)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=4)
def log_factorials(n: int) -> np.ndarray:
    """``log(m!)`` for ``m = 0..n`` as a cumulative sum."""
    return np.concatenate([[0.0], np.cumsum(np.log(np.arange(1, n + 1)))])


def type_class_count(n: int, n_outputs: int) -> int:
    return comb(n + n_outputs - 1, n_outputs - 1)


def repeated_input_mi_exact(ch: Dmc, n: int, budget: int = TYPE_BUDGET) -> MIResult:
    """Exact ``I(X; Y^n)`` by summing over output type classes in log space."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n == 1:
        return exact(mutual_information(ch.input_dist, ch.matrix))
    W, P = ch.matrix, ch.input_dist
    keep = P > 0
    W, P = W[keep], P[keep]
    count = type_class_count(n, W.shape[1])
    if count > budget:
        raise EngineLimitError(f"{count} output type classes exceed the budget of {budget}")

    types = compositions(n, W.shape[1])
    lf = log_factorials(n)
    log_multinom = lf[n] - lf[types].sum(axis=1)
    with np.errstate(divide="ignore"):
        logW = np.log(W)
    finite = np.where(W > 0, logW, 0.0)
    impossible = (types @ (W == 0).T.astype(np.int64)) > 0
    # log P(type | x), one column per input symbol
    log_cond = log_multinom[:, None] + types @ finite.T
    log_cond[impossible] = -np.inf
    log_out = logsumexp(log_cond, axis=1, b=np.broadcast_to(P, log_cond.shape))
    cond = np.exp(log_cond)
    with np.errstate(invalid="ignore"):
        diff = np.where(np.isfinite(log_cond), log_cond - log_out[:, None], 0.0)
    value = float(np.sum(P[None, :] * cond * diff) / LN2)
    return exact(max(value, 0.0))
