"""Channel descriptions and their capacities.

Binary memoryless symmetric channels are finite mixtures of BSCs with a
revealed state; everything else is a generic DMC with a fixed input law.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .scalar import LN2, binary_entropy, bsc_crossover, entropy

STOCHASTIC_TOL = 1e-12


def _check_capacity(t):
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"capacity must lie in [0, 1], got {t}")
    return t


@dataclass(frozen=True)
class BmsChannel:
    """BMS channel as a mixture of BSC states ``(weight, crossover)``.

    Crossovers are stored in ``[0, 1/2]`` (a state with crossover ``p > 1/2``
    is the same channel up to relabeling its output).
    """

    states: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not self.states:
            raise ValueError("a BMS channel needs at least one state")
        canon = []
        for w, p in self.states:
            w, p = float(w), float(p)
            if w < 0 or not 0.0 <= p <= 1.0:
                raise ValueError(f"invalid state ({w}, {p})")
            if w > 0:
                canon.append((w, min(p, 1.0 - p)))
        total = sum(w for w, _ in canon)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"state weights sum to {total}, not 1")
        object.__setattr__(self, "states", tuple(canon))

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for w, _ in self.states])

    @property
    def crossovers(self) -> np.ndarray:
        return np.array([p for _, p in self.states])

    @property
    def capacity(self) -> float:
        return float(np.sum(self.weights * (1.0 - np.asarray(binary_entropy(self.crossovers)))))

    def describe(self) -> str:
        inner = ";".join(f"{w:.12g}@{p:.12g}" for w, p in self.states)
        return f"bms:{inner}"


def bms_from_bsc(t) -> BmsChannel:
    """Single-state BMS channel: the BSC of capacity ``t``."""
    t = _check_capacity(t)
    return BmsChannel(((1.0, float(bsc_crossover(t))),))


def bms_from_bec(t) -> BmsChannel:
    """The BEC of capacity ``t`` as clean-with-prob-t / pure-noise mixture."""
    t = _check_capacity(t)
    if t == 1.0:
        return BmsChannel(((1.0, 0.0),))
    if t == 0.0:
        return BmsChannel(((1.0, 0.5),))
    return BmsChannel(((t, 0.0), (1.0 - t, 0.5)))


def two_state_bms(weight: float, t: float, spread: float = 0.9) -> BmsChannel:
    """Two-state BSC mixture with first-state weight ``weight`` and capacity ``t``.

    State capacities are ``t + (1-w) d`` and ``t - w d`` with ``d`` a fraction
    ``spread`` of the largest value keeping both in ``[0, 1]``; the mixture
    capacity is exactly ``t``.
    """
    t = _check_capacity(t)
    w = float(weight)
    if not 0.0 < w < 1.0:
        raise ValueError("weight must lie in (0, 1)")
    d = spread * min((1.0 - t) / (1.0 - w), t / w)
    c1, c2 = t + (1.0 - w) * d, t - w * d
    return BmsChannel(((w, float(bsc_crossover(min(c1, 1.0)))), (1.0 - w, float(bsc_crossover(max(c2, 0.0))))))


@dataclass(frozen=True, eq=False)
class Dmc:
    """Discrete memoryless channel ``W(y|x)`` together with an input law ``P_X``.

    ``matrix[x, y] = W(y|x)``; rows must be probability vectors.
    """

    matrix: np.ndarray
    input_dist: np.ndarray

    def __post_init__(self):
        W = np.array(self.matrix, dtype=float)
        P = np.array(self.input_dist, dtype=float).ravel()
        if W.ndim != 2 or W.shape[0] != P.size:
            raise ValueError(f"matrix shape {W.shape} does not match input size {P.size}")
        if np.any(W < 0) or np.any(np.abs(W.sum(axis=1) - 1.0) > STOCHASTIC_TOL):
            raise ValueError("channel matrix must be row-stochastic")
        if np.any(P < 0) or abs(P.sum() - 1.0) > STOCHASTIC_TOL:
            raise ValueError("input distribution must be a probability vector")
        W.setflags(write=False)
        P.setflags(write=False)
        object.__setattr__(self, "matrix", W)
        object.__setattr__(self, "input_dist", P)

    @property
    def n_inputs(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_outputs(self) -> int:
        return self.matrix.shape[1]

    @property
    def output_dist(self) -> np.ndarray:
        return self.input_dist @ self.matrix

    @property
    def input_entropy(self) -> float:
        return entropy(self.input_dist)

    def describe(self) -> str:
        rows = "|".join(",".join(f"{v:.12g}" for v in row) for row in self.matrix)
        px = ",".join(f"{v:.12g}" for v in self.input_dist)
        return f"dmc:[{rows}]px=[{px}]"


@dataclass(frozen=True)
class ErasureChannel:
    """``EC_e`` on an alphabet of ``size`` symbols; the erasure is the last output."""

    e: float
    size: int = 2

    def __post_init__(self):
        if not 0.0 <= self.e <= 1.0:
            raise ValueError(f"erasure probability must lie in [0, 1], got {self.e}")
        if self.size < 1:
            raise ValueError("alphabet size must be positive")

    def matrix(self) -> np.ndarray:
        W = np.zeros((self.size, self.size + 1))
        W[np.arange(self.size), np.arange(self.size)] = 1.0 - self.e
        W[:, -1] = self.e
        return W

    def to_dmc(self, input_dist) -> Dmc:
        return Dmc(self.matrix(), input_dist)


def bsc_dmc(p: float, q: float = 0.5) -> Dmc:
    """BSC with crossover ``p`` fed by ``X ~ Bern(q)`` (``q = P(X = 1)``)."""
    if not 0.0 <= p <= 1.0 or not 0.0 <= q <= 1.0:
        raise ValueError("p and q must lie in [0, 1]")
    return Dmc(np.array([[1 - p, p], [p, 1 - p]]), np.array([1 - q, q]))


def erasure_dmc(e: float, input_dist) -> Dmc:
    P = np.asarray(input_dist, dtype=float).ravel()
    return ErasureChannel(e, P.size).to_dmc(P)


def mutual_information(input_dist, matrix) -> float:
    """Single-use ``I(P_X, W)`` in bits."""
    P = np.asarray(input_dist, dtype=float).ravel()
    W = np.asarray(matrix, dtype=float)
    joint = P[:, None] * W
    py = joint.sum(axis=0)
    mask = joint > 0
    # log differences: the product P(x) P(y) can underflow when joint does not
    rows, cols = np.nonzero(mask)
    log_ratio = np.log(joint[mask]) - np.log(P[rows]) - np.log(py[cols])
    return float(np.sum(joint[mask] * log_ratio) / LN2)


def capacity(ch) -> float:
    """Capacity of a BMS mixture, or ``I(P_X, W)`` of a DMC at its stored input."""
    if isinstance(ch, BmsChannel):
        return ch.capacity
    if isinstance(ch, Dmc):
        return mutual_information(ch.input_dist, ch.matrix)
    raise TypeError(f"unsupported channel type {type(ch).__name__}")


def erasure_upper_bound_mi(e: float, input_dist, n: int) -> float:
    """``(1 - e**n) H(P_X)``: the MI of n erasure looks at a single symbol."""
    if not 0.0 <= e <= 1.0:
        raise ValueError("erasure probability must lie in [0, 1]")
    if n < 1:
        raise ValueError("n must be at least 1")
    P = np.asarray(input_dist, dtype=float).ravel()
    if np.any(P < 0) or abs(P.sum() - 1.0) > STOCHASTIC_TOL:
        raise ValueError("input distribution must be a probability vector")
    return float(-np.expm1(n * np.log(e)) if e > 0 else 1.0) * entropy(P)


def channel_from_config(spec: Mapping):
    """Build a channel from ``{kind, capacity | states | matrix, input_dist}``.

    ``bec``/``bsc`` without a capacity return ``None`` for the channel itself;
    sweeps then take the capacity from their t grid.
    """
    kind = str(spec.get("kind", "")).lower()
    if kind in ("bec", "bsc"):
        cap = spec.get("capacity")
        if cap is None:
            return None
        return bms_from_bec(cap) if kind == "bec" else bms_from_bsc(cap)
    if kind == "bms":
        states = spec.get("states")
        if not states:
            raise ValueError("bms channel needs 'states'")
        return BmsChannel(tuple((float(w), float(p)) for w, p in states))
    if kind == "dmc":
        if "matrix" not in spec or "input_dist" not in spec:
            raise ValueError("dmc channel needs 'matrix' and 'input_dist'")
        return Dmc(np.asarray(spec["matrix"], dtype=float), np.asarray(spec["input_dist"], dtype=float))
    raise ValueError(f"unknown channel kind {kind!r}")
