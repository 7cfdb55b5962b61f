from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EXACT_SUBSET_LIMIT = 24
EXACT_ENUM_LIMIT = 24
BMS_EXACT_BUDGET = 1 << 26
TYPE_BUDGET = 5_000_000
MC_BATCH = 1 << 15


class EngineLimitError(ValueError):
    """An exact computation would exceed its configured size budget."""


@dataclass(frozen=True)
class MIResult:
    """A mutual-information value in bits.

    ``std_err`` is 0 for exact results; Monte Carlo results carry the
    standard error of the mean together with sample count and seed.
    """

    value: float
    method: str = "exact"
    std_err: float = 0.0
    samples: int = 0
    seed: int | None = None

    def __float__(self) -> float:
        return self.value


def exact(value: float) -> MIResult:
    return MIResult(float(value), "exact", 0.0, 0, None)


def derive_seed(master_seed: int, task_index: int) -> int:
    """Deterministic per-task seed from ``(master_seed, task_index)``."""
    ss = np.random.SeedSequence([int(master_seed), int(task_index)])
    return int(ss.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))


def make_rng(seed: int) -> np.random.Generator:
    # Philox is counter-based: streams are reproducible per seed
    return np.random.Generator(np.random.Philox(int(seed)))


class RunningStats:
    """Streaming mean/variance with pairwise merging (Chan et al.)."""

    __slots__ = ("count", "mean", "m2")

    def __init__(self, count: int = 0, mean: float = 0.0, m2: float = 0.0):
        self.count = count
        self.mean = mean
        self.m2 = m2

    @classmethod
    def from_batch(cls, values: np.ndarray) -> "RunningStats":
        values = np.asarray(values, dtype=float)
        if values.size == 0:
            return cls()
        mean = float(values.mean())
        return cls(int(values.size), mean, float(np.sum((values - mean) ** 2)))

    def merge(self, other: "RunningStats") -> "RunningStats":
        if other.count == 0:
            return self
        if self.count == 0:
            return RunningStats(other.count, other.mean, other.m2)
        n = self.count + other.count
        delta = other.mean - self.mean
        mean = self.mean + delta * other.count / n
        m2 = self.m2 + other.m2 + delta * delta * self.count * other.count / n
        return RunningStats(n, mean, m2)

    @property
    def std_err(self) -> float:
        if self.count < 2:
            return float("inf")
        return float(np.sqrt(self.m2 / (self.count - 1) / self.count))

    def result(self, seed: int) -> MIResult:
        se = self.std_err
        if self.m2 == 0.0 and self.count >= 2:
            se = 0.0
        return MIResult(float(self.mean), "monte_carlo", se, self.count, int(seed))


def batch_sizes(samples: int, batch: int = MC_BATCH):
    if samples < 1:
        raise ValueError("samples must be at least 1")
    full, rest = divmod(samples, batch)
    yield from [batch] * full
    if rest:
        yield rest
