"""Binary linear codes with affine shifts, packed into Python int bitsets.

Coordinate ``i`` of a word is bit ``i`` of the integer (the leftmost character
of a binary string is coordinate 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


def bits_from_str(s: str) -> int:
    s = s.strip()
    if any(ch not in "01" for ch in s):
        raise ValueError(f"not a binary string: {s!r}")
    return sum(1 << i for i, ch in enumerate(s) if ch == "1")


def bits_to_str(v: int, n: int) -> str:
    return "".join("1" if (v >> i) & 1 else "0" for i in range(n))


def _as_word(v, n: int) -> int:
    if isinstance(v, str):
        if len(v.strip()) != n:
            raise ValueError(f"word {v!r} does not have length {n}")
        return bits_from_str(v)
    if isinstance(v, (int, np.integer)):
        v = int(v)
        if v < 0 or v >> n:
            raise ValueError(f"word {v} does not fit in {n} bits")
        return v
    seq = list(v)
    if len(seq) != n:
        raise ValueError(f"word of length {len(seq)} given, expected {n}")
    return sum(1 << i for i, b in enumerate(seq) if int(b) & 1)


def rref(rows: Iterable[int]) -> tuple[int, ...]:
    """Reduced row echelon basis of the span of ``rows``.

    The pivot of each row is its lowest set bit; rows are sorted by pivot and
    every pivot column is cleared in all other rows, so the result is a
    canonical basis of the row space.
    """
    basis: list[int] = []
    for r in rows:
        for b in basis:
            if r & (b & -b):
                r ^= b
        if r:
            piv = r & -r
            basis = [b ^ r if b & piv else b for b in basis]
            basis.append(r)
    return tuple(sorted(basis, key=lambda b: b & -b))


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of a list of int-packed rows."""
    return len(rref(rows))


def popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True)
class BinaryLinearCode:
    """A shifted binary linear code ``C + u``.

    The modeled input distribution is uniform over ``C + u``. Generator rows
    are kept in reduced row echelon form, so two codes compare equal exactly
    when they have the same length, row space and shift.
    """

    n: int
    rows: tuple[int, ...]
    shift: int = 0
    name: str = field(default="", compare=False)

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def rate(self) -> float:
        return self.k / self.n

    def __repr__(self) -> str:
        label = self.name or "code"
        return f"{label}[n={self.n}, k={self.k}, shift={bits_to_str(self.shift, self.n)}]"

    def codewords(self) -> np.ndarray:
        """All ``2**k`` codewords of ``C`` (without shift) as int64 bitsets."""
        return _codewords(self.rows)

    def parity_check(self) -> tuple[int, ...]:
        """Rows of a parity-check matrix ``H`` with ``C = ker H`` (``n - k`` rows)."""
        pivots = [r & -r for r in self.rows]
        pivot_cols = {p.bit_length() - 1: r for p, r in zip(pivots, self.rows)}
        free = [j for j in range(self.n) if j not in pivot_cols]
        checks = []
        for j in free:
            # x_j = 1 forces each pivot coordinate to the value of row's bit j
            h = 1 << j
            for col, r in pivot_cols.items():
                if (r >> j) & 1:
                    h |= 1 << col
            checks.append(h)
        return tuple(checks)

    def generator_matrix(self) -> np.ndarray:
        return np.array(
            [[(r >> i) & 1 for i in range(self.n)] for r in self.rows],
            dtype=np.uint8,
        ).reshape(self.k, self.n)

    def with_shift(self, shift) -> "BinaryLinearCode":
        return make_code(self.rows, self.n, shift, name=self.name)


@lru_cache(maxsize=64)
def _codewords(rows: tuple[int, ...]) -> np.ndarray:
    words = np.zeros(1, dtype=np.int64)
    for r in rows:
        words = np.concatenate([words, words ^ np.int64(r)])
    words.setflags(write=False)
    return words


def make_code(rows: Sequence, n: int, shift=0, name: str = "") -> BinaryLinearCode:
    """Build a shifted code from generator rows (strings, ints or bit lists)."""
    if n < 1:
        raise ValueError("block length must be positive")
    packed = [_as_word(r, n) for r in rows]
    u = _as_word(shift, n)
    basis = rref(packed)
    # shift is reduced modulo C so that C + u has a canonical representative
    for b in basis:
        if u & (b & -b):
            u ^= b
    return BinaryLinearCode(n=n, rows=basis, shift=u, name=name)


def puncture(code: BinaryLinearCode, keep: Iterable[int]) -> BinaryLinearCode:
    """Project ``C + u`` onto the coordinates in ``keep`` (0-based, in order)."""
    keep = sorted(set(int(i) for i in keep))
    if any(i < 0 or i >= code.n for i in keep):
        raise ValueError("puncture indices out of range")
    if not keep:
        raise ValueError("puncture must keep at least one coordinate")

    def project(v: int) -> int:
        return sum(1 << j for j, i in enumerate(keep) if (v >> i) & 1)

    name = f"{code.name}|{len(keep)}" if code.name else ""
    return make_code([project(r) for r in code.rows], len(keep), project(code.shift), name=name)


@dataclass(frozen=True)
class CosetWeightEnumerator:
    """Weight distribution ``A_0..A_n`` of a coset ``y + u + C``."""

    counts: tuple[int, ...]
    coset_size: int

    def __post_init__(self):
        if sum(self.counts) != self.coset_size or min(self.counts) < 0:
            raise ValueError("enumerator counts must partition the coset")


def coset_weight_enumerator(code: BinaryLinearCode, y) -> CosetWeightEnumerator:
    """``counts[w] = #{c in C : wt(y + u + c) = w}``."""
    base = _as_word(y, code.n) ^ code.shift
    words = code.codewords() ^ np.int64(base)
    weights = _popcount_array(words)
    counts = np.bincount(weights, minlength=code.n + 1)
    return CosetWeightEnumerator(tuple(int(c) for c in counts), 1 << code.k)


def _popcount_array(words: np.ndarray) -> np.ndarray:
    w = words.astype(np.uint64)
    out = np.zeros(w.shape, dtype=np.int64)
    while np.any(w):
        out += (w & np.uint64(1)).astype(np.int64)
        w >>= np.uint64(1)
    return out


@lru_cache(maxsize=8)
def popcount_table(n: int) -> np.ndarray:
    """Hamming weights of all ``2**n`` words of length ``n``."""
    table = np.zeros(1, dtype=np.int8)
    for _ in range(n):
        table = np.concatenate([table, table + 1])
    table.setflags(write=False)
    return table


@lru_cache(maxsize=16)
def syndrome_table(code: BinaryLinearCode) -> np.ndarray:
    """Syndrome index (in ``[0, 2**(n-k))``) of every word of ``F_2^n``.

    Syndrome bit ``j`` is the parity of the word against parity check ``j``.
    Built by doubling over coordinates, so the cost is ``2**n`` integer ops.
    """
    checks = code.parity_check()
    dtype = np.int32 if len(checks) < 31 else np.int64
    table = np.zeros(1, dtype=dtype)
    for i in range(code.n):
        col = sum(1 << j for j, h in enumerate(checks) if (h >> i) & 1)
        table = np.concatenate([table, table ^ dtype(col)])
    table.setflags(write=False)
    return table


@lru_cache(maxsize=16)
def coset_enumerator_table(code: BinaryLinearCode) -> np.ndarray:
    """Weight enumerators of all ``2**(n-k)`` cosets of ``C``.

    Row ``s`` holds the weight distribution of the coset with syndrome ``s``;
    each row sums to ``2**k`` and the rows together sum to the binomial
    coefficients of length ``n``.
    """
    synd = syndrome_table(code).astype(np.int64)
    weights = popcount_table(code.n).astype(np.int64)
    flat = np.bincount(synd * (code.n + 1) + weights, minlength=(1 << (code.n - code.k)) * (code.n + 1))
    table = flat.reshape(1 << (code.n - code.k), code.n + 1)
    table.setflags(write=False)
    return table


# --- standard constructors -------------------------------------------------


def repetition(n: int) -> BinaryLinearCode:
    return make_code([(1 << n) - 1], n, name=f"repetition:{n}")


def single_parity_check(n: int) -> BinaryLinearCode:
    if n < 2:
        raise ValueError("single parity check code needs n >= 2")
    rows = [1 | (1 << (i + 1)) for i in range(n - 1)]
    return make_code(rows, n, name=f"spc:{n}")


def full_space(n: int) -> BinaryLinearCode:
    return make_code([1 << i for i in range(n)], n, name=f"full:{n}")


def zero_code(n: int) -> BinaryLinearCode:
    return make_code([], n, name=f"zero:{n}")


def hamming_7_4() -> BinaryLinearCode:
    rows = ["1000110", "0100101", "0010011", "0001111"]
    return make_code(rows, 7, name="hamming74")


def reed_muller_1_m(m: int) -> BinaryLinearCode:
    """First-order Reed-Muller code RM(1, m): length ``2**m``, dimension ``m + 1``."""
    if m < 1:
        raise ValueError("m must be positive")
    n = 1 << m
    rows = [(1 << n) - 1]
    for j in range(m):
        rows.append(sum(1 << x for x in range(n) if (x >> j) & 1))
    return make_code(rows, n, name=f"rm1:{m}")


def random_code(n: int, k: int, seed: int) -> BinaryLinearCode:
    """Random ``[n, k]`` code; rows drawn from a Philox stream until rank ``k``."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    rng = np.random.Generator(np.random.Philox(seed))
    rows: list[int] = []
    while gf2_rank(rows) < k:
        bits = rng.integers(0, 2, size=n)
        rows.append(sum(1 << i for i, b in enumerate(bits) if b))
        rows = list(rref(rows))
    return make_code(rows, n, name=f"random:{n}:{k}:{seed}")


# --- code files ------------------------------------------------------------


def parse_code_text(text: str, name: str = "") -> BinaryLinearCode:
    """Parse ``n k`` / k generator rows / optional ``shift <bits>``."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise ValueError("empty code file")
    try:
        n, k = (int(x) for x in lines[0].split())
    except ValueError as exc:
        raise ValueError(f"first line must be 'n k', got {lines[0]!r}") from exc
    body = lines[1:]
    shift = "0" * n
    if body and body[-1].startswith("shift"):
        shift = body[-1].split(None, 1)[1] if len(body[-1].split()) > 1 else ""
        body = body[:-1]
    if len(body) != k:
        raise ValueError(f"expected {k} generator rows, found {len(body)}")
    return make_code(body, n, shift, name=name)


def read_code_file(path) -> BinaryLinearCode:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read code file {path}: {exc}") from exc
    return parse_code_text(text, name=f"file:{path}")


def format_code_text(code: BinaryLinearCode) -> str:
    lines = [f"{code.n} {code.k}"]
    lines += [bits_to_str(r, code.n) for r in code.rows]
    if code.shift:
        lines.append(f"shift {bits_to_str(code.shift, code.n)}")
    return "\n".join(lines) + "\n"
