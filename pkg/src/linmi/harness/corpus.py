"""Code specifiers such as ``repetition:3``, ``random:10:4:7`` or ``file:path``.

Integer fields accept inclusive ranges ``a..b``; :func:`expand_specs` turns
``repetition:1..3`` into ``repetition:1, repetition:2, repetition:3``.
"""

from __future__ import annotations

import itertools
import re

from .. import codes

DEFAULT_CORPUS = (
    "repetition:1..12",
    "spc:3..12",
    "hamming74",
    "rm1:3",
    "random:10:4:0..4",
    "random:14:7:0..4",
)

_ALIASES = {
    "rep": "repetition",
    "repetition": "repetition",
    "spc": "spc",
    "single_parity_check": "spc",
    "hamming74": "hamming74",
    "hamming_7_4": "hamming74",
    "rm1": "rm1",
    "rm": "rm1",
    "reed_muller_1_m": "rm1",
    "random": "random",
    "full": "full",
    "zero": "zero",
    "file": "file",
}

_ARITY = {"repetition": 1, "spc": 1, "hamming74": 0, "rm1": 1, "random": 3, "full": 1, "zero": 1}
_RANGE = re.compile(r"^(\d+)\.\.(\d+)$")


def _split(spec: str) -> tuple[str, list[str]]:
    spec = spec.strip()
    head, _, rest = spec.partition(":")
    kind = _ALIASES.get(head.lower())
    if kind is None:
        raise ValueError(f"unknown code family in {spec!r}")
    if kind == "file":
        if not rest:
            raise ValueError("file: specifier needs a path")
        return kind, [rest]
    fields = rest.split(":") if rest else []
    if len(fields) != _ARITY[kind]:
        raise ValueError(f"{kind} takes {_ARITY[kind]} integer field(s), got {spec!r}")
    return kind, fields


def expand_specs(specs) -> list[str]:
    """Expand integer ranges and normalize family names."""
    out: list[str] = []
    for spec in specs:
        kind, fields = _split(spec)
        if kind == "file":
            out.append(f"file:{fields[0]}")
            continue
        choices = []
        for f in fields:
            m = _RANGE.match(f)
            if m:
                lo, hi = int(m.group(1)), int(m.group(2))
                if hi < lo:
                    raise ValueError(f"empty range {f!r} in {spec!r}")
                choices.append([str(v) for v in range(lo, hi + 1)])
            elif f.isdigit():
                choices.append([f])
            else:
                raise ValueError(f"bad integer field {f!r} in {spec!r}")
        for combo in itertools.product(*choices):
            out.append(":".join([kind, *combo]))
    return out


def build_code(spec: str) -> codes.BinaryLinearCode:
    """Construct one code from a (range-free) specifier."""
    kind, fields = _split(spec)
    if kind == "file":
        return codes.read_code_file(fields[0])
    if any(not f.isdigit() for f in fields):
        raise ValueError(f"ranges must be expanded before building: {spec!r}")
    args = [int(f) for f in fields]
    if kind == "repetition":
        return codes.repetition(*args)
    if kind == "spc":
        return codes.single_parity_check(*args)
    if kind == "hamming74":
        return codes.hamming_7_4()
    if kind == "rm1":
        return codes.reed_muller_1_m(*args)
    if kind == "random":
        return codes.random_code(*args)
    if kind == "full":
        return codes.full_space(*args)
    return codes.zero_code(*args)


def build_corpus(specs=DEFAULT_CORPUS) -> list[codes.BinaryLinearCode]:
    return [build_code(s) for s in expand_specs(specs)]
