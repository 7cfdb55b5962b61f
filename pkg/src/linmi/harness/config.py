"""Sweep configuration stored as INI-style ``key = value`` sections.

Example::

    [corpus]
    codes = repetition:1..4, hamming74

    [channel.bsc]
    kind = bsc

    [channel.mix]
    kind = bms
    states = 0.5@0.0, 0.5@0.25

    [channel.z]
    kind = dmc
    matrix = 0.9 0.1; 0.1 0.9
    input_dist = 0.8 0.2
    eta = 0.64
    eta_source = closed_form

    [t_grid]
    start = 0.05
    stop = 0.95
    points = 19

Sections not given fall back to the defaults below. Values written by
:func:`dump_config` use ``repr`` for floats, so ``load(dump(cfg)) == cfg``.
"""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from ..engines import BMS_EXACT_BUDGET, EXACT_ENUM_LIMIT, EXACT_SUBSET_LIMIT, TYPE_BUDGET
from .corpus import DEFAULT_CORPUS, expand_specs

ALL_BOUNDS = (
    "thm1",
    "sam_psi",
    "sam_mgl",
    "bec_upper",
    "thm3",
    "lemma1",
    "cor1",
    "cor2",
    "thm2",
    "thm2_exp",
    "combining_upper",
)
CHANNEL_KINDS = ("bec", "bsc", "bms", "dmc")
ETA_SOURCES = ("closed_form", "user", "estimated")


class ConfigError(ValueError):
    pass


@dataclass
class ChannelConfig:
    name: str
    kind: str
    capacity: float | None = None
    states: list[tuple[float, float]] | None = None
    matrix: list[list[float]] | None = None
    input_dist: list[float] | None = None
    eta: float | None = None
    eta_source: str | None = None
    c_mc: float | None = None

    def validate(self):
        if self.kind not in CHANNEL_KINDS:
            raise ConfigError(f"channel {self.name!r}: unknown kind {self.kind!r}")
        if self.kind == "bms" and not self.states:
            raise ConfigError(f"channel {self.name!r}: bms needs states")
        if self.kind == "dmc" and (self.matrix is None or self.input_dist is None):
            raise ConfigError(f"channel {self.name!r}: dmc needs matrix and input_dist")
        if self.eta_source is not None and self.eta_source not in ETA_SOURCES:
            raise ConfigError(f"channel {self.name!r}: eta_source must be one of {ETA_SOURCES}")

    def as_mapping(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


@dataclass
class TGrid:
    start: float = 0.05
    stop: float = 0.95
    points: int = 19

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass
class NRange:
    start: int = 1
    stop: int = 200


@dataclass
class Limits:
    exact_subset_limit: int = EXACT_SUBSET_LIMIT
    exact_enum_limit: int = EXACT_ENUM_LIMIT
    type_budget: int = TYPE_BUDGET
    bms_exact_budget: int = BMS_EXACT_BUDGET


@dataclass
class McSettings:
    samples: int = 100_000
    master_seed: int = 0
    bms_mode: str = "auto"  # auto | exact | mc


@dataclass
class Tolerances:
    tol_inv: float = 1e-12
    tol_verdict: float = 1e-9
    z: float = 4.0


@dataclass
class Output:
    csv_path: str = "report.csv"
    json_path: str = "report.jsonl"


@dataclass
class SweepConfig:
    corpus: list[str] = field(default_factory=lambda: expand_specs(DEFAULT_CORPUS))
    channels: list[ChannelConfig] = field(default_factory=lambda: [ChannelConfig("bsc", "bsc")])
    bounds: list[str] = field(default_factory=lambda: list(ALL_BOUNDS))
    t_grid: TGrid = field(default_factory=TGrid)
    n_range: NRange = field(default_factory=NRange)
    limits: Limits = field(default_factory=Limits)
    mc: McSettings = field(default_factory=McSettings)
    tolerances: Tolerances = field(default_factory=Tolerances)
    workers: int = 1
    timestamp: str = ""
    output: Output = field(default_factory=Output)

    def validate(self) -> "SweepConfig":
        if self.t_grid.points < 1 or not 0.0 <= self.t_grid.start <= self.t_grid.stop <= 1.0:
            raise ConfigError("t_grid must be nonempty and inside [0, 1]")
        if not 1 <= self.n_range.start <= self.n_range.stop:
            raise ConfigError("n_range must satisfy 1 <= start <= stop")
        for f in fields(self.limits):
            if getattr(self.limits, f.name) <= 0:
                raise ConfigError(f"limit {f.name} must be positive")
        if self.mc.samples < 1:
            raise ConfigError("mc.samples must be positive")
        if self.mc.bms_mode not in ("auto", "exact", "mc"):
            raise ConfigError("mc.bms_mode must be auto, exact or mc")
        if self.workers < 1:
            raise ConfigError("workers must be positive")
        unknown = set(self.bounds) - set(ALL_BOUNDS)
        if unknown:
            raise ConfigError(f"unknown bounds: {sorted(unknown)}")
        names = [c.name for c in self.channels]
        if len(set(names)) != len(names):
            raise ConfigError("channel names must be unique")
        for c in self.channels:
            c.validate()
        return self


# --- (de)serialization ---------------------------------------------------------

_SIMPLE_SECTIONS = {"t_grid": TGrid, "n_range": NRange, "limits": Limits, "mc": McSettings, "tolerances": Tolerances, "output": Output}


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.replace(",", " ").split()]


def _fmt(v) -> str:
    return repr(float(v)) if isinstance(v, float) else str(v)


def _coerce(cls, section, name: str):
    typ = {f.name: f.type for f in fields(cls)}
    if name not in typ:
        raise ConfigError(f"unknown key {name!r} in [{section.name}]")
    raw = section[name]
    kind = typ[name]
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
    except ValueError as exc:
        raise ConfigError(f"[{section.name}] {name}: {exc}") from exc
    return raw.strip()


def _parse_channel(name: str, sec) -> ChannelConfig:
    allowed = {f.name for f in fields(ChannelConfig)} - {"name"}
    extra = set(sec.keys()) - allowed
    if extra:
        raise ConfigError(f"unknown keys {sorted(extra)} in [channel.{name}]")
    try:
        ch = ChannelConfig(name=name, kind=sec.get("kind", "").strip().lower())
        if "capacity" in sec:
            ch.capacity = float(sec["capacity"])
        if "states" in sec:
            ch.states = []
            for item in sec["states"].split(","):
                w, p = item.split("@")
                ch.states.append((float(w), float(p)))
        if "matrix" in sec:
            ch.matrix = [_floats(row) for row in sec["matrix"].split(";") if row.strip()]
        if "input_dist" in sec:
            ch.input_dist = _floats(sec["input_dist"])
        if "eta" in sec:
            ch.eta = float(sec["eta"])
        if "eta_source" in sec:
            ch.eta_source = sec["eta_source"].strip()
        if "c_mc" in sec:
            ch.c_mc = float(sec["c_mc"])
    except ValueError as exc:
        raise ConfigError(f"[channel.{name}]: {exc}") from exc
    return ch


def parse_config(text: str) -> SweepConfig:
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc
    cfg = SweepConfig()
    channels = []
    for name in parser.sections():
        sec = parser[name]
        if name == "corpus":
            cfg.corpus = expand_specs([s for s in sec.get("codes", "").split(",") if s.strip()])
        elif name == "bounds":
            cfg.bounds = [s.strip() for s in sec.get("names", "").split(",") if s.strip()]
        elif name == "run":
            if "workers" in sec:
                cfg.workers = int(sec["workers"])
            cfg.timestamp = sec.get("timestamp", "").strip()
        elif name in _SIMPLE_SECTIONS:
            cls = _SIMPLE_SECTIONS[name]
            obj = cls(**{k: _coerce(cls, sec, k) for k in sec.keys()})
            setattr(cfg, name, obj)
        elif name.startswith("channel."):
            channels.append(_parse_channel(name.split(".", 1)[1], sec))
        else:
            raise ConfigError(f"unknown section [{name}]")
    if channels:
        cfg.channels = channels
    return cfg.validate()


def load_config(path) -> SweepConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)


def dump_config(cfg: SweepConfig) -> str:
    parser = configparser.ConfigParser(interpolation=None)
    parser["corpus"] = {"codes": ", ".join(cfg.corpus)}
    parser["bounds"] = {"names": ", ".join(cfg.bounds)}
    parser["run"] = {"workers": str(cfg.workers), "timestamp": cfg.timestamp}
    for name, cls in _SIMPLE_SECTIONS.items():
        obj = getattr(cfg, name)
        parser[name] = {f.name: _fmt(getattr(obj, f.name)) for f in fields(cls)}
    for ch in cfg.channels:
        sec = {"kind": ch.kind}
        if ch.capacity is not None:
            sec["capacity"] = _fmt(ch.capacity)
        if ch.states is not None:
            sec["states"] = ", ".join(f"{_fmt(w)}@{_fmt(p)}" for w, p in ch.states)
        if ch.matrix is not None:
            sec["matrix"] = "; ".join(" ".join(_fmt(v) for v in row) for row in ch.matrix)
        if ch.input_dist is not None:
            sec["input_dist"] = " ".join(_fmt(v) for v in ch.input_dist)
        if ch.eta is not None:
            sec["eta"] = _fmt(ch.eta)
        if ch.eta_source is not None:
            sec["eta_source"] = ch.eta_source
        if ch.c_mc is not None:
            sec["c_mc"] = _fmt(ch.c_mc)
        parser[f"channel.{ch.name}"] = sec
    buf = io.StringIO()
    parser.write(buf)
    return buf.getvalue()
