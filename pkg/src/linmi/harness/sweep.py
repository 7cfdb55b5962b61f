"""Corpus x channel x grid sweeps producing one record per bound check."""

from __future__ import annotations

import hashlib
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace

import numpy as np

from .. import bounds
from ..channels import BmsChannel, Dmc, mutual_information
from ..codes import BinaryLinearCode
from ..engines import EngineLimitError, bms_mi, bsc_mi_exact, derive_seed, sdpi_eta_estimate
from ..engines._base import exact
from ..engines.bsc import output_entropy_bsc_exact
from ..engines.combining import repeated_input_mi_exact
from ..scalar import entropy
from .config import Output, SweepConfig, dump_config
from .corpus import build_code

WORKERS_ENV = "LINMI_WORKERS"

CODE_BSC_BOUNDS = ("thm1", "sam_psi", "sam_mgl", "bec_upper", "thm3")
BMS_BOUNDS = ("cor1", "cor2", "bec_upper")
COMBINING_BOUNDS = ("thm2", "thm2_exp", "combining_upper")


@dataclass(frozen=True)
class ReportRecord:
    run_id: str
    timestamp: str
    code_name: str
    n: int | None
    k: int | None
    channel: str
    t: float | None
    quantity: str
    method: str
    value: float
    std_err: float
    bound_name: str
    bound_value: float
    slack: float
    verdict: str
    seed: int | None
    reason: str = ""


RECORD_FIELDS = tuple(f.name for f in fields(ReportRecord))


def run_id_for(cfg: SweepConfig) -> str:
    """Content hash of the computational configuration.

    Output paths and the worker count do not change any record, so they are
    left out; the same sweep written to two places shares a run id.
    """
    canon = replace(cfg, workers=1, output=Output("", ""))
    return hashlib.sha256(dump_config(canon).encode("utf-8")).hexdigest()[:16]


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "")
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        return 1


@dataclass(frozen=True)
class _Unit:
    index: int
    code_spec: str | None
    channel_index: int


def _units(cfg: SweepConfig) -> list[_Unit]:
    out = []
    for ci, ch in enumerate(cfg.channels):
        if ch.kind == "dmc":
            out.append(_Unit(len(out), None, ci))
    for spec in cfg.corpus:
        for ci, ch in enumerate(cfg.channels):
            if ch.kind != "dmc":
                out.append(_Unit(len(out), spec, ci))
    return out


class _Emitter:
    def __init__(self, cfg: SweepConfig, run_id: str, code: BinaryLinearCode | None, channel: str):
        self.cfg = cfg
        self.run_id = run_id
        self.code = code
        self.channel = channel
        self.records: list[ReportRecord] = []

    def report(self, rep: bounds.BoundReport, quantity: str, t=None, n=None):
        self.records.append(
            ReportRecord(
                run_id=self.run_id,
                timestamp=self.cfg.timestamp,
                code_name=self.code.name if self.code else "",
                n=n if n is not None else (self.code.n if self.code else None),
                k=self.code.k if self.code else None,
                channel=self.channel,
                t=None if t is None else float(t),
                quantity=quantity,
                method=rep.method,
                value=rep.measured_value,
                std_err=rep.measured_std_err,
                bound_name=rep.bound_name,
                bound_value=rep.bound_value,
                slack=rep.slack,
                verdict=rep.verdict,
                seed=rep.seed,
            )
        )

    def skip(self, bound_name: str, quantity: str, reason: str, t=None, n=None):
        nan = float("nan")
        self.records.append(
            ReportRecord(
                self.run_id, self.cfg.timestamp, self.code.name if self.code else "",
                n if n is not None else (self.code.n if self.code else None),
                self.code.k if self.code else None, self.channel,
                None if t is None else float(t), quantity, "skipped", nan, nan,
                bound_name, nan, nan, bounds.INCONCLUSIVE, None, reason,
            )
        )


def _verify(cfg, name, params, measured):
    return bounds.verify(name, params, measured, tol=cfg.tolerances.tol_verdict, z=cfg.tolerances.z)


def _code_bsc(cfg, em, code, ts, chosen):
    limits = cfg.limits
    eps = None
    if "thm3" in chosen and 0 < code.k < code.n:
        eps = bounds.estimate_epsilon(code, limit=limits.exact_subset_limit)
    for t in ts:
        try:
            measured = bsc_mi_exact(code, t, limits.exact_enum_limit)
        except EngineLimitError as exc:
            for name in chosen:
                em.skip(name, "I_BSC", str(exc), t)
            continue
        base = {"code": code, "t": float(t), "limit": limits.exact_subset_limit}
        for name in chosen:
            try:
                if name == "sam_mgl":
                    h = exact(output_entropy_bsc_exact(code, t, limits.exact_enum_limit))
                    em.report(_verify(cfg, name, base, h), "H_BSC(Y)", t)
                elif name == "thm3":
                    if eps is None:
                        continue
                    params = {"n": code.n, "R": code.rate, "eps": eps, "t": float(t)}
                    em.report(_verify(cfg, name, params, measured), "I_BSC", t)
                else:
                    em.report(_verify(cfg, name, base, measured), "I_BSC", t)
            except EngineLimitError as exc:
                em.skip(name, "I_BSC", str(exc), t)


def _code_bec(cfg, em, code, ts, chosen):
    if "lemma1" not in chosen:
        return
    ts = np.asarray([t for t in ts if t > 0], dtype=float)
    if ts.size < 2:
        return
    try:
        reps = bounds.check_lemma1(code, ts, tol=1e-12, limit=cfg.limits.exact_subset_limit)
    except EngineLimitError as exc:
        em.skip("lemma1", "I_BEC/t", str(exc))
        return
    for t, rep in zip(ts[1:], reps):
        em.report(rep, "I_BEC/t", t)


def _code_bms(cfg, em, code, ch: BmsChannel, seed, chosen):
    mode = cfg.mc.bms_mode
    measured = None
    if mode in ("auto", "exact"):
        try:
            measured = bms_mi(code, ch, "exact", budget=cfg.limits.bms_exact_budget, limit=cfg.limits.exact_enum_limit)
        except EngineLimitError as exc:
            if mode == "exact":
                for name in chosen:
                    em.skip(name, "I_BMS", str(exc), ch.capacity)
                return
    if measured is None:
        try:
            measured = bms_mi(code, ch, "mc", samples=cfg.mc.samples, seed=seed, limit=cfg.limits.exact_enum_limit)
        except EngineLimitError as exc:
            for name in chosen:
                em.skip(name, "I_BMS", str(exc), ch.capacity)
            return
    params = {"code": code, "t": ch.capacity, "limit": cfg.limits.exact_subset_limit}
    for name in chosen:
        em.report(_verify(cfg, name, params, measured), "I_BMS", ch.capacity)


def _dmc(cfg, em, chc, chosen):
    ch = Dmc(np.asarray(chc.matrix), np.asarray(chc.input_dist))
    if chc.eta is not None:
        eta, source = chc.eta, chc.eta_source or "user"
    else:
        eta, source = sdpi_eta_estimate(ch).eta, "estimated"
    I1 = mutual_information(ch.input_dist, ch.matrix)
    H = entropy(ch.input_dist)
    for n in range(cfg.n_range.start, cfg.n_range.stop + 1):
        try:
            measured = repeated_input_mi_exact(ch, n, cfg.limits.type_budget)
        except EngineLimitError as exc:
            for name in chosen:
                em.skip(name, "I(X;Y^n)", str(exc), n=n)
            continue
        params = {"n": n, "I1": I1, "H": H, "eta": eta, "eta_source": source}
        if chc.c_mc is not None:
            params["c_mc"] = chc.c_mc
        for name in chosen:
            em.report(_verify(cfg, name, params, measured), "I(X;Y^n)", n=n)


def _run_unit(cfg: SweepConfig, run_id: str, unit: _Unit) -> list[ReportRecord]:
    chc = cfg.channels[unit.channel_index]
    if chc.kind == "dmc":
        chosen = [b for b in COMBINING_BOUNDS if b in cfg.bounds]
        em = _Emitter(cfg, run_id, None, chc.name)
        _dmc(cfg, em, chc, chosen)
        return em.records
    code = build_code(unit.code_spec)
    em = _Emitter(cfg, run_id, code, chc.name)
    if chc.kind in ("bsc", "bec"):
        ts = [chc.capacity] if chc.capacity is not None else list(cfg.t_grid.values())
        if chc.kind == "bsc":
            _code_bsc(cfg, em, code, ts, [b for b in CODE_BSC_BOUNDS if b in cfg.bounds])
        else:
            _code_bec(cfg, em, code, ts, cfg.bounds)
    else:
        ch = BmsChannel(tuple(tuple(s) for s in chc.states))
        seed = derive_seed(cfg.mc.master_seed, unit.index)
        _code_bms(cfg, em, code, ch, seed, [b for b in BMS_BOUNDS if b in cfg.bounds])
    return em.records


def _run_block(cfg: SweepConfig, run_id: str, units: list[_Unit]):
    return [(u.index, _run_unit(cfg, run_id, u)) for u in units]


def _blocks(units, workers):
    # static contiguous partition: worker i always gets the same units
    bounds_ = np.linspace(0, len(units), workers + 1).round().astype(int)
    return [units[bounds_[i] : bounds_[i + 1]] for i in range(workers)]


def run_sweep(cfg: SweepConfig, workers: int | None = None) -> list[ReportRecord]:
    """Run every (code, channel, t, bound) check in ``cfg``.

    Records come back ordered by (unit, position within unit) regardless of
    the worker count, so parallel and serial runs produce identical output.
    """
    cfg.validate()
    workers = workers or cfg.workers
    run_id = run_id_for(cfg)
    units = _units(cfg)
    if not units:
        return []
    if workers <= 1 or len(units) == 1:
        results = _run_block(cfg, run_id, units)
    else:
        blocks = [b for b in _blocks(units, min(workers, len(units))) if b]
        with ProcessPoolExecutor(max_workers=len(blocks)) as pool:
            futures = [pool.submit(_run_block, cfg, run_id, b) for b in blocks]
            results = [item for f in futures for item in f.result()]
    results.sort(key=lambda item: item[0])
    return [rec for _, recs in results for rec in recs]
