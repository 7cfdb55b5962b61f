"""Command line entry point: ``linmi {mi,verify,sweep,combining,epsilon,scalars}``.

Exit status: 0 when every verdict holds (or is inconclusive), 1 when any
bound is violated, 2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .. import bounds
from ..channels import BmsChannel, Dmc, bms_from_bec, bms_from_bsc, bsc_dmc, erasure_dmc
from ..engines import (
    EngineLimitError,
    bec_mi_exact,
    bec_mi_mc,
    bms_mi,
    bsc_mi_exact,
    sdpi_eta_estimate,
)
from ..scalar import alpha, binary_entropy, psi, sdpi_eta_bsc, tstar
from .config import ConfigError, load_config
from .corpus import build_code
from .report import emit_reports, fmt_value, summary_line
from .sweep import WORKERS_ENV, ReportRecord, default_workers, run_sweep

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.replace(",", " ").split()]


def parse_code_channel(text: str):
    """``bec:T``, ``bsc:T`` or ``bms:w@p,w@p,...`` as a :class:`BmsChannel`."""
    kind, _, rest = text.partition(":")
    kind = kind.lower()
    try:
        if kind == "bec":
            return "bec", bms_from_bec(float(rest))
        if kind == "bsc":
            return "bsc", bms_from_bsc(float(rest))
        if kind == "bms":
            states = []
            for item in rest.split(","):
                w, p = item.split("@")
                states.append((float(w), float(p)))
            return "bms", BmsChannel(tuple(states))
    except ValueError as exc:
        raise UsageError(f"bad channel {text!r}: {exc}") from exc
    raise UsageError(f"unknown channel {text!r}; use bec:T, bsc:T or bms:w@p,...")


def _code(spec):
    try:
        return build_code(spec)
    except (ValueError, OSError) as exc:
        raise UsageError(str(exc)) from exc


def _print_report(rep: bounds.BoundReport, out):
    t = rep.params.get("t")
    where = f" t={fmt_value(float(t))}" if t is not None else ""
    print(
        f"{rep.bound_name}{where}: measured={fmt_value(rep.measured_value)} "
        f"bound={fmt_value(rep.bound_value)} slack={fmt_value(rep.slack)} verdict={rep.verdict}",
        file=out,
    )


def _finish(reports, out) -> int:
    counts = {v: sum(r.verdict == v for r in reports) for v in ("holds", "violated", "inconclusive")}
    print(
        f"records={len(reports)} holds={counts['holds']} violated={counts['violated']} inconclusive={counts['inconclusive']}",
        file=out,
    )
    return EXIT_VIOLATED if counts["violated"] else EXIT_OK


# --- subcommands -------------------------------------------------------------


def cmd_mi(args, out) -> int:
    code = _code(args.code)
    kind, ch = parse_code_channel(args.channel)
    if args.mc:
        if kind == "bec":
            res = bec_mi_mc(code, ch.capacity, args.samples, args.seed)
        else:
            res = bms_mi(code, ch, "mc", samples=args.samples, seed=args.seed)
        print(f"{fmt_value(res.value)} +- {fmt_value(res.std_err)} (monte_carlo, samples={res.samples}, seed={res.seed})", file=out)
        return EXIT_OK
    if kind == "bec":
        res = bec_mi_exact(code, ch.capacity)
    elif kind == "bsc":
        res = bsc_mi_exact(code, ch.capacity)
    else:
        res = bms_mi(code, ch, "exact")
    print(fmt_value(res.value), file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    name = args.bound
    if name == "thm1_iid":
        if args.n is None or args.p is None or args.t is None:
            raise UsageError("thm1_iid needs --n, --p and --t")
        rep = bounds.check_thm1_iid(args.n, args.p, args.t)
        _print_report(rep, out)
        return _finish([rep], out)
    if args.code is None:
        raise UsageError(f"{name} needs --code")
    code = _code(args.code)
    if name == "lemma1":
        ts = np.linspace(1.0 / args.points, 1.0, args.points)
        reps = bounds.check_lemma1(code, ts)
        bad = [r for r in reps if r.verdict != "holds"]
        for r in bad:
            _print_report(r, out)
        return _finish(reps, out)
    if name in ("cor1", "cor2", "bec_upper") and args.channel:
        _, ch = parse_code_channel(args.channel)
        reps = [r for r in bounds.check_bms(code, ch) if r.bound_name == name]
        _print_report(reps[0], out)
        return _finish(reps, out)
    if args.t is None:
        raise UsageError(f"{name} needs --t")
    if name == "thm1":
        rep = bounds.check_thm1(code, args.t)
    elif name == "sam_psi":
        rep = bounds.check_sam_psi(code, args.t, args.t1)
    elif name == "sam_mgl":
        rep = bounds.check_sam_mgl(code, args.t)
    elif name == "thm3":
        rep = bounds.check_thm3(code, args.t, args.eps)
    elif name in ("cor1", "cor2", "bec_upper"):
        rep = bounds.verify(name, {"code": code, "t": args.t}, bsc_mi_exact(code, args.t))
    else:
        raise UsageError(f"unknown bound {name!r}")
    _print_report(rep, out)
    return _finish([rep], out)


def cmd_sweep(args, out) -> int:
    cfg = load_config(args.config)
    if args.csv:
        cfg.output.csv_path = args.csv
    if args.json:
        cfg.output.json_path = args.json
    # flag, then environment, then config file
    if args.workers:
        workers = args.workers
    elif os.environ.get(WORKERS_ENV):
        workers = default_workers()
    else:
        workers = cfg.workers
    records = run_sweep(cfg, workers=workers)
    paths = emit_reports(records, cfg.output.csv_path, cfg.output.json_path)
    for p in paths:
        print(f"wrote {p}", file=out)
    for rec in records:
        if rec.verdict == "violated":
            print(f"VIOLATED {rec.bound_name} code={rec.code_name} channel={rec.channel} t={fmt_value(rec.t)} n={rec.n} slack={fmt_value(rec.slack)}", file=out)
    print(summary_line(records), file=out)
    return EXIT_VIOLATED if any(r.verdict == "violated" for r in records) else EXIT_OK


def _combining_channel(args):
    given = [x is not None for x in (args.bsc, args.erasure, args.matrix)]
    if sum(given) != 1:
        raise UsageError("give exactly one of --bsc, --erasure, --matrix")
    eta, source = None, None
    try:
        if args.bsc is not None:
            q = 0.5 if args.q is None else args.q
            ch = bsc_dmc(args.bsc, q)
            if q == 0.5:
                eta, source = (1.0 - 2.0 * args.bsc) ** 2, "closed_form"
        elif args.erasure is not None:
            px = _floats(args.input_dist) if args.input_dist else [0.5, 0.5]
            ch = erasure_dmc(args.erasure, px)
            eta, source = 1.0 - args.erasure, "closed_form"
        else:
            if not args.input_dist:
                raise UsageError("--matrix needs --input-dist")
            rows = [_floats(r) for r in args.matrix.split(";") if r.strip()]
            ch = Dmc(np.array(rows), np.array(_floats(args.input_dist)))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return ch, eta, source


def cmd_combining(args, out) -> int:
    ch, eta, source = _combining_channel(args)
    if args.eta is not None:
        eta, source = args.eta, "user"
    if eta is None:
        est = sdpi_eta_estimate(ch)
        eta, source = est.eta, "estimated"
        print(f"eta {fmt_value(eta)} ({est.note})", file=out)
    reps = []
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        for rep in bounds.check_combining(ch, n, eta, source, args.c_mc):
            reps.append(rep)
            rows.append(
                ReportRecord("", "", "", n, None, ch.describe(), None, "I(X;Y^n)", rep.method, rep.measured_value,
                             rep.measured_std_err, rep.bound_name, rep.bound_value, rep.slack, rep.verdict, None)
            )
    if args.csv or args.json:
        emit_reports(rows, args.csv, args.json)
    for rep in reps:
        if rep.verdict != "holds":
            print(f"{rep.verdict.upper()} {rep.bound_name} n={rep.params['n']} slack={fmt_value(rep.slack)}", file=out)
    last = [r for r in reps if r.params["n"] == args.n_max]
    for r in last:
        print(f"n={args.n_max} {r.bound_name}: measured={fmt_value(r.measured_value)} bound={fmt_value(r.bound_value)}", file=out)
    return _finish(reps, out)


def cmd_epsilon(args, out) -> int:
    code = _code(args.code)
    try:
        grid = bounds.epsilon_grid(code.rate, args.points)
        eps = bounds.estimate_epsilon(code, grid)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    R = code.rate
    print(f"code={code.name} n={code.n} k={code.k} R={fmt_value(R)} eps={fmt_value(eps)} t*={fmt_value(float(tstar(R)))}", file=out)
    reps = [bounds.check_thm3(code, t, eps) for t in np.linspace(args.t_start, args.t_stop, args.t_points)]
    for r in reps:
        _print_report(r, out)
    return _finish(reps, out)


def cmd_scalars(args, out) -> int:
    ts = np.linspace(args.start, args.stop, args.points)
    header = ["t", "h", "eta", "alpha", f"psi_x{fmt_value(args.x)}"]
    rows = [[float(t), float(binary_entropy(t)), float(sdpi_eta_bsc(t)), float(alpha(t)), float(psi(t, args.x))] for t in ts]
    text = ",".join(header) + "\n" + "".join(",".join(fmt_value(v) for v in row) + "\n" for row in rows)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        print(f"wrote {args.csv}", file=out)
    else:
        out.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linmi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mi", help="mutual information of one code over one channel")
    p.add_argument("--code", required=True, help="e.g. repetition:3, hamming74, random:10:4:7, file:path")
    p.add_argument("--channel", required=True, help="bec:T, bsc:T or bms:w@p,w@p")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact engine (default)")
    mode.add_argument("--mc", action="store_true", help="Monte Carlo engine (BEC and BMS)")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_mi)

    p = sub.add_parser("verify", help="check one named bound")
    p.add_argument("bound", choices=["thm1", "thm1_iid", "sam_psi", "sam_mgl", "cor1", "cor2", "bec_upper", "thm3", "lemma1"])
    p.add_argument("--code")
    p.add_argument("--t", type=float)
    p.add_argument("--t1", type=float)
    p.add_argument("--eps", type=float)
    p.add_argument("--channel", help="BMS channel for cor1/cor2/bec_upper")
    p.add_argument("--n", type=int, help="block length for thm1_iid")
    p.add_argument("--p", type=float, help="Bernoulli parameter for thm1_iid")
    p.add_argument("--points", type=int, default=512, help="grid size for lemma1")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="run a configured corpus x channel x grid sweep")
    p.add_argument("--config", required=True)
    p.add_argument("--workers", type=int)
    p.add_argument("--csv")
    p.add_argument("--json")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("combining", help="repeated-transmission bounds for one (P_X, W)")
    p.add_argument("--bsc", type=float, help="BSC crossover")
    p.add_argument("--erasure", type=float, help="erasure probability")
    p.add_argument("--matrix", help="rows separated by ';', entries by spaces")
    p.add_argument("--q", type=float, help="P(X=1) for --bsc (default 0.5)")
    p.add_argument("--input-dist", help="input distribution for --erasure/--matrix")
    p.add_argument("--eta", type=float, help="user-supplied upper bound on the SDPI coefficient")
    p.add_argument("--c-mc", type=float, help="more-capable erasure capacity for the upper bound")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=200)
    p.add_argument("--csv")
    p.add_argument("--json")
    p.set_defaults(func=cmd_combining)

    p = sub.add_parser("epsilon", help="epsilon-information-capacity analysis of a code")
    p.add_argument("--code", required=True)
    p.add_argument("--points", type=int, default=bounds.EPSILON_GRID_POINTS)
    p.add_argument("--t-start", type=float, default=0.05)
    p.add_argument("--t-stop", type=float, default=0.95)
    p.add_argument("--t-points", type=int, default=19)
    p.set_defaults(func=cmd_epsilon)

    p = sub.add_parser("scalars", help="tabulate h, eta_t, alpha_t, psi_t(x)")
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=1.0)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--x", type=float, default=0.5)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_scalars)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except EngineLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
