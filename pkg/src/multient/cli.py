"""``ent`` command line: measure, weyl, perm and catalog subcommands.

Exit codes: 0 success, 2 input error, 3 numeric or solver failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import catalog, permlab, weylfam
from .chmap import op_to_state
from .errors import ConsistencyError, InputError, SolverError
from .measures import measure_report, scott
from .measures import gme_ame as gme_ame_value
from .polygon import SolverConfig, polygon_measure
from .statecore import PureState, make_state

FORMAT_TAG = "multient v1"
HEADER = f"# {FORMAT_TAG}"
EXIT_INPUT = 2
EXIT_NUMERIC = 3


@dataclass
class RunConfig:
    threads: int = field(default_factory=lambda: default_threads())
    seed: int = 0
    solver_residual: float = 1e-10
    class_eps: float = 1e-9

    def __post_init__(self):
        if self.threads < 1:
            raise InputError("threads must be >= 1")
        if self.solver_residual <= 0 or self.class_eps <= 0:
            raise InputError("tolerances must be positive")

    def solver(self, item: int | None = None) -> SolverConfig:
        seed = self.seed if item is None else item_seed(self.seed, item)
        return SolverConfig(seed=seed, residual_tol=self.solver_residual)


def default_threads() -> int:
    env = os.environ.get("ENT_THREADS")
    if env is None:
        return os.cpu_count() or 1
    try:
        return int(env)
    except ValueError:
        raise InputError(f"ENT_THREADS must be an integer, got {env!r}") from None


def item_seed(seed: int, index: int) -> int:
    """Per-item seed hashed from (run seed, item index)."""
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0])


def fmt(v: float) -> str:
    return f"{v:.12g}"


# ------------------------------------------------------------------ state files

def state_to_json(state: PureState) -> dict:
    return {
        "format": FORMAT_TAG,
        "n": state.n,
        "d": state.d,
        "amplitudes": [[float(a.real), float(a.imag)] for a in state.amps],
    }


def load_state_file(path: str) -> PureState:
    try:
        with open(path) as fh:
            text = "".join(line for line in fh if not line.lstrip().startswith("#"))
        doc = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read state file {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("state file must be a JSON object")
    try:
        n, d, raw = int(doc["n"]), int(doc["d"]), doc["amplitudes"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"state file needs integer n, d and amplitudes ({exc})") from None
    if n < 2 or d < 2:
        raise InputError("state file needs n >= 2 and d >= 2")
    expected = d**n
    if not isinstance(raw, list) or len(raw) != expected:
        got = len(raw) if isinstance(raw, list) else "no list"
        raise InputError(f"expected {expected} amplitudes (d^n with n={n}, d={d}), got {got}")
    try:
        amps = np.array([complex(float(p[0]), float(p[1])) for p in raw])
    except (TypeError, ValueError, IndexError):
        raise InputError("amplitudes must be [re, im] pairs of numbers") from None
    if not np.all(np.isfinite(amps)):
        raise InputError("amplitudes contain NaN or Inf")
    return make_state(n, d, amps)


def parse_params(text: str | None) -> dict:
    """``a=0.5,b=1+2j`` -> {'a': 0.5, 'b': (1+2j)}; real values stay float."""
    out = {}
    if not text:
        return out
    for item in text.split(","):
        if "=" not in item:
            raise InputError(f"parameter {item!r} is not key=value")
        k, v = item.split("=", 1)
        try:
            val = complex(v.strip().replace(" ", ""))
        except ValueError:
            raise InputError(f"parameter {k} has non-numeric value {v!r}") from None
        if not (math.isfinite(val.real) and math.isfinite(val.imag)):
            raise InputError(f"parameter {k} is not finite")
        out[k.strip()] = val.real if val.imag == 0 else val
    return out


@contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
        return
    try:
        fh = open(path, "w", newline="")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from None
    with fh:
        yield fh


# ---------------------------------------------------------------- subcommands

def _measure_list(text: str, allowed) -> list[str]:
    ms = [m.strip() for m in text.split(",") if m.strip()]
    bad = [m for m in ms if m not in allowed]
    if bad or not ms:
        raise InputError(f"measures must be a nonempty subset of {list(allowed)}, got {text!r}")
    return ms


def report_dict(state: PureState, measures, cfg: RunConfig) -> dict:
    rep = measure_report(state, "polygon" in measures, cfg.solver())
    d = rep.to_dict()
    out = {"format": FORMAT_TAG, "n": state.n, "d": state.d}
    if "gme_ame" in measures:
        out["gme_ame"] = d["gme_ame"]
    if "scott" in measures:
        out["scott"] = d["scott"]
    if "polygon" in measures:
        out["polygon"] = d["polygon"]
    out["purities"] = d["purities"]
    out["flags"] = d["flags"]
    return out


def cmd_measure(args, cfg: RunConfig) -> int:
    if (args.state is None) == (args.named is None):
        raise InputError("give exactly one of --state FILE or --named NAME")
    measures = _measure_list(args.measures, ("gme_ame", "scott", "polygon"))
    if args.state:
        state = load_state_file(args.state)
    else:
        params = parse_params(args.params)
        if args.n is not None:
            params["n"] = args.n
        if args.d is not None:
            params["d"] = args.d
        state = catalog.named_state(args.named, **params)
    doc = report_dict(state, measures, cfg)
    with _output(args.out) as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    return 0


WEYL_COLUMNS = ["x", "y", "z", "gme_ame_numeric", "gme_ame_closed",
                "scott2_numeric", "scott2_closed", "polygon"]


def weyl_rows(points, cfg: RunConfig, with_polygon: bool = True):
    for i, p in enumerate(points):
        state = op_to_state(weylfam.cartan_unitary(p))
        poly = polygon_measure(state, cfg.solver(i)) if with_polygon else float("nan")
        yield [p.x, p.y, p.z, gme_ame_value(state), weylfam.gme_ame_closed_form(p),
               scott(state, 2), weylfam.scott_closed_form(p), poly]


def cmd_weyl(args, cfg: RunConfig) -> int:
    if args.samples < 1:
        raise InputError("--samples must be >= 1")
    if args.mode == "sweep":
        points = weylfam.sample_chamber(args.samples, cfg.seed)
    else:
        ts = np.linspace(0.0, weylfam.QUARTER, args.samples)
        points = [weylfam.edge_point(args.edge, float(t)) for t in ts]
    rows = list(weyl_rows(points, cfg, not args.no_polygon))
    with _output(args.csv) as fh:
        fh.write(HEADER + "\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(WEYL_COLUMNS)
        for r in rows:
            w.writerow([fmt(v) for v in r])
    return 0


def _value_cells(v):
    if isinstance(v, Fraction):
        return [str(v.numerator), str(v.denominator), fmt(float(v))]
    return ["", "", fmt(v)]


def cmd_perm(args, cfg: RunConfig) -> int:
    measures = _measure_list(args.measures, permlab.MEASURES)
    if "polygon" in measures and args.d != 2:
        raise InputError("polygon measure is only available for --d 2")
    perms, signs, nums = permlab.sweep_arrays(args.d, args.enphase, cfg.threads)

    if args.csv:
        records = permlab._records(perms, signs, nums, args.d, tuple(m for m in measures if m != "polygon"))
        with _output(args.csv) as fh:
            fh.write(HEADER + "\n")
            w = csv.writer(fh, lineterminator="\n")
            cols = ["index", "images"] + (["signs"] if signs is not None else [])
            w.writerow(cols + ["measure", "value_num", "value_den", "value_float"])
            for rec in records:
                vals = dict(rec.values)
                if "polygon" in measures:
                    vals["polygon"] = _polygon_for(rec, args.d, cfg)
                head = [rec.index, ";".join(map(str, rec.images))]
                if signs is not None:
                    head.append(";".join(map(str, rec.signs)))
                for m in measures:
                    w.writerow(head + [m] + _value_cells(vals[m]))

    hists = {}
    for m in measures:
        if m == "polygon":
            recs = permlab._records(perms, signs, nums, args.d, ())
            recs = (r._replace(values={"polygon": _polygon_for(r, args.d, cfg)}) for r in recs)
            hists[m] = permlab.classify(recs, "polygon", "tol", cfg.class_eps)
        else:
            hists[m] = permlab.classify_arrays(nums, args.d, m)

    if args.classes:
        with _output(args.classes) as fh:
            fh.write(HEADER + "\n")
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["measure", "value_num", "value_den", "value_float", "count", "representative"])
            for m, h in hists.items():
                for e in h.entries:
                    w.writerow([m] + _value_cells(e.value) + [e.count, e.representative])

    if args.report:
        report = {"format": FORMAT_TAG, "d": args.d, "enphase": args.enphase,
                  "total": int(len(perms))}
        if args.d == 3 and args.enphase == "none":
            if "gme_ame" in hists:
                report["gme_ame_vs_published"] = permlab.compare_with_published(
                    hists["gme_ame"], permlab.PUBLISHED_GME_AME_D3)
            if "scott" in hists:
                report["scott_vs_published"] = permlab.compare_with_published(
                    hists["scott"], permlab.PUBLISHED_SCOTT_D3)
        if args.d == 2 and args.enphase == "none":
            report["qubit_audit"] = permlab.qubit_audit()
        with _output(args.report) as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")

    if not (args.csv or args.classes or args.report):
        for m, h in hists.items():
            print(f"{m}: {len(h)} classes over {h.total} states")
            for e in h.entries:
                print(f"  {fmt(float(e.value)):>16}  {str(e.value):>12}  {e.count:>7}")
    return 0


def _polygon_for(rec, d, cfg):
    phases = None if rec.signs is None else tuple(0.0 if s > 0 else np.pi for s in rec.signs)
    state = permlab.perm_state(permlab.PermutationSpec(d, rec.images, phases))
    return polygon_measure(state, cfg.solver(rec.index))


def cmd_catalog(args, cfg: RunConfig) -> int:
    if args.list:
        for name, e in catalog.CATALOG.items():
            params = ",".join(e.params) if e.params else "-"
            print(f"{name:10s} params={params:10s} {e.summary}")
        return 0
    if not args.emit:
        raise InputError("give --list or --emit NAME")
    state = catalog.named_state(args.emit, **parse_params(args.params))
    with _output(args.out) as fh:
        json.dump(state_to_json(state), fh)
        fh.write("\n")
    return 0


# --------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker threads (default: env ENT_THREADS or CPU count)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="run seed for all randomness (default 0)")
    p = argparse.ArgumentParser(prog="ent", description="Multipartite entanglement measures",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("measure", parents=[common], help="evaluate measures on one state")
    m.add_argument("--state", help="StateFile JSON path")
    m.add_argument("--named", help="catalog state name")
    m.add_argument("--params", help="catalog parameters, e.g. a=0.5,b=0.2")
    m.add_argument("--n", type=int)
    m.add_argument("--d", type=int)
    m.add_argument("--measures", default="gme_ame,scott")
    m.add_argument("--out", help="output path (default stdout)")
    m.set_defaults(func=cmd_measure)

    w = sub.add_parser("weyl", parents=[common], help="Cartan-family sweeps with closed-form oracles")
    w.add_argument("--mode", choices=["sweep", "edge"], default="sweep")
    w.add_argument("--edge", choices=list(weylfam.EDGES), default=weylfam.LOCAL_CNOT)
    w.add_argument("--samples", type=int, default=100)
    w.add_argument("--csv", help="output CSV (default stdout)")
    w.add_argument("--no-polygon", action="store_true", help="leave the polygon column as nan")
    w.set_defaults(func=cmd_weyl)

    q = sub.add_parser("perm", parents=[common], help="exhaustive permutation-state sweeps")
    q.add_argument("--d", type=int, choices=[2, 3], required=True)
    q.add_argument("--measures", default="gme_ame")
    q.add_argument("--enphase", choices=["none", "binary"], default="none")
    q.add_argument("--csv", help="per-record CSV")
    q.add_argument("--classes", help="class-table CSV")
    q.add_argument("--report", help="discrepancy report JSON")
    q.set_defaults(func=cmd_perm)

    c = sub.add_parser("catalog", parents=[common], help="list or emit named states")
    c.add_argument("--list", action="store_true")
    c.add_argument("--emit", metavar="NAME")
    c.add_argument("--params")
    c.add_argument("--out")
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        seed = getattr(args, "seed", 0)
        threads = getattr(args, "threads", None)
        cfg = RunConfig(seed=seed) if threads is None else RunConfig(threads, seed)
        return args.func(args, cfg)
    except InputError as exc:
        print(f"ent: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SolverError, ConsistencyError) as exc:
        print(f"ent: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
