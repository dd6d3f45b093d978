"""Command-line front end: compute, sweep, verify, scan-monotonicity, ingest.

Exit codes: 0 success, 1 usage or spec parse error, 2 numerical
non-convergence (or a failed asserted check in ``verify``), 3 checker crash.

Machine output (JSON or CSV) goes to ``--output`` when given, otherwise to
stdout; human-readable text then goes to stderr so stdout stays parseable.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .closed_forms import (
    closed_form_icre_exp, closed_form_iwce_gev, closed_form_iwcre_exp_expweight,
    closed_form_iwcre_exp_poly,
)
from .distributions import GEV, Empirical, Exponential, read_samples
from .entropy import (
    CONVENTIONS, RATIO, DegenerateInterval, TruncationInterval, interval_shannon_entropy,
    iwce, iwcre, wce, wcre,
)
from .numerics import ConvergenceError
from .report import SCHEMA_VERSION, csv_text, dumps
from .scan import WITNESS_ALPHAS, WITNESS_RATES, WITNESS_T2, find_expweight_witness, \
    icre_monotone_scan
from .specs import (
    CLOSED_FORM_MEASURES, MEASURES, RunSpec, SpecError, SweepCell, parse_axis, parse_real,
)
from .suite import Suite, SuiteCrash, format_table, summary_csv
from .weights import ConstantOne, ExponentialWeight, GEVPolynomialWeight, PolynomialWeight

EXIT_OK, EXIT_USAGE, EXIT_NONCONVERGED, EXIT_CRASH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; this CLI reserves 2 for numerics
    def error(self, message):
        raise UsageError(message)


class _Out:
    """Routes machine output to a file or stdout and human text accordingly."""

    def __init__(self, path):
        self.path = path
        self.human = sys.stdout if path else sys.stderr

    def say(self, text=""):
        print(text, file=self.human)

    def emit(self, text, path=None):
        target = path or self.path
        if target:
            Path(target).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)


# -- compute -------------------------------------------------------------------

def _closed_form(dist, wf, iv, measure, cfg, as_printed=False):
    """Closed-form value matching (dist, weight, measure) under the ratio convention."""
    if iv.convention != RATIO:
        return None
    t1, t2 = iv.t1, iv.t2
    if isinstance(dist, Exponential):
        if measure in ("icre", "cf_icre") or (measure == "iwcre" and isinstance(wf, ConstantOne)):
            return "icre_exp", closed_form_icre_exp(dist.rate, t1, t2)
        if measure in ("iwcre", "cf_iwcre_expw") and isinstance(wf, ExponentialWeight):
            return "iwcre_exp_expweight", closed_form_iwcre_exp_expweight(
                dist.rate, wf.alpha, t1, t2, as_printed=as_printed)
        if measure in ("iwcre", "cf_iwcre_poly") and isinstance(wf, PolynomialWeight):
            return "iwcre_exp_poly", closed_form_iwcre_exp_poly(
                dist.scale, wf.coeffs, t1, t2, as_printed=as_printed)
    if isinstance(dist, GEV) and measure in ("iwce", "cf_iwce_gev") \
            and isinstance(wf, GEVPolynomialWeight):
        return "iwce_gev", closed_form_iwce_gev(dist, wf.coeffs, t1, t2, cfg)
    return None


def _compute_one(spec, dist, wf, conv, cfg):
    m = spec.measure
    rec = {"measure": m, "convention": conv}
    if m in ("wcre", "wce"):
        ev = (wcre if m == "wcre" else wce)(dist, wf, cfg)
        rec.update(value=ev.value, method=ev.method, error_estimate=ev.error_estimate,
                   convention="none", closed_form=None)
        return rec
    iv = TruncationInterval.make(dist, spec.t1, spec.t2, conv)
    if m in CLOSED_FORM_MEASURES:
        cf = _closed_form(dist, wf, iv, m, cfg, spec.as_printed)
        if cf is None:
            raise SpecError("no closed form for this distribution/weight/convention", m)
        rec.update(value=cf[1], method="closed_form", error_estimate=0.0,
                   closed_form={"name": cf[0], "value": cf[1]})
        return rec
    if m == "ih":
        val = interval_shannon_entropy(dist, iv, cfg)
        rec.update(value=val, method="quadrature", error_estimate=None, closed_form=None)
        return rec
    w = ConstantOne() if m in ("icre", "icpe") else wf
    ev = (iwcre if m in ("iwcre", "icre") else iwce)(dist, w, iv, cfg)
    rec.update(value=ev.value, method=ev.method, error_estimate=ev.error_estimate)
    cf = _closed_form(dist, w, iv, m, cfg, spec.as_printed)
    if cf is None:
        rec["closed_form"] = None
    else:
        diff = abs(cf[1] - ev.value)
        tol = (1e-6 if cf[0] == "iwce_gev" else 1e-8) * max(1.0, abs(ev.value))
        rec["closed_form"] = {"name": cf[0], "value": cf[1], "abs_diff": diff,
                              "agrees": diff <= tol, "as_printed": spec.as_printed}
    return rec


def cmd_compute(spec: RunSpec, out: _Out) -> int:
    dist = spec.dist()
    wf = spec.weight(dist)
    cfg = spec.quad_config()
    convs = ("none",) if spec.measure in ("wcre", "wce") else spec.conventions()
    records = [_compute_one(spec, dist, wf, c, cfg) for c in convs]
    for r in records:
        err = "" if r["error_estimate"] is None else f", err {r['error_estimate']:.2e}"
        out.say(f"{r['measure']}[{r['convention']}] = {r['value']!r} ({r['method']}{err})")
        cf = r["closed_form"]
        if cf and "abs_diff" in cf:
            out.say(f"  closed form {cf['name']}: {cf['value']!r} (|diff| {cf['abs_diff']:.2e})")
    if spec.format == "csv":
        rows = [(r["measure"], r["convention"], r["value"], r["method"], r["error_estimate"],
                 (r["closed_form"] or {}).get("value")) for r in records]
        out.emit(csv_text(("measure", "convention", "value", "method", "error_estimate",
                           "closed_form"), rows))
    else:
        out.emit(dumps({"schema": SCHEMA_VERSION, "command": "compute",
                        "spec": spec.canonical(), "records": records}))
    return EXIT_OK


# -- sweep -----------------------------------------------------------------------

def _sweep_value(spec, dist, wf, t1, t2, cfg):
    m = spec.measure
    iv = TruncationInterval.make(dist, t1, t2, spec.convention)
    if m in CLOSED_FORM_MEASURES:
        cf = _closed_form(dist, wf, iv, m, cfg, spec.as_printed)
        if cf is None:
            raise SpecError("no closed form for this distribution/weight/convention", m)
        return cf[1], 0.0
    if m == "ih":
        return interval_shannon_entropy(dist, iv, cfg), None
    if m in ("wcre", "wce"):
        raise SpecError("sweep needs an interval measure", m)
    w = ConstantOne() if m in ("icre", "icpe") else wf
    ev = (iwcre if m in ("iwcre", "icre") else iwce)(dist, w, iv, cfg)
    return ev.value, ev.error_estimate


def cmd_sweep(spec: RunSpec, out: _Out) -> int:
    if spec.convention == "both":
        raise SpecError("sweep needs a single convention", "both")
    dist = spec.dist()
    wf = spec.weight(dist)
    cfg = spec.quad_config()
    t1s = parse_axis(spec.grid.get("t1_grid", repr(spec.t1)), "t1")
    t2s = parse_axis(spec.grid.get("t2_grid", "inf" if math.isinf(spec.t2) else repr(spec.t2)),
                     "t2")
    cells = []
    for t1 in t1s:
        for t2 in t2s:
            if not (0 <= t1 < t2):
                cells.append(SweepCell(t1, t2, None, None, False, "skipped"))
                continue
            try:
                v, e = _sweep_value(spec, dist, wf, t1, t2, cfg)
                cells.append(SweepCell(t1, t2, v, e, True, "ok"))
            except ConvergenceError as exc:
                p = exc.partial
                cells.append(SweepCell(t1, t2, p.value if p else None,
                                       p.error_estimate if p else None, False, "nonconverged"))
            except DegenerateInterval:
                cells.append(SweepCell(t1, t2, None, None, False, "skipped"))
    n_skip = sum(c.status == "skipped" for c in cells)
    n_bad = sum(c.status == "nonconverged" for c in cells)
    if n_skip == len(cells):
        raise SpecError("sweep grid has no valid cell", f"{len(cells)} skipped")
    diffs = []
    for t2 in t2s:
        col = [c for c in cells if c.t2 == t2 and c.status == "ok"]
        if len(col) >= 2:
            d = np.diff([c.value for c in col])
            diffs.append({"t2": t2, "max_first_difference": float(d.max()),
                          "positive_first_differences": int((d > 0).sum())})
    out.say(f"sweep {spec.measure}: {len(cells)} cells, {n_skip} skipped, "
            f"{n_bad} non-converged")
    for d in diffs:
        out.say(f"  t2={d['t2']!r}: max first difference in t1 {d['max_first_difference']:.6g}"
                f" ({d['positive_first_differences']} positive)")
    if spec.format == "csv":
        rows = [(c.t1, c.t2, c.value, c.error_estimate, c.converged, c.status) for c in cells]
        out.emit(csv_text(("t1", "t2", "value", "error_estimate", "converged", "status"), rows))
    else:
        out.emit(dumps({"schema": SCHEMA_VERSION, "command": "sweep", "spec": spec.canonical(),
                        "cells": [c.__dict__ for c in cells], "skipped": n_skip,
                        "nonconverged": n_bad, "first_differences": diffs}))
    return EXIT_NONCONVERGED if n_bad else EXIT_OK


# -- verify ------------------------------------------------------------------------

def _sibling(path, suffix):
    return str(Path(path).with_suffix(suffix))


def cmd_verify(spec: RunSpec, out: _Out, sections=None) -> int:
    for name in sections or ():
        if name not in Suite.SECTIONS:
            raise SpecError("unknown verify section", name)
    suite = Suite(spec.seed, spec.quad_config(), spec.as_printed, spec.conventions(),
                  log=lambda m: None)
    try:
        result = suite.run(sections)
    except SuiteCrash as crash:
        replay = {"schema": SCHEMA_VERSION, "command": "verify", "spec": spec.canonical(),
                  "section": crash.section, "case": crash.case,
                  "error": f"{type(crash.exc).__name__}: {crash.exc}"}
        text = dumps(replay)
        if spec.output_path:
            Path(_sibling(spec.output_path, ".crash.json")).write_text(text, encoding="utf-8")
        sys.stderr.write(crash.trace)
        sys.stderr.write(text)
        return EXIT_CRASH
    result["spec"] = spec.canonical()
    js, cs = dumps(result), summary_csv(result)
    if spec.output_path:
        if spec.format == "csv":
            out.emit(cs)
            Path(_sibling(spec.output_path, ".json")).write_text(js, encoding="utf-8")
        else:
            out.emit(js)
            Path(_sibling(spec.output_path, ".csv")).write_text(cs, encoding="utf-8")
    else:
        out.emit(cs if spec.format == "csv" else js)
    out.say(format_table(result))
    return EXIT_OK if result["summary"]["failed"] == 0 else EXIT_NONCONVERGED


# -- scan-monotonicity ---------------------------------------------------------------

def cmd_scan(spec: RunSpec, out: _Out, args) -> int:
    rates = [parse_real(v, "rate") for v in args.rates.split(",")]
    alphas = [parse_real(v, "alpha") for v in args.alphas.split(",")]
    t2s = [parse_real(v, "t2") for v in args.t2_values.split(",")]
    icre = [r for rate in rates for r in icre_monotone_scan(rate, n=args.points)]
    w = find_expweight_witness(rates, alphas, t2s, n=args.witness_points,
                               cfg=spec.quad_config())
    for r in icre:
        out.say(f"icre rate={r['rate']!r} t2={r['t2']!r}: max first difference "
                f"{r['max_first_difference']:.6g} ({'nonincreasing' if r['nonincreasing'] else 'INCREASES'})")
    if w:
        out.say(f"exp-weight witness: rate={w['rate']!r} alpha={w['alpha']!r} t2={w['t2']!r} "
                f"t1*={w['t1_star']:.6g} first difference {w['first_difference']:.6g}")
    else:
        out.say("exp-weight witness: none found")
    out.emit(dumps({"schema": SCHEMA_VERSION, "command": "scan-monotonicity",
                    "spec": spec.canonical(), "icre": icre, "witness": w}))
    return EXIT_OK


# -- ingest ----------------------------------------------------------------------------

QUANTILE_LEVELS = (0.0, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 1.0)


def cmd_ingest(path: str, spec: RunSpec, out: _Out) -> int:
    try:
        xs = read_samples(path)
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}", path) from None
    except ValueError as exc:
        raise SpecError(str(exc)) from None
    emp = Empirical(xs, source=str(path))
    q = {repr(p): float(emp.quantile(p)) for p in QUANTILE_LEVELS}
    out.say(f"{path}: n={emp.n} min={emp.support_lower!r} max={emp.support_upper!r}")
    for p, v in q.items():
        out.say(f"  q{p:<5s} {v!r}")
    out.say(f"reference it as --dist emp:{path}")
    if spec.format == "csv":
        out.emit(csv_text(("level", "quantile"), [(float(k), v) for k, v in q.items()]))
    else:
        out.emit(dumps({"schema": SCHEMA_VERSION, "command": "ingest", "path": str(path),
                        "dist_spec": emp.spec(), "n": emp.n, "min": emp.support_lower,
                        "max": emp.support_upper, "quantiles": q}))
    return EXIT_OK


# -- argument parsing ------------------------------------------------------------------

def _common(p, convention_default):
    p.add_argument("--spec", help="JSON run-spec file; explicit flags override its fields")
    p.add_argument("--dist", dest="dist_spec", default=None, help="e.g. exp:rate=1")
    p.add_argument("--weight", dest="weight_spec", default=None, help="e.g. const, poly:1,0.5")
    p.add_argument("--t1", default=None)
    p.add_argument("--t2", default=None, help="real or inf")
    p.add_argument("--convention", choices=CONVENTIONS + ("both",), default=None,
                   help=f"default {convention_default}")
    p.add_argument("--measure", choices=MEASURES, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--abs-tol", type=float, default=None)
    p.add_argument("--rel-tol", type=float, default=None)
    p.add_argument("--max-subdivisions", type=int, default=None)
    p.add_argument("--as-printed", action="store_true", default=None,
                   help="use the literal published constants in the closed forms")
    p.add_argument("--output", dest="output_path", default=None)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.set_defaults(convention_default=convention_default)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="iwcelab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"iwcelab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="evaluate one measure")
    _common(p, "ratio")

    p = sub.add_parser("sweep", help="evaluate a measure over a (t1, t2) grid")
    _common(p, "ratio")
    p.add_argument("--t1-grid", default=None, help="start:stop:num or comma list")
    p.add_argument("--t2-grid", default=None, help="start:stop:num or comma list")

    p = sub.add_parser("verify", help="run the verification suite")
    _common(p, "both")
    p.add_argument("--sections", default=None, help=argparse.SUPPRESS)

    p = sub.add_parser("scan-monotonicity", help="t1-monotonicity scans of the closed forms")
    _common(p, "ratio")
    p.add_argument("--rates", default=",".join(repr(v) for v in WITNESS_RATES))
    p.add_argument("--alphas", default=",".join(repr(v) for v in WITNESS_ALPHAS))
    p.add_argument("--t2-values", default=",".join(repr(v) for v in WITNESS_T2))
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--witness-points", type=int, default=200)

    p = sub.add_parser("ingest", help="summarize a sample file for use as emp:<path>")
    p.add_argument("path")
    p.add_argument("--output", dest="output_path", default=None)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    return parser


def spec_from_args(args) -> RunSpec:
    cmd = args.command
    base = RunSpec.from_file(args.spec).to_dict() if getattr(args, "spec", None) else {}
    if base and base.get("command", cmd) != cmd:
        raise SpecError("run-spec command does not match", base["command"])
    base["command"] = cmd
    base.setdefault("convention", getattr(args, "convention_default", "ratio"))
    for name in ("dist_spec", "weight_spec", "convention", "measure", "seed", "output_path",
                 "format", "as_printed"):
        v = getattr(args, name, None)
        if v is not None:
            base[name] = v
    for name in ("t1", "t2"):
        v = getattr(args, name, None)
        if v is not None:
            base[name] = parse_real(v, name)
    tol = dict(base.get("tolerances", {}))
    for name in ("abs_tol", "rel_tol", "max_subdivisions"):
        v = getattr(args, name, None)
        if v is not None:
            tol[name] = v
    base["tolerances"] = tol
    grid = dict(base.get("grid", {}))
    for name in ("t1_grid", "t2_grid"):
        v = getattr(args, name, None)
        if v is not None:
            grid[name] = v
    base["grid"] = grid
    return RunSpec.from_dict(base)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        spec = spec_from_args(args)
        out = _Out(spec.output_path)
        if args.command == "compute":
            return cmd_compute(spec, out)
        if args.command == "sweep":
            return cmd_sweep(spec, out)
        if args.command == "verify":
            sections = args.sections.split(",") if args.sections else None
            return cmd_verify(spec, out, sections)
        if args.command == "scan-monotonicity":
            return cmd_scan(spec, out, args)
        return cmd_ingest(args.path, spec, out)
    except UsageError as exc:
        print(f"iwcelab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SpecError, DegenerateInterval) as exc:
        print(f"iwcelab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"iwcelab: quadrature did not converge: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except ValueError as exc:
        print(f"iwcelab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
