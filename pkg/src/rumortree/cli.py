"""Command-line front end: ``rumortree <command> [flags]``.

Exit status: 0 success, 1 invalid input or failed validation, 2 numeric
non-convergence, 3 resource cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import range_bounds as rb
from .distributions import ModelParams, offspring_mean, offspring_pmf, root_pmf
from .progeny import progeny_mean, progeny_pmf, progeny_pmf_float
from .simulate import DEFAULT_VERTEX_BUDGET, ENGINES, default_jobs, monte_carlo
from .survival import (
    DEFAULT_TOL,
    ConvergenceError,
    extinction_fixed_point,
    format_theta,
    survival_probability,
    theta_table,
)
from .validate import FAULTS, run_checks

log = logging.getLogger("rumortree")

EXIT_OK, EXIT_INVALID, EXIT_NONCONVERGED, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


class Output:
    """One command's result in both serialisations."""

    def __init__(self, document: dict, header: Sequence[str], rows: Sequence[Sequence]):
        self.document = document
        self.header = list(header)
        self.rows = [list(r) for r in rows]

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.document, indent=2) + "\n"
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        for row in self.rows:
            writer.writerow([_cell(v) for v in row])
        return buf.getvalue()


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def frac(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _params(args) -> ModelParams:
    try:
        return ModelParams(args.d, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _n_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return _int_list(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N, A..B or a comma list, got {text!r}")


def _depth(text: str) -> Optional[int]:
    if text.lower() in ("none", "inf", "unbounded"):
        return None
    return int(text)


# commands ------------------------------------------------------------------

def cmd_pmf(args) -> Output:
    params = _params(args)
    off, root = offspring_pmf(params), root_pmf(params)
    doc = {
        "d": params.d,
        "k": params.k,
        "offspring": [{"value": v, "mass": frac(m), "float": float(m)} for v, m in off],
        "root": [{"value": v, "mass": frac(m), "float": float(m)} for v, m in root],
        "offspring_mean": frac(offspring_mean(params)),
        "root_mean": frac(root.mean()),
    }
    # offspring value i and root value i + 1 share a row
    rows = [(i, frac(mo), float(mo), n, frac(mr), float(mr))
            for (i, mo), (n, mr) in zip(off, root)]
    header = ["offspring_value", "offspring_mass", "offspring_float",
              "root_value", "root_mass", "root_float"]
    return Output(doc, header, rows)


def cmd_theta(args) -> Output:
    if args.table:
        table = theta_table(args.d, args.k, args.tol)
        cells = [{"d": d, "k": k, "theta": table.cell(d, k),
                  "formatted": format_theta(table.cell(d, k)) if table.cell(d, k) is not None else None,
                  "error": table.errors.get((d, k))}
                 for k in table.k_values for d in table.d_values]
        doc = {"d_values": table.d_values, "k_values": table.k_values,
               "values": table.values, "formatted": table.formatted(), "cells": cells}
        out = Output(doc, ["d", "k", "theta", "formatted", "error"],
                     [(c["d"], c["k"], c["theta"], c["formatted"], c["error"]) for c in cells])
        if any("converge" in e for e in table.errors.values()):
            out.exit_code = EXIT_NONCONVERGED
        elif table.errors:
            out.exit_code = EXIT_INVALID
        return out

    if len(args.d) != 1 or len(args.k) != 1:
        raise UsageError("several d or k values need --table")
    args.d, args.k = args.d[0], args.k[0]
    params = _params(args)
    fp = extinction_fixed_point(params, args.tol)
    theta = survival_probability(params, args.tol)
    doc = {"d": params.d, "k": params.k, "theta": theta, "formatted": format_theta(theta),
           "psi": fp.psi, "iterations": fp.iterations, "residual": fp.residual,
           "offspring_mean": frac(offspring_mean(params))}
    return Output(doc, ["d", "k", "theta", "formatted", "psi", "iterations", "residual"],
                  [(params.d, params.k, theta, format_theta(theta), fp.psi, fp.iterations,
                    fp.residual)])


def cmd_progeny(args) -> Output:
    params = _params(args)
    if args.imax < 1:
        raise UsageError("--imax must be >= 1")
    supercritical = offspring_mean(params) > 1
    doc: dict = {"d": params.d, "k": params.k, "i_max": args.imax, "mode": args.mode}
    rows = []
    if args.mode == "exact":
        pmf = progeny_pmf(params, args.imax)
        cumulative = Fraction(0)
        entries = []
        for i, m in pmf:
            cumulative += m
            entries.append({"i": i, "mass": frac(m), "float": float(m),
                            "cumulative": float(cumulative)})
            rows.append((i, frac(m), float(m), float(cumulative)))
        total, deficit = float(pmf.total()), float(pmf.deficit)
        doc["cumulative_mass_exact"] = frac(pmf.total())
    else:
        masses = progeny_pmf_float(params, args.imax)
        cumulative = 0.0
        entries = []
        for i, m in enumerate(masses.tolist(), start=1):
            cumulative += m
            entries.append({"i": i, "mass": None, "float": m, "cumulative": cumulative})
            rows.append((i, None, m, cumulative))
        total, deficit = cumulative, 1.0 - cumulative
    doc.update(pmf=entries, cumulative_mass=total, deficit=deficit, supercritical=supercritical)
    if supercritical:
        log.warning("d=%d, k=%d is supercritical: the progeny law is defective "
                    "(deficit tends to the survival probability)", params.d, params.k)
        doc["theta"] = survival_probability(params)
        doc["mean_informed"] = doc["mean_stiflers"] = None
    else:
        means = progeny_mean(params)
        doc["mean_informed"] = frac(means.informed)
        doc["mean_stiflers"] = frac(means.stiflers)
    return Output(doc, ["i", "mass", "float", "cumulative"], rows)


def cmd_range(args) -> Output:
    if (args.d, args.k) != (2, 1):
        raise UsageError("range bounds defined only for d=2, k=1")
    ns = args.n if args.n is not None else list(range(0, 11))
    if any(n < 0 for n in ns):
        raise UsageError("--n values must be >= 0")
    table = []
    for n in ns:
        a1, a2 = rb.extinction_time_cdf_bounds(n)
        r1, r2 = rb.range_cdf_bounds(n)
        table.append({"n": n, "alpha1": a1, "alpha2": a2, "range_lower": r1, "range_upper": r2})
    doc: dict = {"d": 2, "k": 1, "bounds": table}
    header = ["n", "alpha1", "alpha2", "range_lower", "range_upper"]
    rows = [[r[h] for h in header] for r in table]
    if args.expected:
        e = rb.expected_range_bounds(args.series_tol)
        doc["expected_range"] = {"lower": e.lower, "upper": e.upper, "series": e.constants()}
        header = header + ["expected_lower", "expected_upper"]
        rows = [r + [e.lower, e.upper] for r in rows]
    return Output(doc, header, rows)


def cmd_simulate(args) -> Output:
    params = _params(args)
    if args.runs < 1:
        raise UsageError("--runs must be >= 1")
    if args.depth is not None and args.depth < 1:
        raise UsageError("--depth must be >= 1 or 'none'")
    if not 0 <= args.seed < 1 << 64:
        raise UsageError("--seed must be an unsigned 64-bit integer")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    summary = monte_carlo(params, args.runs, args.depth, args.engine, args.seed,
                          args.vertex_budget, args.jobs)
    doc = summary.to_dict()
    doc["vertex_budget"] = args.vertex_budget
    rows = [("completed", None, summary.completed, None),
            ("failures", None, summary.failures, None),
            ("censored", args.depth, summary.censored, doc["censoring_rate"])]
    for name, hist in (("root_offspring", summary.root_offspring),
                       ("max_depth", summary.max_depth),
                       ("informed_total", summary.informed_total),
                       ("offspring", summary.offspring)):
        total = sum(hist.values())
        rows += [(name, v, hist[v], hist[v] / total) for v in sorted(hist)]
    out = Output(doc, ["statistic", "value", "count", "frequency"], rows)
    if summary.failures:
        log.warning("%d of %d runs exceeded the vertex budget (%d) and were excluded",
                    summary.failures, args.runs, args.vertex_budget)
    if summary.completed == 0:
        out.exit_code = EXIT_RESOURCE
    return out


def cmd_validate(args) -> Output:
    report = run_checks(quick=args.quick, seed=args.seed, jobs=args.jobs, fault=args.inject_fault)
    doc = report.to_dict()
    rows = [(c.name, c.passed, json.dumps(c.measured, default=str), c.tolerance, c.detail)
            for c in report.checks]
    out = Output(doc, ["check", "passed", "measured", "tolerance", "detail"], rows)
    for c in report.checks:
        log.info("%s %s (%.1fs)", "PASS" if c.passed else "FAIL", c.name, c.seconds)
    if not report.passed:
        out.exit_code = EXIT_INVALID
    return out


# parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rumortree",
        description="Maki-Thompson rumor model with k-stifling on Cayley trees")
    parser.add_argument("-v", "--verbose", action="store_true")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def model(p, d_default=None, k_default=1):
        p.add_argument("--d", type=int, default=d_default, required=d_default is None)
        p.add_argument("--k", type=int, default=k_default)

    p = sub.add_parser("pmf", parents=[common], help="exact root and offspring laws")
    model(p)
    p.set_defaults(func=cmd_pmf)

    p = sub.add_parser("theta", parents=[common], help="survival probability")
    p.add_argument("--d", type=_int_list, required=True, help="degree, or comma list with --table")
    p.add_argument("--k", type=_int_list, default=[1])
    p.add_argument("--table", action="store_true")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("progeny", parents=[common], help="total progeny law and means")
    model(p)
    p.add_argument("--imax", type=int, default=200)
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.set_defaults(func=cmd_progeny)

    p = sub.add_parser("range", parents=[common], help="extinction time and range bounds")
    model(p, d_default=2)
    p.add_argument("--n", type=_n_range, default=None, help="N, A..B or comma list (default 0..10)")
    p.add_argument("--expected", action="store_true", help="also bound E[R]")
    p.add_argument("--series-tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_range)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo summary")
    model(p)
    p.add_argument("--runs", type=int, default=10_000)
    p.add_argument("--depth", type=_depth, default=None, help="depth limit, or 'none'")
    p.add_argument("--engine", choices=ENGINES, default="genealogy")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=default_jobs())
    p.add_argument("--vertex-budget", type=int, default=DEFAULT_VERTEX_BUDGET)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("validate", parents=[common], help="run the cross-check suite")
    p.add_argument("--quick", action="store_true", help="10^4 runs per Monte Carlo check")
    p.add_argument("--seed", type=int, default=20240601)
    p.add_argument("--jobs", type=int, default=default_jobs())
    p.add_argument("--inject-fault", choices=sorted(FAULTS), default=None,
                   help="run against a deliberately broken offspring law")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    log.propagate = False
    try:
        out = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except MemoryError:
        print("error: out of memory", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    finally:
        log.removeHandler(handler)

    text = out.render(args.format)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return getattr(out, "exit_code", EXIT_OK)


if __name__ == "__main__":
    sys.exit(main())
