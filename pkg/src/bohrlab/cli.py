"""Command-line surface: radii, parameter tables, fuzz verification, sharpness.

Subcommands and their report columns (CSV order; JSON mirrors the same
fields one object per row):

* ``radius``    theorem, beta, alpha, k, n, r, half_width, iterations
* ``table``     same columns, one row per grid point; grids are given as
  ``start:stop:step`` (stop inclusive) per parameter flag
* ``verify``    theorem, beta, alpha, k, r, samples, holds, fails,
  inconclusive, worst_margin, worst_seed
* ``sharpness`` theorem, beta, alpha, k, r, gap, truncation

Exit status: 0 success, 1 validation error, 2 solver error (no bracket /
ambiguous sign / non-contracting series), 3 when a verify campaign
records a FAILS verdict.  Diagnostics go to stderr, data to stdout or
``--out``.  CSV floats carry 12 significant digits; JSON keeps native
floats, which round-trip doubles exactly.  ``BOHR_LAB_THREADS`` caps the
fan-out of table solves across grid points (default 1); rows are emitted
in input order regardless.  ``--plot PATH`` additionally renders a figure
of the report next to the delimited output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from . import radii as rd
from . import verify as vf
from .errors import (
    MismatchedVariant,
    NoBracket,
    NonContracting,
    NotAlternating,
    NotConvex,
    OutOfRange,
    SignAmbiguous,
)

_SOLVER_ERRORS = (NoBracket, SignAmbiguous, NonContracting, NotAlternating, NotConvex)

_THEOREM_PARAMS = {
    "t31": ("beta",),
    "t32": ("beta",),
    "t33": ("alpha",),
    "t34": ("alpha",),
    "t35": ("k", "alpha"),
    "t36": ("k", "alpha"),
    "ta": ("n",),
}

_ROOT_COLUMNS = ("theorem", "beta", "alpha", "k", "n", "r", "half_width", "iterations")
_VERIFY_COLUMNS = ("theorem", "beta", "alpha", "k", "r", "samples", "holds",
                   "fails", "inconclusive", "worst_margin", "worst_seed")
_SHARPNESS_COLUMNS = ("theorem", "beta", "alpha", "k", "r", "gap", "truncation")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    theorem: str
    beta: Optional[str] = None
    alpha: Optional[str] = None
    k: Optional[str] = None
    n: Optional[str] = None
    tol: float = 1e-10
    truncation: int = 2000
    fmt: str = "csv"
    out: Optional[str] = None
    seed: int = 0
    samples: int = 100
    plot: Optional[str] = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); validation is exit 1 here
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bohrlab", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, grids: bool):
        p.add_argument("--theorem", required=True, choices=sorted(_THEOREM_PARAMS),
                       help="radius theorem tag")
        hint = " (grid start:stop:step allowed)" if grids else ""
        p.add_argument("--beta", help=f"class parameter beta in (0,1){hint}")
        p.add_argument("--alpha", help=f"class parameter alpha{hint}")
        p.add_argument("--k", help=f"lacunary order k >= 1{hint}")
        p.add_argument("--n", help=f"tail start N >= 1 for theorem ta{hint}")
        p.add_argument("--tol", type=float, default=1e-10, help="bracket half-width target")
        p.add_argument("--truncation", type=int, default=2000, help="model truncation index")
        p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=100)
        p.add_argument("--plot", help="also render a figure of the report to this file")

    add_common(sub.add_parser("radius", help="solve one radius to a certified bracket"), False)
    add_common(sub.add_parser("table", help="solve a radius over a parameter grid"), True)
    add_common(sub.add_parser("verify", help="fuzz admissible models against a theorem"), False)
    add_common(sub.add_parser("sharpness", help="gap between extremal LHS and RHS at the radius"), False)
    return parser


def parse_config(argv: Sequence[str]) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(command=ns.command, theorem=ns.theorem, beta=ns.beta,
                     alpha=ns.alpha, k=ns.k, n=ns.n, tol=ns.tol,
                     truncation=ns.truncation, fmt=ns.fmt, out=ns.out,
                     seed=ns.seed, samples=ns.samples, plot=ns.plot)


# ---------------------------------------------------------------------------
# Parameter handling


def _parse_grid(text: str, name: str, integer: bool) -> list[float]:
    """Scalar or inclusive start:stop:step grid."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            vals = [float(parts[0])]
        elif len(parts) == 3:
            start, stop, step = (float(p) for p in parts)
            if step <= 0 or stop < start:
                raise ValueError
            count = int((stop - start) / step + 1e-9) + 1
            vals = [start + i * step for i in range(count)]
        else:
            raise ValueError
    except ValueError:
        raise UsageError(f"--{name} expects a number or start:stop:step, got {text!r}")
    if integer:
        out = []
        for v in vals:
            if abs(v - round(v)) > 1e-9:
                raise UsageError(f"--{name} must be integral, got {v!r}")
            out.append(float(round(v)))
        return out
    return vals


def _required_params(config: RunConfig, grids: bool) -> list[dict]:
    names = _THEOREM_PARAMS[config.theorem]
    given = {p: getattr(config, p) for p in ("beta", "alpha", "k", "n")}
    for p, value in given.items():
        if value is not None and p not in names:
            raise UsageError(f"--{p} does not apply to theorem {config.theorem}")
    axes = []
    for p in names:
        if given[p] is None:
            raise UsageError(f"theorem {config.theorem} requires --{p}")
        vals = _parse_grid(given[p], p, integer=p in ("k", "n"))
        if not grids and len(vals) != 1:
            raise UsageError(f"--{p} must be a single value for this command")
        axes.append([(p, v) for v in vals])
    return [dict(combo) for combo in product(*axes)]


def _build_problem(theorem: str, params: dict) -> rd.RadiusProblem:
    if theorem == "t31":
        return rd.T31(params["beta"])
    if theorem == "t32":
        return rd.T32(params["beta"])
    if theorem == "t33":
        return rd.T33(params["alpha"])
    if theorem == "t34":
        return rd.T34(params["alpha"])
    if theorem == "t35":
        return rd.T35(int(params["k"]), params["alpha"])
    if theorem == "t36":
        return rd.T36(int(params["k"]), params["alpha"])
    return rd.TA(int(params["n"]))


def _param_cells(theorem: str, params: dict) -> dict:
    cells = {"beta": None, "alpha": None, "k": None, "n": None}
    for key, value in params.items():
        cells[key] = int(value) if key in ("k", "n") else value
    return cells


def _thread_cap() -> int:
    raw = os.environ.get("BOHR_LAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _pmap(fn, items):
    cap = _thread_cap()
    if cap == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=cap) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# Report rendering


def _fmt_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def render_csv(columns: Sequence[str], rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt_cell(row[c]) for c in columns])
    return buf.getvalue()


def render_json(columns: Sequence[str], rows: Sequence[dict], single: bool) -> str:
    payload = [{c: row[c] for c in columns} for row in rows]
    doc = payload[0] if single and len(payload) == 1 else payload
    return json.dumps(doc, indent=2) + "\n"


def _emit(config: RunConfig, columns, rows, single_object: bool) -> None:
    if config.fmt == "json":
        text = render_json(columns, rows, single_object)
    else:
        text = render_csv(columns, rows)
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Commands


def _root_row(config: RunConfig, params: dict) -> dict:
    problem = _build_problem(config.theorem, params)
    result = rd.solve_radius(problem, tol=config.tol)
    row = {"theorem": config.theorem, **_param_cells(config.theorem, params),
           "r": result.r, "half_width": result.half_width,
           "iterations": result.iterations}
    return row


def _run_radius(config: RunConfig) -> int:
    rows = [_root_row(config, p) for p in _required_params(config, grids=False)]
    _emit(config, _ROOT_COLUMNS, rows, single_object=True)
    if config.plot:
        from . import plots
        problem = _build_problem(config.theorem, _required_params(config, grids=False)[0])
        plots.save_radius_plot(problem, rows[0]["r"], config.plot)
    return 0


def _run_table(config: RunConfig) -> int:
    grid = _required_params(config, grids=True)
    for point in grid:  # validate every grid point before any solve
        _build_problem(config.theorem, point)
    rows = _pmap(lambda p: _root_row(config, p), grid)
    _emit(config, _ROOT_COLUMNS, rows, single_object=False)
    if config.plot:
        from . import plots
        plots.save_table_plot(config.theorem, rows, config.plot)
    return 0


def _run_verify(config: RunConfig) -> int:
    params = _required_params(config, grids=False)[0]
    problem = _build_problem(config.theorem, params)
    summary = vf.fuzz_campaign(problem, samples=config.samples, seed=config.seed,
                               truncation=config.truncation)
    row = {"theorem": config.theorem, **_param_cells(config.theorem, params),
           "r": summary.r, "samples": summary.samples, "holds": summary.holds,
           "fails": summary.fails, "inconclusive": summary.inconclusive,
           "worst_margin": summary.worst_margin, "worst_seed": summary.worst_seed}
    _emit(config, _VERIFY_COLUMNS, [row], single_object=True)
    if summary.first_failure is not None:
        print(f"FAILS witness: {summary.first_failure}", file=sys.stderr)
    print(f"necessary-condition fuzz: {summary.samples} samples, "
          f"{summary.holds} holds / {summary.fails} fails / "
          f"{summary.inconclusive} inconclusive", file=sys.stderr)
    if config.plot:
        from . import plots
        plots.save_verify_plot(config.theorem, summary, config.plot)
    return 3 if summary.fails > 0 else 0


def _run_sharpness(config: RunConfig) -> int:
    params = _required_params(config, grids=False)[0]
    problem = _build_problem(config.theorem, params)
    detail = vf.sharpness_detail(problem)
    row = {"theorem": config.theorem, **_param_cells(config.theorem, params),
           "r": detail.r, "gap": detail.gap, "truncation": detail.truncation}
    _emit(config, _SHARPNESS_COLUMNS, [row], single_object=True)
    if config.plot:
        from . import plots
        plots.save_sharpness_plot(config.theorem, [row], config.plot)
    return 0


def run(config: RunConfig) -> int:
    """Execute a validated config; returns the process exit status."""
    dispatch = {"radius": _run_radius, "table": _run_table,
                "verify": _run_verify, "sharpness": _run_sharpness}
    try:
        return dispatch[config.command](config)
    except (UsageError, OutOfRange, MismatchedVariant) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _SOLVER_ERRORS as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 2


def main(argv: Optional[Sequence[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        config = parse_config(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return run(config)


def console_main() -> None:
    raise SystemExit(main())
