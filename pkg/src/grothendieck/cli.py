"""Command-line driver: ``python -m grothendieck <command> [flags]``.

Exit status is 0 on success, 1 on invalid input and 2 when a numerical
budget (quadrature evaluations) is exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

from .bound import BoundReport, lower_bound
from .discrete import (mc_band_estimate, optimize_config, vertesi_C_bruteforce,
                       vertesi_matrix, vertesi_settings)
from .opt import BandOptimum, TableRow, optimize_band, sweep_table
from .quad import QuadratureBudgetError
from .sphere import BandParams
from .werner import WernerThresholds, bell_mean_value, classify, regimes, thresholds

__all__ = ["main", "render_report", "RunConfig", "dispatch", "WernerReport", "DiscreteReport"]

DEFAULT_K3 = 1.41758
CLASSIFY_GRID = tuple(round(0.05 * k, 2) for k in range(21)) + (0.705, 0.71)

EXIT_OK, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    command: str
    d: int = 3
    d_min: int = 3
    d_max: int = 9
    a: float | None = None
    b: float | None = None
    rel_tol: float = 1e-8
    seed: int = 42
    samples: int = 10**5
    iters: int = 500
    n: int = 64
    budget: int = 400
    grid: int = 64
    k3: float = DEFAULT_K3
    output_format: str = "text"
    output_path: str | None = None
    svg_path: str | None = None

    def validate(self):
        if not 0 < self.rel_tol <= 1e-2:
            raise ValueError("--rel-tol must lie in (0, 1e-2]")
        if self.command in ("bound", "optimize", "discrete") and self.d < 3:
            raise ValueError("--d must be >= 3")
        if self.command == "bound" and (self.a is None or self.b is None):
            raise ValueError("bound needs --a and --b")
        if self.command == "table" and not 3 <= self.d_min <= self.d_max:
            raise ValueError("need 3 <= --d-min <= --d-max")
        if self.grid < 8:
            raise ValueError("--grid must be >= 8")
        if self.budget < 1 or self.iters < 1 or self.samples < 2 or self.n < 1:
            raise ValueError("--budget, --iters, --n must be >= 1 and --samples >= 2")
        if self.output_format not in ("csv", "json", "text"):
            raise ValueError("--format must be csv, json or text")


@dataclass(frozen=True)
class WernerReport:
    thresholds: WernerThresholds
    k3_lower: float
    samples: tuple[float, ...] = CLASSIFY_GRID


@dataclass(frozen=True)
class DiscreteReport:
    d: int
    n: int
    config_value: float
    band: BandParams
    mc_value: float
    mc_stderr: float
    mc_samples: int
    classical_values: tuple[int, ...]
    bell_value: float


# ---------------------------------------------------------------------------
# rendering

def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return f"{x:.9g}"
    return str(x)


def _tables(result):
    """Report -> list of (section title, columns, rows of raw values)."""
    if isinstance(result, BoundReport):
        rec = result.as_dict()
        return [("bound", list(rec), [list(rec.values())])]
    if isinstance(result, BandOptimum):
        rec = result.report.as_dict()
        rec["converged"] = result.converged
        rec["refinement_evaluations"] = len(result.trace)
        return [("optimum", list(rec), [list(rec.values())])]
    if isinstance(result, list) and all(isinstance(r, TableRow) for r in result):
        cols = ["d", "a_star", "b_star", "ours", "bbt", "vertesi_ref"]
        return [("table", cols, [[r.as_dict()[c] for c in cols] for r in result])]
    if isinstance(result, WernerReport):
        t = result.thresholds
        line = [[r.label, r.p_lo, r.p_hi] for r in regimes(t)]
        cls = [[p, classify(p, t).label] for p in result.samples]
        thr = [["k3_lower", result.k3_lower], ["separable_max", t.separable_max],
               ["lhv_all_max", t.lhv_all_max], ["lhv_projective_max", t.lhv_projective_max],
               ["nonlocal_onset", t.nonlocal_onset]]
        return [("regimes", ["label", "p_lo", "p_hi"], line),
                ("thresholds", ["name", "value"], thr),
                ("classification", ["p", "regime"], cls)]
    if isinstance(result, DiscreteReport):
        rec = {"d": result.d, "n": result.n, "config_value": result.config_value,
               "bell_value_per_n2": result.bell_value,
               "band_a": result.band.a, "band_b": result.band.b,
               "mc_value": result.mc_value, "mc_stderr": result.mc_stderr,
               "mc_samples": result.mc_samples}
        brute = [[k + 1, c, (k + 1) ** 2] for k, c in enumerate(result.classical_values)]
        return [("discrete", list(rec), [list(rec.values())]),
                ("classical", ["n", "C_bruteforce", "n_squared"], brute)]
    raise TypeError(f"cannot render {type(result).__name__}")


def _json_value(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def render_report(result, fmt: str = "text") -> bytes:
    """Serialize a report.  CSV and text print floats with 9 significant
    digits; JSON keeps full precision so that it round-trips exactly."""
    tables = _tables(result)
    if fmt == "json":
        if len(tables) == 1 and len(tables[0][2]) == 1 and tables[0][0] != "table":
            _, cols, rows = tables[0]
            doc = {c: _json_value(v) for c, v in zip(cols, rows[0])}
        else:
            doc = {title: [{c: _json_value(v) for c, v in zip(cols, row)} for row in rows]
                   for title, cols, rows in tables}
        return (json.dumps(doc, indent=2) + "\n").encode()
    buf = io.StringIO()
    if fmt == "csv":
        writer = csv.writer(buf, lineterminator="\n")
        for k, (_, cols, rows) in enumerate(tables):
            if k:
                buf.write("\n")
            writer.writerow(cols)
            writer.writerows([[_fmt(v) for v in row] for row in rows])
    elif fmt == "text":
        for k, (title, cols, rows) in enumerate(tables):
            if k:
                buf.write("\n")
            cells = [cols] + [[_fmt(v) for v in row] for row in rows]
            widths = [max(len(r[i]) for r in cells) for i in range(len(cols))]
            buf.write(f"# {title}\n")
            for r in cells:
                buf.write("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return buf.getvalue().encode()


def render_svg(t: WernerThresholds, width: int = 640) -> bytes:
    """Minimal number line of the Werner regimes."""
    pad, y = 20, 40
    scale = width - 2 * pad
    colors = ["#4c72b0", "#55a868", "#8172b2", "#cccccc", "#c44e52"]
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="90">']
    for r, col in zip(regimes(t), colors):
        x0, x1 = pad + scale * r.p_lo, pad + scale * r.p_hi
        parts.append(f'<rect x="{x0:.2f}" y="{y - 8}" width="{x1 - x0:.2f}" height="16" fill="{col}"/>')
    for p in (0.0,) + t.boundaries() + (1.0,):
        x = pad + scale * p
        parts.append(f'<line x1="{x:.2f}" y1="{y - 12}" x2="{x:.2f}" y2="{y + 12}" stroke="black"/>')
        parts.append(f'<text x="{x:.2f}" y="{y + 28}" font-size="9" text-anchor="middle">{p:.6g}</text>')
    parts.append("</svg>\n")
    return "\n".join(parts).encode()


# ---------------------------------------------------------------------------
# dispatch

def _run(cfg: RunConfig):
    if cfg.command == "bound":
        return lower_bound(BandParams(cfg.d, cfg.a, cfg.b), cfg.rel_tol)
    if cfg.command == "optimize":
        return optimize_band(cfg.d, cfg.grid, cfg.budget, cfg.rel_tol)
    if cfg.command == "table":
        return sweep_table(cfg.d_min, cfg.d_max, cfg.rel_tol, grid=cfg.grid, budget=cfg.budget)
    if cfg.command == "discrete":
        if cfg.a is not None and cfg.b is not None:
            band = BandParams(cfg.d, cfg.a, cfg.b)
        else:
            band = optimize_band(cfg.d, grid=16, budget=80, rel_tol=max(cfg.rel_tol, 1e-6)).params
        config, value, _ = optimize_config(cfg.d, cfg.n, cfg.seed, cfg.iters, band=band)
        A, B = vertesi_settings(config.points)
        bell = bell_mean_value(vertesi_matrix(cfg.n), A, B, 1.0) / cfg.n ** 2 if cfg.n <= 64 else math.nan
        mc, se = mc_band_estimate(band, cfg.samples, cfg.seed)
        brute = tuple(vertesi_C_bruteforce(k) for k in range(1, 5))
        return DiscreteReport(cfg.d, cfg.n, value, band, mc, se, cfg.samples, brute, bell)
    if cfg.command == "werner":
        return WernerReport(thresholds(cfg.k3), cfg.k3)
    raise ValueError(f"unknown command {cfg.command!r}")


def dispatch(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout.buffer
    stderr = stderr if stderr is not None else sys.stderr
    try:
        cfg.validate()
        result = _run(cfg)
    except QuadratureBudgetError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID
    if isinstance(result, list) and any(r.error and "exceeded" in r.error for r in result):
        # a row hit its quadrature budget; the table is still written
        status = EXIT_BUDGET
    else:
        status = EXIT_OK

    data = render_report(result, cfg.output_format)
    try:
        if cfg.output_path:
            with open(cfg.output_path, "wb") as fh:
                fh.write(data)
        else:
            stdout.write(data)
            stdout.flush()
        if cfg.svg_path and isinstance(result, WernerReport):
            with open(cfg.svg_path, "wb") as fh:
                fh.write(render_svg(result.thresholds))
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=stderr)
        return EXIT_INVALID
    return status


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--rel-tol", type=float, default=1e-8)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--format", dest="output_format", choices=("csv", "json", "text"),
                        default="text")
    common.add_argument("--out", dest="output_path", metavar="PATH")

    parser = _Parser(prog="grothendieck",
                     description="Lower bounds for Grothendieck constants K(d) from band measures.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bound", parents=[common], help="bound for one band (d, a, b)")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)

    p = sub.add_parser("optimize", parents=[common], help="optimize the band for one d")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--budget", type=int, default=400)

    p = sub.add_parser("table", parents=[common], help="optimized bounds for a range of d")
    p.add_argument("--d-min", type=int, default=3)
    p.add_argument("--d-max", type=int, default=9)
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--budget", type=int, default=400)

    p = sub.add_parser("discrete", parents=[common],
                       help="point-configuration search, Monte Carlo check, classical oracle")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--n", type=int, default=64, help="number of points")
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--samples", type=int, default=10**5)
    p.add_argument("--iters", type=int, default=500)

    p = sub.add_parser("werner", parents=[common], help="Werner-state locality thresholds")
    p.add_argument("--k3", type=float, default=DEFAULT_K3, help="lower bound on K(3)")
    p.add_argument("--svg", dest="svg_path", metavar="PATH")
    return parser


def main(argv=None) -> int:
    args = vars(build_parser().parse_args(argv))
    return dispatch(RunConfig(**args))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
