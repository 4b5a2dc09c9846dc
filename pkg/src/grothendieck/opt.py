"""Search over band edges (a, b) for the largest Grothendieck lower bound."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .bound import BoundReport, DegenerateBandError, bbt_bound, lower_bound
from .quad import QuadratureBudgetError
from .sphere import HALF_PI, BandParams

__all__ = [
    "VERTESI_BOUNDS",
    "REFERENCE_BAND_BOUNDS",
    "BandOptimum",
    "TableRow",
    "optimize_band",
    "sweep_table",
]

# discrete-configuration bounds of Vertesi (2008), d = 3, 4, 5
VERTESI_BOUNDS = {3: 1.41724, 4: 1.44521, 5: 1.46007}
# reference band-measure optima, d = 3..9
REFERENCE_BAND_BOUNDS = {3: 1.41758, 4: 1.44566, 5: 1.46112, 6: 1.47017,
                         7: 1.47583, 8: 1.47972, 9: 1.48254}

SIMPLEX_TOL = 1e-7
N_STARTS = 3


@dataclass(frozen=True)
class BandOptimum:
    """Best band found.

    ``trace`` lists every full-accuracy evaluation ``(a, b, total)`` made by
    the simplex refinement; ``scan`` holds the coarse grid as rows
    ``(a, b, total)``.  ``converged`` is False when the refinement that
    produced the optimum ran out of budget.
    """

    params: BandParams
    report: BoundReport
    trace: list = field(repr=False)
    scan: np.ndarray = field(repr=False)
    converged: bool = True


@dataclass(frozen=True)
class TableRow:
    d: int
    a_star: float
    b_star: float
    ours: float
    bbt: float
    vertesi_ref: float | None = None
    converged: bool = True
    error: str | None = None

    def as_dict(self) -> dict:
        return {"d": self.d, "a_star": self.a_star, "b_star": self.b_star,
                "ours": self.ours, "bbt": self.bbt, "vertesi_ref": self.vertesi_ref}


def _grid_scan(d, grid, rel_tol):
    h = HALF_PI / (grid - 1)
    rows = []
    for i in range(grid - 1):
        for j in range(i + 1, grid):
            a, b = i * h, j * h if j < grid - 1 else HALF_PI
            try:
                total = lower_bound(BandParams(d, a, b), rel_tol).total
            except DegenerateBandError:
                continue
            rows.append((a, b, total))
    return np.array(rows), h


def _top_starts(scan, k):
    order = sorted(range(len(scan)), key=lambda r: (-scan[r, 2], scan[r, 0], scan[r, 1]))
    return [tuple(scan[r, :2]) for r in order[:k]]


def optimize_band(d: int, grid: int = 64, budget: int = 400,
                  rel_tol: float = 1e-8) -> BandOptimum:
    """Maximize the band bound over ``0 <= a < b <= pi/2``.

    A ``grid`` x ``grid`` scan (at 100x looser tolerance) seeds Nelder-Mead
    runs from the three best grid points; each run stops when the simplex
    shrinks below 1e-7 or after ``budget`` evaluations.
    """
    if d < 3:
        raise ValueError("need d >= 3")
    if grid < 8:
        raise ValueError("grid must be >= 8")
    if budget < 1:
        raise ValueError("budget must be positive")
    scan, h = _grid_scan(d, grid, min(100.0 * rel_tol, 1e-2))

    cache: dict[tuple[float, float], BoundReport | None] = {}
    trace = []

    def evaluate(a, b):
        key = (float(a), float(b))
        if key not in cache:
            rep = None
            if 0.0 <= a < b <= HALF_PI:
                try:
                    rep = lower_bound(BandParams(d, a, b), rel_tol)
                except DegenerateBandError:
                    rep = None
            cache[key] = rep
            if rep is not None:
                trace.append((key[0], key[1], rep.total))
        return cache[key]

    def neg_total(x):
        rep = evaluate(x[0], x[1])
        return math.inf if rep is None else -rep.total

    best = None
    for a0, b0 in _top_starts(scan, N_STARTS):
        step = 0.5 * h
        simplex = np.array([[a0, b0], [a0 + step, b0], [a0, b0 - step]])
        if a0 + step >= b0:
            simplex[1] = [a0 + 0.5 * (b0 - a0), b0]
        res = minimize(neg_total, np.array([a0, b0]), method="Nelder-Mead",
                       options={"initial_simplex": simplex, "xatol": SIMPLEX_TOL,
                                "fatol": math.inf, "maxfev": budget})
        a, b = float(res.x[0]), float(res.x[1])
        rep = evaluate(a, b)
        if rep is None:
            continue
        cand = (-rep.total, a, b, res.status == 0)
        if best is None or cand[:3] < best[:3]:
            best = cand
    if best is None:
        raise RuntimeError(f"no feasible band found for d={d}")

    # Nelder-Mead returns the best vertex it ever evaluated, so this is
    # also the maximum over the whole trace
    _, a, b, converged = best
    return BandOptimum(BandParams(d, a, b), cache[(a, b)], trace, scan, converged)


def sweep_table(d_min: int = 3, d_max: int = 9, rel_tol: float = 1e-8, *,
                grid: int = 64, budget: int = 400) -> list[TableRow]:
    """One optimized row per dimension; a failing row is recorded, not raised."""
    if not 3 <= d_min <= d_max:
        raise ValueError("need 3 <= d_min <= d_max")
    rows = []
    for d in range(d_min, d_max + 1):
        ref = VERTESI_BOUNDS.get(d)
        try:
            opt = optimize_band(d, grid, budget, rel_tol)
        except (QuadratureBudgetError, RuntimeError, ValueError) as exc:
            rows.append(TableRow(d, math.nan, math.nan, math.nan, bbt_bound(d), ref,
                                 converged=False, error=str(exc)))
            continue
        rows.append(TableRow(d, opt.params.a, opt.params.b, opt.report.total,
                             bbt_bound(d), ref, converged=opt.converged))
    return rows
