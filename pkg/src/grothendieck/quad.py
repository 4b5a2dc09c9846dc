"""Adaptive Gauss-Legendre quadrature in one and three dimensions.

Both integrators estimate the error of a panel (or cell) by comparing its
Gauss-Legendre value with the sum over its bisected halves (or octants) and
keep the more accurate refined value.  Refinement is greedy on the largest
error and every reduction is done in a fixed canonical order, so results are
bit-reproducible.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "QuadResult",
    "Box3",
    "QuadratureBudgetError",
    "integrate_1d",
    "integrate_3d",
    "integrate_cubes",
]

ABS_FLOOR = 1e-14


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    evaluations: int

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"non-finite quadrature value {self.value}")
        if self.error_estimate < 0 or self.evaluations < 1:
            raise ValueError("invalid QuadResult")


@dataclass(frozen=True)
class Box3:
    """Axis-aligned box, one ``(lo, hi)`` interval per axis."""

    intervals: tuple[tuple[float, float], tuple[float, float], tuple[float, float]]

    def __post_init__(self):
        if len(self.intervals) != 3:
            raise ValueError("Box3 needs exactly three intervals")
        for lo, hi in self.intervals:
            if not lo <= hi:
                raise ValueError(f"bad interval [{lo}, {hi}]")

    @classmethod
    def of(cls, *intervals) -> "Box3":
        return cls(tuple((float(lo), float(hi)) for lo, hi in intervals))

    @property
    def lo(self) -> np.ndarray:
        return np.array([iv[0] for iv in self.intervals])

    @property
    def width(self) -> np.ndarray:
        return np.array([iv[1] - iv[0] for iv in self.intervals])

    def swapped(self, i: int, j: int) -> "Box3":
        iv = list(self.intervals)
        iv[i], iv[j] = iv[j], iv[i]
        return Box3(tuple(iv))


class QuadratureBudgetError(RuntimeError):
    """Raised when refinement would exceed its evaluation/panel budget.

    ``partial`` holds the best estimate reached before giving up.
    """

    def __init__(self, message: str, partial: QuadResult | None = None):
        super().__init__(message)
        self.partial = partial


def _check_tol(rel_tol):
    if not 0 < rel_tol <= 1e-2:
        raise ValueError(f"rel_tol must lie in (0, 1e-2], got {rel_tol}")


def _gauss_unit(n):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


# ---------------------------------------------------------------------------
# one dimension

_X15, _W15 = _gauss_unit(15)


def _panel_values(f, lo, width):
    # lo, width: (k,) arrays -> whole-panel and two half-panel values, each (k,)
    halves = np.stack([lo, lo + 0.5 * width], axis=1)
    x = np.concatenate([lo[:, None] + width[:, None] * _X15,
                        (halves[..., None] + 0.5 * width[:, None, None] * _X15).reshape(len(lo), -1)],
                       axis=1)
    y = np.asarray(f(x), dtype=float)
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    whole = width * (y[:, :15] @ _W15)
    parts = 0.5 * width[:, None] * (y[:, 15:].reshape(len(lo), 2, 15) @ _W15)
    return whole, parts


def integrate_1d(f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float,
                 rel_tol: float = 1e-10, *, abs_tol: float = ABS_FLOOR,
                 max_panels: int = 10**6) -> QuadResult:
    """Adaptive 15-point Gauss-Legendre with bisection.

    ``f`` must be vectorized over numpy arrays.  Each panel's error is the
    difference between its own rule and the sum of its two halves.
    """
    _check_tol(rel_tol)
    if not lo <= hi:
        raise ValueError(f"need lo <= hi, got [{lo}, {hi}]")
    if lo == hi:
        return QuadResult(0.0, 0.0, 1)

    # panels: dict keyed by (level, index) -> (refined value, error)
    width0 = hi - lo
    whole, parts = _panel_values(f, np.array([lo]), np.array([width0]))
    evals = 45
    panels = {(0, 0): (parts[0].sum(), abs(whole[0] - parts[0].sum()))}
    while True:
        total = math.fsum(v for v, _ in (panels[k] for k in sorted(panels)))
        err = math.fsum(e for _, e in (panels[k] for k in sorted(panels)))
        if err <= max(rel_tol * abs(total), abs_tol):
            return QuadResult(total, err, evals)
        if len(panels) >= max_panels:
            raise QuadratureBudgetError(
                f"integrate_1d exceeded {max_panels} panels (err {err:.3g})",
                QuadResult(total, err, evals))
        # refine every panel carrying more than its share of the excess
        keys = sorted(panels, key=lambda k: (-panels[k][1], k))
        excess = err - rel_tol * abs(total)
        chosen, acc = [], 0.0
        for k in keys:
            chosen.append(k)
            acc += panels[k][1]
            if acc >= 0.5 * excess or len(chosen) >= 256:
                break
        kids = [(lev + 1, 2 * idx + h) for lev, idx in chosen for h in (0, 1)]
        kl = np.array([lev for lev, _ in kids], dtype=float)
        ki = np.array([idx for _, idx in kids], dtype=float)
        kw = width0 * np.exp2(-kl)
        whole, parts = _panel_values(f, lo + ki * kw, kw)
        evals += 45 * len(kids)
        for k in chosen:
            del panels[k]
        for j, k in enumerate(kids):
            s = parts[j].sum()
            panels[k] = (s, abs(whole[j] - s))


# ---------------------------------------------------------------------------
# three dimensions

_OCTANTS = np.array([[i, j, k] for i in (0, 1) for j in (0, 1) for k in (0, 1)], dtype=float)


class _CubeRule:
    """Tensor Gauss-Legendre rule on [0,1]^3 plus the rule on its 8 octants."""

    def __init__(self, order):
        x, w = _gauss_unit(order)
        g = np.stack(np.meshgrid(x, x, x, indexing="ij"), axis=-1).reshape(-1, 3)
        self.weights = np.einsum("i,j,k->ijk", w, w, w).ravel()
        # 9 sub-rules: the whole cube, then each octant at half scale
        self.nodes = np.concatenate([g[None], 0.5 * (_OCTANTS[:, None, :] + g[None])])
        self.npts = self.nodes.shape[0] * self.nodes.shape[1]

    def estimate(self, g, lo, size):
        """Refined value and error for cells ``lo`` (k,3), edge ``size`` (k,)."""
        pts = lo[:, None, None, :] + size[:, None, None, None] * self.nodes[None]
        y = g(pts[..., 0], pts[..., 1], pts[..., 2])
        y = np.broadcast_to(np.asarray(y, dtype=float), pts.shape[:-1])
        q = (y @ self.weights) * size[:, None] ** 3
        refined = q[:, 1:].sum(axis=1) / 8.0
        return refined, np.abs(q[:, 0] - refined)


_RULES: dict[int, _CubeRule] = {}


def _rule(order):
    if order not in _RULES:
        _RULES[order] = _CubeRule(order)
    return _RULES[order]


def integrate_cubes(pieces: Sequence[Callable], rel_tol: float = 1e-8, *,
                    abs_tol: float = ABS_FLOOR, order: int = 6, initial_level: int = 0,
                    max_evals: int = 10**7) -> QuadResult:
    """Sum of integrals over the unit cube, one per vectorized integrand.

    All pieces share one error budget and one priority queue, so refinement
    goes wherever the largest cell error is regardless of piece.
    """
    _check_tol(rel_tol)
    rule = _rule(order)
    # cell key: (piece, level, i, j, k); heap entries (-err, key)
    cells: dict[tuple, tuple[float, float]] = {}
    evals = 0

    def expand(keys):
        nonlocal evals
        by_piece: dict[int, list] = {}
        for key in keys:
            by_piece.setdefault(key[0], []).append(key)
        for p in sorted(by_piece):
            ks = by_piece[p]
            lev = np.array([k[1] for k in ks], dtype=float)
            size = np.exp2(-lev)
            lo = np.array([k[2:] for k in ks], dtype=float) * size[:, None]
            val, err = rule.estimate(pieces[p], lo, size)
            evals += rule.npts * len(ks)
            for key, v, e in zip(ks, val, err):
                cells[key] = (float(v), float(e))

    n0 = 2 ** initial_level
    expand([(p, initial_level, i, j, k) for p in range(len(pieces))
            for i in range(n0) for j in range(n0) for k in range(n0)])
    heap = [(-e, key) for key, (_, e) in cells.items()]
    heapq.heapify(heap)

    while True:
        ordered = sorted(cells)
        total = math.fsum(cells[k][0] for k in ordered)
        err = math.fsum(cells[k][1] for k in ordered)
        if not math.isfinite(total):
            raise FloatingPointError("non-finite integrand values")
        target = max(rel_tol * abs(total), abs_tol)
        if err <= target:
            return QuadResult(total, err, evals)
        chosen, acc = [], 0.0
        while heap and (acc < 0.5 * (err - target)) and len(chosen) < 32:
            e, key = heapq.heappop(heap)
            chosen.append(key)
            acc -= e
        kids = []
        for key in chosen:
            p, lev, i, j, k = key
            del cells[key]
            for di, dj, dk in _OCTANTS.astype(int):
                kids.append((p, lev + 1, 2 * i + di, 2 * j + dj, 2 * k + dk))
        if evals + rule.npts * len(kids) > max_evals:
            raise QuadratureBudgetError(
                f"integrate_3d exceeded {max_evals} evaluations (err {err:.3g})",
                QuadResult(total, err, evals))
        expand(kids)
        for key in kids:
            heapq.heappush(heap, (-cells[key][1], key))


def integrate_3d(f: Callable, box: Box3, rel_tol: float = 1e-8, *,
                 diagonal: bool = False, symmetric: bool = False,
                 z_breaks: Sequence[float] = (), abs_tol: float = ABS_FLOOR,
                 order: int = 6, max_evals: int = 10**7) -> QuadResult:
    """Integrate ``f(x0, x1, x2)`` over ``box``.

    The initial mesh is cut at ``z_breaks`` along axis 2, and every initial
    cell is mapped affinely onto its own unit cube, so thin boxes are refined
    at unit aspect.  With ``diagonal=True`` the box is also cut along the plane
    ``x0 == x1`` (axes 0 and 1 must share one interval) and each half is
    collapsed onto a cube, which puts that plane on a cell face.
    ``symmetric=True`` asserts ``f(x0, x1, .) == f(x1, x0, .)`` and integrates
    one half only.
    """
    if not isinstance(box, Box3):
        box = Box3.of(*box)
    lo, width = box.lo, box.width
    if np.any(width == 0):
        return QuadResult(0.0, 0.0, 1)
    if symmetric and not diagonal:
        raise ValueError("symmetric=True requires diagonal=True")
    if diagonal and box.intervals[0] != box.intervals[1]:
        raise ValueError("diagonal split needs identical ranges on axes 0 and 1")

    zlo, zhi = box.intervals[2]
    edges = [zlo] + sorted(z for z in z_breaks if zlo < z < zhi) + [zhi]
    slabs = list(zip(edges[:-1], edges[1:]))

    def make(z0, dz, kind):
        scale = width[0] * width[1] * dz * (2.0 if symmetric else 1.0)
        if kind == "box":
            def piece(u, v, w):
                return scale * f(lo[0] + width[0] * u, lo[1] + width[1] * v, z0 + dz * w)
        elif kind == "lower":
            # x1 <= x0: x0 = lo + L s, x1 = lo + L s t, jacobian L^2 s
            def piece(s, t, w):
                return scale * s * f(lo[0] + width[0] * s, lo[1] + width[1] * (s * t), z0 + dz * w)
        else:
            def piece(s, t, w):
                return scale * s * f(lo[0] + width[0] * (s * t), lo[1] + width[1] * s, z0 + dz * w)
        return piece

    kinds = ["box"] if not diagonal else (["lower"] if symmetric else ["lower", "upper"])
    pieces = [make(z0, z1 - z0, kind) for kind in kinds for z0, z1 in slabs]
    return integrate_cubes(pieces, rel_tol, abs_tol=abs_tol, order=order,
                           max_evals=max_evals)
