"""Finite point configurations and the classical side of the Vertesi matrix.

For unit vectors a_1..a_n in R^d,

    |(1/n) sum a_i|^2 + (1/n^2) sum_{i != j} |a_i - a_j|

is a lower bound for K(d).  An empirical sample of a band measure is such a
configuration, which ties the discrete and continuous pictures together.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .sphere import BandParams, sample_band

__all__ = [
    "PointConfig",
    "BellMatrixSpec",
    "config_objective",
    "config_gradient",
    "optimize_config",
    "vertesi_matrix",
    "vertesi_settings",
    "vertesi_C_bruteforce",
    "mc_band_estimate",
]

UNIT_TOL = 1e-10
EXACT_LIMIT = 2048
PAIR_SHIFTS = 8
MAX_STEP = 1e3


@dataclass(frozen=True)
class PointConfig:
    d: int
    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] != self.d:
            raise ValueError(f"points must have shape (n, {self.d}), got {pts.shape}")
        if np.max(np.abs(np.linalg.norm(pts, axis=1) - 1.0)) > UNIT_TOL:
            raise ValueError("all points must be unit vectors")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class BellMatrixSpec:
    """Size of the Vertesi matrix built on ``n`` base settings."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need n >= 1")

    @property
    def m(self) -> int:
        return self.n + self.n * (self.n - 1) // 2


def _pair_distance_sum(x):
    # sum over ordered pairs i != j of |x_i - x_j|
    return 2.0 * float(pdist(x).sum()) if len(x) > 1 else 0.0


def _objective(x):
    m = x.mean(axis=0)
    return float(m @ m + _pair_distance_sum(x) / (len(x) ** 2))


def config_objective(config: PointConfig) -> float:
    return _objective(config.points)


def config_gradient(x: np.ndarray) -> np.ndarray:
    """Euclidean gradient of the objective in the point coordinates.

    Coincident pairs (distance below 1e-12) contribute a zero subgradient.
    """
    n = len(x)
    g = np.broadcast_to(2.0 * x.mean(axis=0) / n, x.shape).copy()
    if n > 1:
        dist = squareform(pdist(x))
        inv = np.divide(1.0, dist, out=np.zeros_like(dist), where=dist > 1e-12)
        g += 2.0 / (n * n) * (inv.sum(axis=1)[:, None] * x - inv @ x)
    return g


def _normalize(x):
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def _ascend(x, iters):
    """Projected gradient ascent with backtracking; returns (x, history)."""
    val = _objective(x)
    history = [val]
    step = 1.0
    for _ in range(iters):
        g = config_gradient(x)
        while step > 1e-14:
            y = _normalize(x + step * g)
            new = _objective(y)
            if new > val:
                x, val = y, new
                step = min(2.0 * step, MAX_STEP)
                break
            step *= 0.5
        else:
            break
        history.append(val)
    return x, history


@lru_cache(maxsize=None)
def _default_band(d):
    from .opt import optimize_band

    return optimize_band(d, grid=16, budget=80, rel_tol=1e-6).params


def optimize_config(d: int, n: int, seed: int = 42, iters: int = 500, *,
                    band: BandParams | None = None) -> tuple[PointConfig, float, list]:
    """Search for ``n`` points on S^{d-1} with a large objective.

    Starts from a sample of ``band`` (by default the optimal band for ``d``)
    and from a uniform random configuration; runs projected gradient ascent
    on both and returns ``(config, value, history)`` for the better start.
    ``history`` is non-decreasing.
    """
    if n < 1 or iters < 1:
        raise ValueError("need n >= 1 and iters >= 1")
    if band is None:
        band = _default_band(d)
    starts = [sample_band(band, n, seed).coords]
    rng = np.random.default_rng(seed + 1)
    starts.append(_normalize(rng.standard_normal((n, d))))

    best = None
    for x0 in starts:
        x, hist = _ascend(x0, iters)
        if best is None or hist[-1] > best[1]:
            best = (x, hist[-1], hist)
    x, val, hist = best
    return PointConfig(d, x), val, hist


def vertesi_matrix(n: int) -> np.ndarray:
    """Dense Vertesi matrix for ``n`` base settings (rows: a_i then alpha_ij;
    columns: b_j then beta_ij, pairs i < j in lexicographic order)."""
    spec = BellMatrixSpec(n)
    pairs = list(itertools.combinations(range(n), 2))
    M = np.zeros((spec.m, spec.m))
    M[:n, :n] = 1.0
    for k, (i, j) in enumerate(pairs):
        r = n + k
        M[r, i] += 1.0  # alpha_ij (b_i - b_j)
        M[r, j] -= 1.0
        M[i, r] += 1.0  # beta_ij (a_i - a_j)
        M[j, r] -= 1.0
    return M


def vertesi_settings(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vector settings for the Vertesi matrix from base directions ``points``.

    Both parties use a_i = b_i = points[i]; each difference setting is the
    unit vector along the corresponding difference (any unit vector when the
    two base points coincide).
    """
    pts = np.asarray(points, dtype=float)
    n, d = pts.shape
    diffs = []
    for i, j in itertools.combinations(range(n), 2):
        v = pts[i] - pts[j]
        norm = np.linalg.norm(v)
        diffs.append(v / norm if norm > 1e-12 else np.eye(d)[0])
    side = np.vstack([pts] + ([np.array(diffs)] if diffs else []))
    return side, side.copy()


def _sign_vectors(m):
    return np.array(list(itertools.product((1.0, -1.0), repeat=m)))


def vertesi_C_bruteforce(n: int) -> int:
    """Classical value of the Vertesi matrix by exhaustive enumeration."""
    if not 1 <= n <= 4:
        raise ValueError("exhaustive enumeration is limited to 1 <= n <= 4")
    M = vertesi_matrix(n)
    S = _sign_vectors(M.shape[0])
    values = np.abs(S @ M @ S.T)
    return int(round(values.max()))


def mc_band_estimate(params: BandParams, n_samples: int, seed: int = 42, *,
                     blocks: int = 32) -> tuple[float, float]:
    """Objective of an i.i.d. band sample and its jackknife standard error.

    Up to ``EXACT_LIMIT`` samples the objective is evaluated exactly.  Beyond
    that the pair sum is estimated from ``PAIR_SHIFTS`` cyclic partners per
    point inside each block, which keeps the cost linear in ``n_samples``.
    """
    if n_samples < 2:
        raise ValueError("need at least 2 samples")
    x = sample_band(params, n_samples, seed).coords
    nb = min(blocks, n_samples)
    idx = np.array_split(np.arange(n_samples), nb)

    if n_samples <= EXACT_LIMIT:
        value = _objective(x)
        leave_out = np.array([_objective(np.delete(x, ix, axis=0)) for ix in idx])
    else:
        scale = (n_samples - 1) / n_samples
        sums = np.array([x[ix].sum(axis=0) for ix in idx])
        dist = np.zeros(nb)
        count = np.zeros(nb)
        for k, ix in enumerate(idx):
            xb = x[ix]
            shifts = range(1, min(PAIR_SHIFTS, len(xb) - 1) + 1)
            for s in shifts:
                diff = xb - np.roll(xb, -s, axis=0)
                dist[k] += np.sqrt(np.einsum("ij,ij->i", diff, diff)).sum()
                count[k] += len(xb)

        def stat(keep):
            m = sums[keep].sum(axis=0) / sum(len(idx[k]) for k in np.flatnonzero(keep))
            return m @ m + scale * dist[keep].sum() / count[keep].sum()

        everything = np.ones(nb, bool)
        value = float(stat(everything))
        leave_out = np.empty(nb)
        for k in range(nb):
            keep = everything.copy()
            keep[k] = False
            leave_out[k] = stat(keep)

    mean_lo = leave_out.mean()
    se = math.sqrt((nb - 1) / nb * float(np.sum((leave_out - mean_lo) ** 2)))
    return float(value), se
