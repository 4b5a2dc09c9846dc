"""Geometry of unit spheres and of the colatitude bands on them.

A band is the set of points of S^{d-1} whose first spherical coordinate (the
angle to the north pole e_d) lies in ``[a, b]``.  Its uniform probability
measure has colatitude density proportional to ``sin(phi)**(d-2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .quad import integrate_1d

__all__ = [
    "BandParams",
    "SpherePoint",
    "BandSample",
    "sphere_volume",
    "log_sphere_volume",
    "band_weight",
    "chord",
    "sample_band",
    "colatitude_quantile",
]

HALF_PI = 0.5 * math.pi
TABLE_SIZE = 4096
BISECT_TOL = 1e-12


@dataclass(frozen=True)
class BandParams:
    """Dimension ``d`` of the ambient space and band edges ``a < b`` (radians).

    ``b`` may go up to pi so that full-sphere checks are expressible;
    searches only ever use ``b <= pi/2``.
    """

    d: int
    a: float
    b: float

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 3:
            raise ValueError(f"dimension must be an integer >= 3, got {self.d}")
        if not (0.0 <= self.a < self.b <= math.pi):
            raise ValueError(f"need 0 <= a < b <= pi, got a={self.a}, b={self.b}")

    @property
    def width(self) -> float:
        return self.b - self.a

    def in_search_domain(self) -> bool:
        return self.b <= HALF_PI


@dataclass(frozen=True)
class SpherePoint:
    coords: np.ndarray
    colatitude: float


@dataclass(frozen=True)
class BandSample:
    """``count`` points drawn from a band, stored as arrays.

    ``coords`` has shape (count, d); ``colatitude[i] == arccos(coords[i, -1])``.
    Iterating yields :class:`SpherePoint` objects.
    """

    params: BandParams
    coords: np.ndarray
    colatitude: np.ndarray

    def __len__(self):
        return len(self.colatitude)

    def __iter__(self) -> Iterator[SpherePoint]:
        for x, phi in zip(self.coords, self.colatitude):
            yield SpherePoint(x, float(phi))


def log_sphere_volume(k: int) -> float:
    if k < 0:
        raise ValueError("sphere dimension must be >= 0")
    h = 0.5 * (k + 1)
    return math.log(2.0) + h * math.log(math.pi) - math.lgamma(h)


def sphere_volume(k: int) -> float:
    """Surface measure of the unit sphere S^k in R^{k+1}."""
    return math.exp(log_sphere_volume(k))


def _sin_power_integral(p, a, b):
    res = integrate_1d(lambda t: np.sin(t) ** p, a, b, rel_tol=1e-13, abs_tol=0.0)
    return res.value


def _x_minus_sin(w):
    # w - sin(w) without cancellation for small w
    if abs(w) < 0.1:
        w2 = w * w
        return w * w2 / 6.0 * (1.0 - w2 / 20.0 * (1.0 - w2 / 42.0 * (1.0 - w2 / 72.0 * (1.0 - w2 / 110.0))))
    return w - math.sin(w)


def band_weight(params: BandParams) -> float:
    """``int_a^b sin(phi)**(d-2) dphi``: the colatitude mass of the band."""
    d, a, b = params.d, params.a, params.b
    w = b - a
    if d == 3:
        return 2.0 * math.sin(0.5 * (a + b)) * math.sin(0.5 * w)
    if d == 4:
        # (w - cos(a+b) sin w) / 2, regrouped so that thin bands keep precision
        s = math.sin(0.5 * (a + b))
        return 0.5 * (_x_minus_sin(w) + 2.0 * s * s * math.sin(w))
    return _sin_power_integral(d - 2, a, b)


def chord(phi1, psi1, psi2):
    """Distance |x - y| for x at (phi1, 0, ..., 0) and y at (psi1, psi2, ...).

    Uses the half-angle form of ``2 - 2 sin phi1 sin psi1 cos psi2 -
    2 cos phi1 cos psi1``, which keeps full relative accuracy for nearby points.
    """
    sd = np.sin(0.5 * (np.subtract(phi1, psi1)))
    s2 = np.sin(0.5 * np.asarray(psi2))
    sq = 4.0 * (sd * sd + np.sin(phi1) * np.sin(psi1) * s2 * s2)
    return np.sqrt(np.maximum(sq, 0.0))


class _ColatitudeTable:
    """Monotone CDF table of the density sin^{d-2} on [a, b]."""

    # 3-point Gauss rule is exact to roundoff on a table cell
    _x, _w = np.polynomial.legendre.leggauss(3)

    def __init__(self, params: BandParams, size: int = TABLE_SIZE):
        self.p = params.d - 2
        self.nodes = np.linspace(params.a, params.b, size + 1)
        cell = self._partial(self.nodes[:-1], self.nodes[1:])
        cum = np.concatenate([[0.0], np.cumsum(cell)])
        self.total = cum[-1]
        self.cdf = cum / self.total

    def _partial(self, lo, hi):
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        t = mid[..., None] + half[..., None] * self._x
        return half * (np.sin(t) ** self.p @ self._w)

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        k = np.clip(np.searchsorted(self.cdf, u, side="right") - 1, 0, len(self.nodes) - 2)
        lo = self.nodes[k].copy()
        hi = self.nodes[k + 1].copy()
        base = self.cdf[k]
        target = (u - base) * self.total
        # bisection on the in-cell partial mass
        while True:
            if np.all(hi - lo <= BISECT_TOL):
                break
            mid = 0.5 * (lo + hi)
            below = self._partial(self.nodes[k], mid) < target
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        return 0.5 * (lo + hi)


def colatitude_quantile(params: BandParams, u) -> np.ndarray:
    """Inverse CDF of the band's colatitude distribution at probabilities ``u``."""
    return _ColatitudeTable(params).quantile(u)


def sample_band(params: BandParams, count: int, seed: int) -> BandSample:
    """Draw ``count`` i.i.d. points uniform on the band; deterministic in ``seed``."""
    if int(count) != count or count < 1:
        raise ValueError(f"count must be a positive integer, got {count}")
    rng = np.random.default_rng(seed)
    u = rng.random(count)
    phi = np.clip(colatitude_quantile(params, u), params.a, params.b)
    g = rng.standard_normal((count, params.d - 1))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    coords = np.empty((count, params.d))
    coords[:, :-1] = np.sin(phi)[:, None] * g
    coords[:, -1] = np.cos(phi)
    return BandSample(params, coords, phi)
