"""Lower bounds for Grothendieck constants from uniform band measures.

For a probability measure mu on S^{d-1},

    K(d) >= |int x dmu|^2 + int int |x - y| dmu(x) dmu(y).

Taking mu uniform on a colatitude band [a, b] reduces the right-hand side to
a closed-form moment term plus a triple integral (the pair term).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quad import Box3, QuadResult, integrate_1d, integrate_3d
from .sphere import BandParams, band_weight, chord, log_sphere_volume

__all__ = [
    "K2",
    "DegenerateBandError",
    "BoundReport",
    "moment_term",
    "pair_term",
    "lower_bound",
    "ring_chord_mean",
    "ring_bound",
    "bbt_bound",
]

# the only exactly known value, K(2) = sqrt(2) (Krivine)
K2 = math.sqrt(2.0)
# reference constants, not computed here
KRIVINE_K3_UPPER = 1.5163
DAVIE_REEDS_KINF_LOWER = 1.677

MIN_BAND_WEIGHT = 1e-13


class DegenerateBandError(ValueError):
    """The band is too thin for the quadrature route; use :func:`ring_bound`."""


@dataclass(frozen=True)
class BoundReport:
    params: BandParams
    moment_term: float
    pair_term: float
    total: float
    quad: QuadResult

    def as_dict(self) -> dict:
        return {
            "d": self.params.d,
            "a": self.params.a,
            "b": self.params.b,
            "moment_term": self.moment_term,
            "pair_term": self.pair_term,
            "total": self.total,
            "quad_error": self.quad.error_estimate,
            "evaluations": self.quad.evaluations,
        }


def _checked_weight(params):
    w = band_weight(params)
    if w < MIN_BAND_WEIGHT:
        raise DegenerateBandError(
            f"band weight {w:.3g} below {MIN_BAND_WEIGHT:g} for {params}")
    return w


def moment_term(params: BandParams) -> float:
    """Squared norm of the band's barycenter (only the x_d component survives)."""
    w = _checked_weight(params)
    d = params.d
    # sin^{d-1} b - sin^{d-1} a, factored to survive thin bands
    sa, sb = math.sin(params.a), math.sin(params.b)
    n = d - 1
    dsin = 2.0 * math.cos(0.5 * (params.a + params.b)) * math.sin(0.5 * (params.b - params.a))
    diff = dsin * math.fsum(sb ** (n - 1 - k) * sa ** k for k in range(n))
    m = diff / n / w
    return m * m


def pair_integrand(d: int):
    """Integrand of the reduced pair integral for dimension ``d``."""
    p, q = d - 2, d - 3

    def f(phi1, psi1, psi2):
        w = (np.sin(phi1) * np.sin(psi1)) ** p
        if q:
            w = w * np.sin(psi2) ** q
        return chord(phi1, psi1, psi2) * w

    return f


def _azimuth_breaks(params):
    # |x - y| has a boundary layer of width ~ (b - a) / sin(b) in the azimuth
    # near 0; geometric slabs from that scale up to pi/2 keep cells square
    h = params.width / max(math.sin(params.b), 1e-300)
    breaks = []
    while h < 0.25 * math.pi:
        breaks.append(h)
        h *= 2.0
    return breaks


def pair_term(params: BandParams, rel_tol: float = 1e-8, *,
              max_evals: int = 10**7) -> QuadResult:
    """Mean distance between two independent uniform points of the band.

    Returned as a :class:`QuadResult` whose value and error estimate are
    already normalized by the prefactor and the squared band weight.
    """
    w = _checked_weight(params)
    d, a, b = params.d, params.a, params.b
    scale = math.exp(log_sphere_volume(d - 3) - log_sphere_volume(d - 2)) / (w * w)
    raw = integrate_3d(pair_integrand(d), Box3.of((a, b), (a, b), (0.0, math.pi)),
                       rel_tol, diagonal=True, symmetric=True,
                       z_breaks=_azimuth_breaks(params), abs_tol=1e-16 * w * w,
                       max_evals=max_evals)
    return QuadResult(scale * raw.value, scale * raw.error_estimate, raw.evaluations)


def lower_bound(params: BandParams, rel_tol: float = 1e-8, *,
                max_evals: int = 10**7) -> BoundReport:
    m = moment_term(params)
    q = pair_term(params, rel_tol, max_evals=max_evals)
    return BoundReport(params, float(m), float(q.value), float(m + q.value), q)


def ring_chord_mean(k: int, rel_tol: float = 1e-12) -> float:
    """Mean chord between two independent uniform points of the unit S^k."""
    if k < 1:
        raise ValueError("need k >= 1")
    num = integrate_1d(lambda t: 2.0 * np.sin(0.5 * t) * np.sin(t) ** (k - 1),
                       0.0, math.pi, rel_tol)
    den = integrate_1d(lambda t: np.sin(t) ** (k - 1), 0.0, math.pi, rel_tol)
    return num.value / den.value


def ring_bound(d: int, phi: float, rel_tol: float = 1e-12) -> float:
    """Limit of the band bound as the band collapses onto colatitude ``phi``."""
    if d < 3:
        raise ValueError("need d >= 3")
    if not 0.0 < phi <= 0.5 * math.pi:
        raise ValueError(f"phi must lie in (0, pi/2], got {phi}")
    return math.cos(phi) ** 2 + math.sin(phi) * ring_chord_mean(d - 2, rel_tol)


def bbt_bound(d: int) -> float:
    """Briet-Buhrman-Toner bound (pi/d) (Gamma((d+1)/2) / Gamma(d/2))^2."""
    if d < 2:
        raise ValueError("need d >= 2")
    return math.pi / d * math.exp(2.0 * (math.lgamma(0.5 * (d + 1)) - math.lgamma(0.5 * d)))
