"""Locality regimes of the two-qubit Werner state p|psi-><psi-| + (1-p) I/4.

For projective measurements the state has a local hidden variable model iff
p <= 1/K(3), so any lower bound on K(3) gives a point above which the state
is certainly nonlocal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bound import KRIVINE_K3_UPPER

__all__ = [
    "SEPARABLE_MAX",
    "LHV_ALL_MAX",
    "LHV_PROJECTIVE_MAX",
    "REGIME_LABELS",
    "WernerThresholds",
    "Regime",
    "thresholds",
    "regimes",
    "classify",
    "bell_mean_value",
]

# fixed thresholds from the LHV literature, stored rather than derived
SEPARABLE_MAX = 1.0 / 3.0  # separable iff p <= 1/3 (Werner 1989)
LHV_ALL_MAX = 5.0 / 12.0  # LHV model for all measurements (Barrett 2002)
LHV_PROJECTIVE_MAX = 0.6595  # LHV model for projective measurements (Acin-Gisin-Toner 2006)
CITATIONS = {
    "separable_max": "R. F. Werner, Phys. Rev. A 40, 4277 (1989)",
    "lhv_all_max": "J. Barrett, Phys. Rev. A 65, 042302 (2002)",
    "lhv_projective_max": "A. Acin, N. Gisin, B. Toner, Phys. Rev. A 73, 062105 (2006)",
}

REGIME_LABELS = ("separable", "entangled-local-all", "local-projective",
                 "unknown-window", "nonlocal")


@dataclass(frozen=True)
class WernerThresholds:
    separable_max: float
    lhv_all_max: float
    lhv_projective_max: float
    nonlocal_onset: float

    def __post_init__(self):
        if not (self.separable_max < self.lhv_all_max < self.lhv_projective_max
                < self.nonlocal_onset < 1.0):
            raise ValueError("thresholds must be strictly increasing below 1")

    def boundaries(self) -> tuple[float, ...]:
        return (self.separable_max, self.lhv_all_max, self.lhv_projective_max,
                self.nonlocal_onset)


@dataclass(frozen=True)
class Regime:
    """A p-interval: closed on the right for the local regimes, and the
    nonlocal regime is the half-open ``(onset, 1]``."""

    label: str
    p_lo: float
    p_hi: float
    lo_closed: bool

    @property
    def interval(self) -> tuple[float, float]:
        return (self.p_lo, self.p_hi)

    def __contains__(self, p) -> bool:
        above = p >= self.p_lo if self.lo_closed else p > self.p_lo
        return above and p <= self.p_hi


def thresholds(k3_lower: float) -> WernerThresholds:
    if not math.sqrt(2.0) <= k3_lower <= KRIVINE_K3_UPPER:
        raise ValueError(
            f"a K(3) lower bound must lie in [sqrt(2), {KRIVINE_K3_UPPER}], got {k3_lower}")
    return WernerThresholds(SEPARABLE_MAX, LHV_ALL_MAX, LHV_PROJECTIVE_MAX, 1.0 / k3_lower)


def regimes(t: WernerThresholds) -> list[Regime]:
    """The five regimes in increasing p; together they partition [0, 1]."""
    edges = (0.0,) + t.boundaries() + (1.0,)
    return [Regime(label, lo, hi, lo_closed=(k == 0))
            for k, (label, lo, hi) in enumerate(zip(REGIME_LABELS, edges[:-1], edges[1:]))]


def classify(p: float, t: WernerThresholds) -> Regime:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    for regime in regimes(t):
        if p in regime:
            return regime
    raise AssertionError("regimes do not cover [0, 1]")  # pragma: no cover


def bell_mean_value(M, a_vectors, b_vectors, p: float) -> float:
    """Expectation of the Bell operator sum_ij M_ij A_i (x) B_j in the Werner state.

    With A_i = a_i . sigma and B_j = b_j . sigma this is p sum_ij M_ij a_i . b_j
    (the sign convention absorbs the singlet's anticorrelation into Bob's
    settings).
    """
    M = np.atleast_2d(np.asarray(M, dtype=float))
    A = np.atleast_2d(np.asarray(a_vectors, dtype=float))
    B = np.atleast_2d(np.asarray(b_vectors, dtype=float))
    if A.shape[0] != M.shape[0] or B.shape[0] != M.shape[1] or A.shape[1] != B.shape[1]:
        raise ValueError(f"shape mismatch: M {M.shape}, a {A.shape}, b {B.shape}")
    for vecs in (A, B):
        if np.max(np.abs(np.linalg.norm(vecs, axis=1) - 1.0)) > 1e-10:
            raise ValueError("settings must be unit vectors")
    return float(p * np.sum(M * (A @ B.T)))
