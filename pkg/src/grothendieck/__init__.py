"""Lower bounds for Grothendieck constants K(d) from uniform band measures on
spheres, with discrete and Monte Carlo cross-checks and the resulting
nonlocality thresholds for two-qubit Werner states."""

from .bound import (K2, BoundReport, DegenerateBandError, bbt_bound, lower_bound,
                    moment_term, pair_term, ring_bound, ring_chord_mean)
from .discrete import (PointConfig, config_objective, mc_band_estimate, optimize_config,
                       vertesi_C_bruteforce)
from .opt import BandOptimum, TableRow, optimize_band, sweep_table
from .quad import Box3, QuadratureBudgetError, QuadResult, integrate_1d, integrate_3d
from .sphere import BandParams, band_weight, chord, sample_band, sphere_volume
from .werner import WernerThresholds, bell_mean_value, classify, thresholds

__version__ = "0.1.0"
