# # One band, one bound
#
# Put the uniform measure on the band a <= colatitude <= b of S^{d-1}.
# Its barycenter term plus its mean chord is a lower bound for K(d).

# +
import math

from grothendieck import BandParams, lower_bound, ring_bound

rep = lower_bound(BandParams(3, 0.0, 1.04819755))
print("d=3 cap [0, 1.0482]")
print("  moment term ", rep.moment_term)
print("  pair term   ", rep.pair_term)
print("  total       ", rep.total, "+-", rep.quad.error_estimate)
print("  evaluations ", rep.quad.evaluations)

# -
# The whole sphere has no barycenter, and its mean chord is 4/3.
print("full sphere  ", lower_bound(BandParams(3, 0.0, math.pi)).total)

# -
# A thin band is almost a ring, and the ring has a closed form.
for w in (0.2, 0.02, 0.002):
    phi = 0.746
    band = lower_bound(BandParams(5, phi - w / 2, phi + w / 2)).total
    print(f"d=5 width {w:<6} band {band:.8f}  ring {ring_bound(5, phi):.8f}")
