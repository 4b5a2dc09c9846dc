# # Sampling the band measure
#
# A large i.i.d. sample of the band is itself a point configuration, so its
# objective should agree with the quadrature value up to sampling noise.

# +
import math

from grothendieck import BandParams, lower_bound, mc_band_estimate

bands = [BandParams(3, 0.0, math.pi / 3), BandParams(4, 0.4, 0.94),
         BandParams(5, 0.742832, 0.749115)]
for p in bands:
    q = lower_bound(p).total
    for n in (10**4, 10**5, 10**6):
        mc, se = mc_band_estimate(p, n)
        print(f"d={p.d} [{p.a:.4f}, {p.b:.4f}] n={n:<8} {mc:.6f} +- {se:.1e}"
              f"  quad {q:.6f}  z={(mc - q) / se:+.2f}")
