# # Werner states
#
# p |psi-><psi-| + (1-p) I/4 has a local model for projective measurements
# exactly when p <= 1/K(3).  A better lower bound on K(3) moves the point
# past which the state is certainly nonlocal.

# +
import math

from grothendieck.werner import classify, regimes, thresholds

for name, k3 in [("CHSH", math.sqrt(2)), ("465 settings", 1.417241),
                 ("band optimum", 1.41758)]:
    print(f"{name:<13} K(3) >= {k3:.6f}  nonlocal for p > {thresholds(k3).nonlocal_onset:.6f}")

# -
t = thresholds(1.41758)
for r in regimes(t):
    print(f"{r.label:<20} {r.p_lo:.6f} .. {r.p_hi:.6f}")

for p in (0.2, 0.5, 0.7, 0.705, 0.71):
    print(p, classify(p, t).label)
