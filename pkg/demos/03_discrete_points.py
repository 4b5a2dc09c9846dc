# # Finite point sets
#
# n unit vectors give the bound |mean|^2 + (1/n^2) sum_{i != j} |a_i - a_j|.
# The Vertesi Bell matrix turns any such set into a Bell inequality whose
# classical value is n^2.

# +
import math

from grothendieck import vertesi_C_bruteforce
from grothendieck.discrete import optimize_config, vertesi_matrix, vertesi_settings
from grothendieck.werner import bell_mean_value

for n in range(1, 5):
    print(f"C(M_{n}) = {vertesi_C_bruteforce(n)}")

# -
# Two points: the best opening angle is pi/3, worth 5/4.
print("n=2  ", optimize_config(3, 2)[1])

# -
for n in (16, 64, 465):
    config, value, hist = optimize_config(3, n, iters=1000 if n > 100 else 500)
    print(f"n={n:<4} value {value:.7f} after {len(hist) - 1} steps"
          f"  (CHSH level {math.sqrt(2):.7f})")

# -
# The quantum side, with settings built from the same points, is n^2 times
# the objective.
config, value, _ = optimize_config(3, 12)
A, B = vertesi_settings(config.points)
print("Q / n^2 =", bell_mean_value(vertesi_matrix(12), A, B, 1.0) / 144, " objective =", value)
