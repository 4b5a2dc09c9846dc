"""Independent reference computations used by the tests.

Nothing here goes through the package's quadrature or sampling code:

* ``band_total_reference`` integrates the azimuthal variable in closed form
  (complete elliptic integral for d = 3, Gauss hypergeometric function
  otherwise) and hands the remaining 2-D integral to scipy's QUADPACK.
* ``mc_mean_chord`` samples the sphere by normalizing Gaussian vectors.
"""

import math

import numpy as np
from scipy import integrate, special


def sphere_area(k):
    return 2 * math.pi ** ((k + 1) / 2) / math.gamma((k + 1) / 2)


def sin_power_integral(p, a, b):
    return integrate.quad(lambda t: math.sin(t) ** p, a, b, epsabs=0, epsrel=1e-13)[0]


def azimuthal_integral(d, phi1, psi1):
    """int_0^pi |x - y| sin^{d-3}(psi2) dpsi2 in closed form."""
    delta2 = 4 * math.sin((phi1 - psi1) / 2) ** 2
    s4 = 4 * math.sin(phi1) * math.sin(psi1)
    if d == 3:
        tot = delta2 + s4
        return 0.0 if tot == 0 else 2 * math.sqrt(tot) * special.ellipe(s4 / tot)
    al = (d - 2) / 2
    if delta2 == 0:
        return 2 ** (d - 3) * math.sqrt(s4) * special.beta(al + 0.5, al)
    return 2 ** (d - 3) * math.sqrt(delta2) * special.beta(al, al) * \
        special.hyp2f1(-0.5, al, 2 * al, -s4 / delta2)


def band_terms_reference(d, a, b):
    """(moment term, pair term) for the uniform band measure."""
    w = sin_power_integral(d - 2, a, b)
    m = integrate.quad(lambda t: math.cos(t) * math.sin(t) ** (d - 2), a, b,
                       epsabs=1e-16, epsrel=1e-13)[0] / w

    def g(psi1, phi1):
        return azimuthal_integral(d, phi1, psi1) * (math.sin(phi1) * math.sin(psi1)) ** (d - 2)

    # symmetric in phi1 <-> psi1: twice the triangle psi1 < phi1
    tri = integrate.dblquad(g, a, b, a, lambda p: p, epsabs=0, epsrel=1e-12)[0]
    pair = 2 * tri * sphere_area(d - 3) / sphere_area(d - 2) / w ** 2
    return m * m, pair


def band_total_reference(d, a, b):
    m, p = band_terms_reference(d, a, b)
    return m + p


def uniform_sphere(rng, count, d):
    g = rng.standard_normal((count, d))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def mc_mean_chord(d, pairs, seed, upper_half=False):
    """Monte Carlo mean |x - y| for independent uniform points; (mean, stderr)."""
    rng = np.random.default_rng(seed)
    x = uniform_sphere(rng, pairs, d)
    y = uniform_sphere(rng, pairs, d)
    if upper_half:
        x[:, -1] = np.abs(x[:, -1])
        y[:, -1] = np.abs(y[:, -1])
    r = np.linalg.norm(x - y, axis=1)
    return r.mean(), r.std(ddof=1) / math.sqrt(pairs)
