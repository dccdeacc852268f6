"""
Light-cone quadrature
=====================

Scalar products use the measure dmu = dV / r, which in s = xi^2, t = eta^2
is ds dt dphi / 2. Integrands decay like exp(-2 w.n), so the rule is a
Gauss-Laguerre product built in the rest frame of w and boosted back.
"""

import math

import numpy as np

from hcs import quadrature as q
from hcs.coherent import norm_quadrature, overlap, overlap_quadrature

x, w = q.gauss_laguerre(2)
print("2-point Gauss-Laguerre:", x, w)

# generating integral: int exp(-2 w.n) dmu = pi / (w.w)
for wv in ([1, 0, 0, 0], [0.6, 0, 0, 0.2], [1.0, 0.3, -0.2, 0.9]):
    wv = np.asarray(wv, float)
    ww = wv[0] ** 2 - wv[1:] @ wv[1:]
    val = q.integrate(q.build_rule(wv), lambda p, wv=wv: q.envelope(wv, p))
    print(f"w={wv}  quadrature={val.real:.15f}  pi/ww={math.pi / ww:.15f}")

# the same rule normalizes coherent states
for u in ([0, 0, 0], [0, 0.5, 0], [0.3j, -0.2, 0.1 + 0.1j]):
    print("norm of u =", u, "->", norm_quadrature(u))

u, v = [0, 0, 0], [0, 0.5, 0]
print("<u|v> closed:", overlap(u, v), " by quadrature:", overlap_quadrature(u, v))
