"""
Plane-wave limit
================

For u = rho q with q a real unit vector, l_u tends to (0, -q) as rho -> 1
and the state flattens into the plane wave exp(i q.x).
"""

import warnings

import numpy as np

from hcs.coherent import quasiclassical_ratio
from hcs.errors import NearBoundaryWarning
from hcs.geometry import cs_param, point
from hcs.observables import expect_r

q = np.array([0.0, 0.0, 1.0])
pts = point(*np.random.default_rng(0).uniform(-0.5, 0.5, (20, 3)).T)

with warnings.catch_warnings():
    # rho = 0.999 sits deliberately next to the boundary
    warnings.simplefilter("ignore", NearBoundaryWarning)
    for rho in (0.5, 0.9, 0.99, 0.999):
        flat = quasiclassical_ratio(q, rho, pts)
        print(f"rho={rho:<6} flatness={flat:.3e}  <r>={expect_r(rho * q):10.3f}  l={np.round(cs_param(rho * q).l, 4)}")
