"""
Moments and elliptic orbits
===========================

The first two light-cone moments are rational in w. The mean position
<x> = 2 w_vec / (w.w) traces an ellipse as the label evolves in
fictitious time, u -> u exp(i theta).
"""

import numpy as np

from hcs import observables as ob

u = [0.1 + 0.2j, 0.0, 0.3]
first, second = ob.moments_quadrature(u)
print("<n>  closed:", np.round(ob.expect_n(u), 10))
print("<n>  quad.: ", np.round(first.real, 10))
print("max |<nn> closed - quad.|:", np.max(np.abs(ob.expect_nn(u) - second)))

# mean position from w, and from the (k, m, theta) parametrization
k, m = np.array([0.15, 0, 0]), np.array([0, 0.1, 0])
kmt = ob.KMTheta(k, m, theta=0.0)
print("<x> from w:", ob.expect_position(kmt.u()), " from (k,m,theta):", ob.expect_position_kmt(k, m, 0.0))

thetas, pos = ob.trajectory(kmt, 64)
a, b, res = ob.fit_ellipse(thetas, pos)
print("ellipse semi-axes:", np.linalg.norm(a), np.linalg.norm(b), " fit residual:", res)

# <r> grows without bound near the boundary of the parameter domain
for rho in (0.0, 0.5, 0.9, 0.99):
    print(f"rho={rho:<4}  2 w0/ww = {ob.expect_r([0, 0, rho]):10.4f}   volume <r> = {ob.expect_r_volume([0, 0, rho]):10.4f}")

# |psi| is Gaussian in (xi, eta) with its maximum at the origin
print("density shape (c_xi, c_eta, w_perp, alpha):", ob.density_shape(u))
