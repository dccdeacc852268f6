"""
Coherent-state amplitudes
=========================

A coherent state is labelled by a complex 3-vector u. Its wave function
depends on the point x only through the light-like vector n = (r, x).
"""

import numpy as np

from hcs import amplitude_normalized, point, validate

# u = 0 is the hydrogen ground state, exp(-r)/sqrt(pi)
origin_to_z = point(0.0, 0.0, np.linspace(0, 3, 4))
print("u = 0 along z:", np.round(amplitude_normalized([0, 0, 0], origin_to_z).real, 6))
print("exp(-r)/sqrt(pi):", np.round(np.exp(-origin_to_z.r) / np.sqrt(np.pi), 6))

# Everything about u that matters for decay is in w = Im l_u
par = validate([0, 0.5, 0])
print("l_u =", par.l, " w =", par.w, " w.w =", par.ww)

# At the origin n = 0, so the amplitude is just the normalization
print("|psi(0)| =", abs(amplitude_normalized([0, 0.5, 0], point(0.0, 0.0, 0.0))), "= 0.6/sqrt(pi)")

# A complex label gives a moving, oscillating packet
u = np.array([0.2j, 0.1, -0.3 + 0.1j])
xs = point(np.linspace(-2, 2, 5), 0.0, 0.0)
for x, a in zip(xs.x, amplitude_normalized(u, xs)):
    print(f"x={x:+.1f}  psi={a.real:+.5f}{a.imag:+.5f}i  |psi|={abs(a):.5f}")

# Labels with w.w <= 0 are not normalizable and are refused
try:
    validate([0, 0, 1.5j])
except ValueError as exc:
    print("rejected:", exc)
