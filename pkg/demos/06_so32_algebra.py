"""
SO(3,2) from four oscillators
=============================

The ten generators are quadratic in the ladder operators of modes
(a1, a2, b1, b2). On a truncated Fock space their commutators are exact
below the cutoff, which is where they are compared.
"""

import numpy as np

from hcs import algebra as al

space = al.FockSpace(8)
gens = al.build_generators(space)
print("Fock dimension at N=8:", space.dim)

# L50 counts quanta: (N + 2) / 2
print("L50 eigenvalues:", sorted({float(v) for v in gens["L50"].diagonal().real}))

report = al.check_commutators(space)
worst = max(report, key=lambda r: r["residual"])
print(f"{len(report)} commutators, worst {worst['pair']} residual {worst['residual']:.2e}")

# each generator is a combination of Sp(2,R) generators of A = (a+b)/sqrt2 and B = (a-b)/sqrt2
recon = al.reconstruct_generators(space)
coeffs, res = recon["L35"]
print("L35 =", {k: round(float(v.real), 6) for k, v in coeffs.items() if abs(v) > 1e-10}, " residual", res)
