"""
Summing the parabolic series
============================

With lambda1, lambda2 inside the unit disc, the coherent state is a double
sum over the diagonal states |n n m>. The sum has a closed form; the two
agree up to one overall sign fixed by the square-root branch.
"""

import numpy as np

from hcs import coherent
from hcs.geometry import point

lp = coherent.LambdaPair(0.3 + 0.1j, -0.2 + 0.25j)
print("u =", lp.u, " u.u =", np.sum(lp.u * lp.u), " l1 l2 =", lp.lam1 * lp.lam2)

rng = np.random.default_rng(1)
pts = point(*rng.uniform(-2, 2, (6, 3)).T)

# the truncation is chosen from a rigorous majorant of the tail
cuts = coherent.series_truncation(lp, pts, tol=1e-12)
print("n cutoffs per |m|:", cuts)

ser = coherent.series_amplitude(lp, pts, tol=1e-13)
closed = coherent.amplitude_closed(lp, pts)
ref = coherent.reference_point()
aligned, ratio = coherent.align_phase(ser, coherent.series_amplitude(lp, ref), coherent.amplitude_closed(lp, ref))
print("branch ratio at the reference point:", np.round(ratio, 12))
print("max |series - closed| after alignment:", np.max(np.abs(aligned - closed)))

# Fictitious-time evolution multiplies term (n, m) by exp(i eps (2n + |m| + 1)),
# which is the same as rotating both lambdas by exp(i eps)
eps = 1.0
phased = coherent.series_amplitude(lp, pts, epsilon=eps)
rotated = coherent.LambdaPair(lp.lam1 * np.exp(1j * eps), lp.lam2 * np.exp(1j * eps))
moved = coherent.series_amplitude(rotated, pts)
print("evolution law, max diff (up to sign):", min(np.max(np.abs(phased - moved)), np.max(np.abs(phased + moved))))
