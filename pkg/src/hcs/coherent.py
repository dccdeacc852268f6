"""Coherent-state amplitudes.

A state is labelled by a complex 3-vector u. Three representations are
provided:

* :func:`series_amplitude` - the double sum over diagonal basis states
  |n n m> with coefficients (l1 l2)^((2n+|m|+1)/2) (l1/l2)^(m/2);
* :func:`amplitude_closed` - the summed closed form (unnormalized, c0 = 1);
* :func:`amplitude_normalized` - pi^-1/2 (w.w)^1/2 exp(i l_u . n_x).

Series and closed form agree only up to one constant phase per parameter
pair (the branch of the square roots is a convention), so comparisons go
through :func:`align_phase`.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .basis import GROUND_ENVELOPE, eigenstate
from .errors import ConvergenceError, DivergentSeriesError, SingularParameterError
from .geometry import cdot, lightcone_vector, mdot, point, validate
from .quadrature import DEFAULT_ORDERS, build_rule, integrate

REFERENCE_POINT = (0.0, 0.0, 1.0)
_INV_SQRT_PI = 1.0 / math.sqrt(math.pi)


@dataclass(frozen=True)
class LambdaPair:
    lam1: complex
    lam2: complex

    @property
    def u(self):
        return u_of_lambdas(self)


def u_of_lambdas(lp):
    """u = (i (l2 - l1)/2, (l1 + l2)/2, 0); then u.u = l1 l2."""
    l1, l2 = complex(lp.lam1), complex(lp.lam2)
    return np.array([0.5j * (l2 - l1), 0.5 * (l1 + l2), 0.0], dtype=complex)


def normalization(u):
    """|c0| for the closed form: sqrt((1 - 2 u.u* + |u.u|^2) / |u.u|).

    Raises
    ------
    SingularParameterError
        when u.u = 0 (use :func:`amplitude_normalized` there).
    """
    par = validate(u)
    uu = complex(cdot(par.u, par.u))
    if abs(uu) == 0.0:
        raise SingularParameterError("|c0| is singular at u.u = 0")
    num = 1.0 - 2.0 * float(np.sum(np.abs(par.u) ** 2)) + abs(uu) ** 2
    return math.sqrt(num / abs(uu))


def amplitude_normalized(u, p):
    """pi^-1/2 (w.w)^1/2 exp(i l_u . n_x) at the point(s) p."""
    par = validate(u)
    phase = 1j * mdot(par.l, lightcone_vector(p))
    value = _INV_SQRT_PI * math.sqrt(par.ww) * np.exp(phase)
    return value if np.ndim(value) else complex(value)


def amplitude_closed(lp, p):
    """Unnormalized closed form (c0 = 1).

    pi^-1/2 (u.u)^1/2 / (1 + u.u) * exp((r (u.u - 1) + 2i u.x) / (u.u + 1)),
    with the principal square root. ``lp`` is a :class:`LambdaPair` or a
    complex 3-vector u.
    """
    u = u_of_lambdas(lp) if isinstance(lp, LambdaPair) else np.asarray(lp, dtype=complex)
    uu = complex(cdot(u, u))
    if abs(1.0 + uu) < 1e-14:
        raise SingularParameterError("1 + u.u vanishes")
    ux = u[0] * p.x + u[1] * p.y + u[2] * p.z
    expo = (p.r * (uu - 1.0) + 2j * ux) / (uu + 1.0)
    value = _INV_SQRT_PI * cmath.sqrt(uu) / (1.0 + uu) * np.exp(expo)
    return value if np.ndim(value) else complex(value)


def series_coefficient(lp, n, m):
    """l1^(n + (|m|+m)/2) l2^(n + (|m|-m)/2) sqrt(l1) sqrt(l2), principal roots."""
    l1, l2 = complex(lp.lam1), complex(lp.lam2)
    am = abs(m)
    k1 = n + (am + m) // 2
    k2 = n + (am - m) // 2
    return l1**k1 * l2**k2 * cmath.sqrt(l1) * cmath.sqrt(l2)


def _neg_binomial_cut(alpha, q, budget, cap):
    # Smallest N with sum_{n > N} C(n+alpha, n) q^n <= budget.
    term = 1.0
    n = 0
    while True:
        ratio = (n + alpha + 1) / (n + 1) * q
        nxt = term * ratio
        if ratio < 1.0 and nxt / (1.0 - ratio) <= budget:
            return n
        if n >= cap:
            return None
        term = nxt
        n += 1


def series_truncation(lp, p, tol=1e-12, max_n=200, max_abs_m=200):
    """Cutoffs (N_alpha for alpha = 0..M) guaranteeing |tail| <= tol at p.

    The majorant uses |L_n^a(x)| <= C(n+a, n) e^{x/2}, so that
    |<x|n n m>| <= pi^-1/2 (xi eta)^|m| C(n+|m|, n) / |m|!, and
    |coefficient| <= rho^(2n+|m|+1) with rho = max(|l1|, |l2|).

    Returns
    -------
    list of int
        ``cuts[alpha]`` is the largest n kept for |m| = alpha.

    Raises
    ------
    DivergentSeriesError
        if |l1| >= 1 or |l2| >= 1.
    ConvergenceError
        if the caps are too small for ``tol``.
    """
    rho = max(abs(lp.lam1), abs(lp.lam2))
    if rho >= 1.0:
        raise DivergentSeriesError(f"series needs |l1|, |l2| < 1, got {lp}")
    if rho == 0.0:
        return [0]
    big_x = float(np.max(np.asarray(p.xi) * np.asarray(p.eta)))
    q = rho * rho
    pref = _INV_SQRT_PI * rho / (1.0 - q)
    y = rho * big_x / (1.0 - q)

    # |m|-cut M: 2 * pref * sum_{a > M} y^a / a! <= tol / 2. Once a + 1 > 2y
    # successive terms at least halve, so the tail is below twice its first term.
    big_m = 0
    nxt = y  # y^(M+1) / (M+1)!
    while not (big_m + 1 > 2 * y and 4.0 * pref * nxt <= 0.5 * tol):
        big_m += 1
        if big_m > max_abs_m:
            raise ConvergenceError(f"series needs |m| > {max_abs_m} for tol={tol}")
        nxt *= y / (big_m + 1)
    cuts = []
    budget_each = 0.5 * tol / (2 * big_m + 1)
    for alpha in range(big_m + 1):
        scale = _INV_SQRT_PI * rho ** (alpha + 1) * big_x**alpha / math.factorial(alpha)
        if scale == 0.0:
            cuts.append(0)
            continue
        cut = _neg_binomial_cut(alpha, q, budget_each / scale, max_n)
        if cut is None:
            raise ConvergenceError(f"series needs n > {max_n} for tol={tol}")
        cuts.append(cut)
    return cuts


def series_amplitude(lp, p, tol=1e-12, max_n=200, max_abs_m=200, epsilon=0.0):
    """Truncated double series over |n n m> at the point(s) p (c0 = 1).

    With ``epsilon`` != 0 each term is multiplied by exp(i epsilon (2n+|m|+1)),
    the phase acquired under fictitious-time evolution.
    """
    if not isinstance(lp, LambdaPair):
        lp = LambdaPair(*lp)
    cuts = series_truncation(lp, p, tol, max_n, max_abs_m)
    total = np.zeros(np.shape(p.xi), dtype=complex)
    for am, cut in enumerate(cuts):
        for m in ((0,) if am == 0 else (-am, am)):
            for n in range(cut + 1):
                coef = series_coefficient(lp, n, m)
                if epsilon:
                    coef *= cmath.exp(1j * epsilon * (2 * n + am + 1))
                total = total + coef * eigenstate((n, n, m), p)
    return total if total.ndim else complex(total)


def align_phase(values, ref_value, ref_target):
    """Multiply ``values`` by the unit phase taking ref_value to ref_target's phase.

    Returns the rotated values and the (generally non-unit) ratio
    ref_target / ref_value, whose modulus reports any magnitude mismatch.
    """
    ratio = complex(ref_target) / complex(ref_value)
    return np.asarray(values) * (ratio / abs(ratio)), ratio


def evolve(u, epsilon):
    """Fictitious-time evolution of the label: u -> u exp(i epsilon).

    epsilon is reduced modulo 2 pi first, so a full period returns u unchanged.
    """
    eps = math.remainder(float(epsilon), 2 * math.pi)
    u = np.asarray(u, dtype=complex)
    if eps == 0.0:
        return u.copy()
    return u * cmath.exp(1j * eps)


def quasiclassical_ratio(q, rho, points):
    """Flatness of <x|rho q> / e^{i q.x} over ``points``.

    Returns max |ratio(x)/ratio(x_0) - 1|, with x_0 the first point; it tends
    to 0 as rho -> 1, where the state becomes the plane wave e^{i q.x}.
    """
    q = np.asarray(q, dtype=float)
    if abs(np.linalg.norm(q) - 1.0) > 1e-12:
        raise ValueError("q must be a unit vector")
    if not 0.0 < rho < 1.0:
        raise ValueError("rho must lie in (0, 1)")
    amp = amplitude_normalized(rho * q, points)
    qx = q[0] * points.x + q[1] * points.y + q[2] * points.z
    ratio = np.ravel(amp / np.exp(1j * qx))
    return float(np.max(np.abs(ratio / ratio[0] - 1.0)))


def overlap(u, v):
    """<u|v> = 2 (w_u.w_u)^1/2 (w_v.w_v)^1/2 / (1 + conj(l_u) . l_v)."""
    pu = validate(u)
    pv = validate(v)
    return complex(2.0 * math.sqrt(pu.ww * pv.ww) / (1.0 + mdot(np.conj(pu.l), pv.l)))


def overlap_quadrature(u, v, orders=DEFAULT_ORDERS):
    """<u|v> by light-cone quadrature."""
    pu = validate(u)
    pv = validate(v)
    rule = build_rule(0.5 * (pu.w + pv.w), orders)
    return integrate(rule, lambda p: np.conj(amplitude_normalized(u, p)) * amplitude_normalized(v, p))


def norm_quadrature(u, orders=DEFAULT_ORDERS):
    """Integral of |<x|u>|^2 dmu; equals 1 for admissible u."""
    par = validate(u)
    rule = build_rule(par.w, orders)
    return integrate(rule, lambda p: np.abs(amplitude_normalized(u, p)) ** 2).real


def coefficient_envelope(u):
    """Envelope vector for projecting the state u onto basis functions."""
    return 0.5 * (validate(u).w + GROUND_ENVELOPE)


def reference_point():
    """Point used to fix the free global phase in comparisons."""
    return point(*REFERENCE_POINT)
