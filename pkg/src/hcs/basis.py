"""Parabolic hydrogen eigenfunctions <x|n1 n2 m> and projections onto them.

Coordinates follow x + iy = xi eta e^{i phi}, z = (xi^2 - eta^2)/2, so the
Laguerre arguments are xi^2 and eta^2 and the functions are orthonormal
under the light-cone measure r^-1 dV.
"""

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import DEFAULT_ORDERS, build_rule, integrate
from .specfun import laguerre, log_factorial

GROUND_ENVELOPE = np.array([1.0, 0.0, 0.0, 0.0])


@dataclass(frozen=True, order=True)
class QuantumNumbers:
    n1: int
    n2: int
    m: int

    def __post_init__(self):
        if self.n1 < 0 or self.n2 < 0:
            raise ValueError(f"n1, n2 must be >= 0, got {self}")


def norm_factor(n1, n2, am):
    """[(n1+|m|)! (n2+|m|)! / (n1! n2!)]^(-1/2), evaluated in log space."""
    log_ratio = log_factorial(n1 + am) + log_factorial(n2 + am) - log_factorial(n1) - log_factorial(n2)
    return math.exp(-0.5 * log_ratio)


def eigenstate(q, p):
    """Value of <x|n1 n2 m> at the point(s) p.

    Parameters
    ----------
    q : QuantumNumbers or tuple
    p : ParabolicPoint

    Returns
    -------
    complex or numpy.ndarray of complex
    """
    n1, n2, m = q if not isinstance(q, QuantumNumbers) else (q.n1, q.n2, q.m)
    am = abs(m)
    sign = (-1) ** (n1 + (m - am) // 2)
    s = np.asarray(p.xi) ** 2
    t = np.asarray(p.eta) ** 2
    radial = np.exp(-0.5 * (s + t)) * (np.asarray(p.xi) * np.asarray(p.eta)) ** am
    value = (
        sign
        * norm_factor(n1, n2, am)
        / math.sqrt(math.pi)
        * np.exp(1j * m * np.asarray(p.phi))
        * radial
        * laguerre(n1, am, s)
        * laguerre(n2, am, t)
    )
    return value if np.ndim(value) else complex(value)


def enumerate_basis(max_n, max_abs_m):
    """Basis labels ordered lexicographically in (m, n1, n2), m ascending."""
    return [
        QuantumNumbers(n1, n2, m)
        for m in range(-max_abs_m, max_abs_m + 1)
        for n1 in range(max_n + 1)
        for n2 in range(max_n + 1)
    ]


def gram_matrix(max_n, max_abs_m, rule_orders=DEFAULT_ORDERS):
    """Inner products <q|q'> under dmu for all labels of :func:`enumerate_basis`.

    Returns
    -------
    labels : list of QuantumNumbers
    gram : numpy.ndarray, complex, shape (len(labels), len(labels))
    """
    labels = enumerate_basis(max_n, max_abs_m)
    rule = build_rule(GROUND_ENVELOPE, rule_orders)
    p = rule.grid()
    vals = np.array([eigenstate(q, p) for q in labels])
    resid_weights = rule.weights() * np.exp(-rule.log_envelope())
    flat = vals.reshape(len(labels), -1)
    gram = (flat.conj() * resid_weights.reshape(-1)) @ flat.T
    return labels, gram


def project(psi, q, w_envelope=GROUND_ENVELOPE, rule_orders=DEFAULT_ORDERS):
    """<q|psi> = integral of conj(<x|q>) psi(x) dmu.

    ``w_envelope`` should be chosen so that conj(<x|q>) psi(x) decays like
    exp(-2 w_envelope.n); for psi a coherent state with vector w this is
    (w + (1, 0, 0, 0)) / 2.
    """
    rule = build_rule(w_envelope, rule_orders)
    return integrate(rule, lambda p: np.conj(eigenstate(q, p)) * psi(p))
