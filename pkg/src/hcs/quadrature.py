"""Product quadrature over the forward light cone.

The scalar-product measure is

    dmu = r^-1 dV = 1/2 ds dt dphi,    s = xi^2, t = eta^2,

which is the Lorentz-invariant measure on the cone n = (r, x). Integrands
of interest carry an envelope exp(-2 w.n) for a forward timelike w. A rule
is built in the rest frame of w, where the envelope is exp(-sqrt(w.w)(s+t))
with no angular cross term: Gauss-Laguerre in s and t, periodic trapezoid in
phi. Its nodes are then boosted back to the lab frame; invariance of dmu
means the weights are unchanged.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, InadmissibleParameterError
from .geometry import lightcone_vector, mdot, parabolic_from_cartesian

DEFAULT_ORDERS = (48, 48, 64)


def _laguerre_pair(n, x):
    # L_n(x) and L_{n-1}(x) for alpha = 0
    prev = np.ones_like(x)
    cur = 1.0 - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
    return cur, prev


def gauss_laguerre(n, rate=1.0, max_iter=50):
    """Gauss-Laguerre nodes and weights for the weight exp(-rate x) on [0, inf).

    Nodes come from the eigenvalues of the Jacobi matrix and are then polished
    by Newton iteration on the three-term recurrence. Weights are the
    Christoffel numbers 1 / sum_{k<n} L_k(x_i)^2 (the L_k are orthonormal for
    this weight), which are insensitive to small node errors and keep
    relative accuracy for the tiny weights at large nodes.

    Returns
    -------
    nodes, weights : numpy.ndarray
        exact for polynomials of degree <= 2n - 1 against exp(-rate x).

    Raises
    ------
    ConvergenceError
        if Newton polishing fails for some node; the message names its index.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if not rate > 0:
        raise ValueError("rate must be positive")
    k = np.arange(n)
    diag = 2 * k + 1.0
    off = np.arange(1, n, dtype=float)
    jac = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    x = np.linalg.eigvalsh(jac)

    for i in range(n):
        xi = x[i]
        for _ in range(max_iter):
            ln, lnm1 = _laguerre_pair(n, xi)
            # x L_n' = n (L_n - L_{n-1})
            deriv = n * (ln - lnm1) / xi
            step = ln / deriv
            xi -= step
            if abs(step) <= 1e-13 * abs(xi):
                break
        else:
            raise ConvergenceError(f"Gauss-Laguerre root {i} of {n} did not converge")
        x[i] = xi

    christoffel = np.zeros_like(x)
    prev, cur = np.zeros_like(x), np.ones_like(x)
    for k in range(n):
        christoffel += cur * cur
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
    w = 1.0 / christoffel
    return x / rate, w / rate


def boost_to(e):
    """Proper Lorentz boost mapping (1, 0, 0, 0) to the unit timelike vector e."""
    e = np.asarray(e, dtype=float)
    gamma = e[0]
    v = e[1:] / gamma
    v2 = float(v @ v)
    lam = np.eye(4)
    lam[0, 0] = gamma
    lam[0, 1:] = gamma * v
    lam[1:, 0] = gamma * v
    if v2 > 0:
        lam[1:, 1:] += (gamma - 1.0) * np.outer(v, v) / v2
    return lam


@dataclass(frozen=True)
class LightConeRule:
    """Tensor-product rule for integrals of f against dmu.

    Nodes live in the rest frame of the envelope vector (s, t, phi) and are
    mapped to the lab by ``boost``. ``c_s`` and ``c_t`` are the decay rates
    of the rest-frame envelope exp(-c_s s - c_t t).
    """

    s_nodes: np.ndarray
    s_weights: np.ndarray
    t_nodes: np.ndarray
    t_weights: np.ndarray
    phi_count: int
    c_s: float
    c_t: float
    boost: np.ndarray

    @property
    def phi_nodes(self):
        return 2 * np.pi * np.arange(self.phi_count) / self.phi_count

    @property
    def orders(self):
        return len(self.s_nodes), len(self.t_nodes), self.phi_count

    def rest_vectors(self):
        """Rest-frame light-cone vectors at the nodes, shape (N_s, N_t, M, 4)."""
        s = self.s_nodes[:, None, None]
        t = self.t_nodes[None, :, None]
        phi = self.phi_nodes[None, None, :]
        rho = np.sqrt(s * t)
        n = np.empty(self.orders + (4,))
        n[..., 0] = 0.5 * (s + t)
        n[..., 1] = rho * np.cos(phi)
        n[..., 2] = rho * np.sin(phi)
        n[..., 3] = 0.5 * (s - t)
        return n

    def grid(self):
        """Lab-frame ParabolicPoint array of shape (N_s, N_t, M) at the nodes."""
        n = self.rest_vectors() @ self.boost.T
        return parabolic_from_cartesian(n[..., 1], n[..., 2], n[..., 3])

    def weights(self):
        w = self.s_weights[:, None, None] * self.t_weights[None, :, None]
        return 0.5 * (2 * np.pi / self.phi_count) * np.broadcast_to(w, self.orders)

    def log_envelope(self):
        s = self.s_nodes[:, None, None]
        t = self.t_nodes[None, :, None]
        return np.broadcast_to(-self.c_s * s - self.c_t * t, self.orders)


def _forward_timelike(w):
    w = np.asarray(w, dtype=float)
    ww = float(mdot(w, w))
    if not (ww > 0 and w[0] > 0):
        raise InadmissibleParameterError(
            f"envelope vector {w} is not forward timelike", condition="w.w > 0 and w0 > 0"
        )
    return w, ww


def build_rule(w, orders=DEFAULT_ORDERS):
    """Rule adapted to integrands carrying exp(-2 w.n).

    In the rest frame of w the envelope is exp(-sqrt(w.w) (s + t)), so both
    Gauss-Laguerre rates equal sqrt(w.w). Integrands of the form
    polynomial(n) * exp(-2 w.n) are integrated exactly once the polynomial
    degree in s and t stays below 2N.
    """
    w, ww = _forward_timelike(w)
    n_s, n_t, m = orders
    rate = math.sqrt(ww)
    s_nodes, s_weights = gauss_laguerre(n_s, rate)
    t_nodes, t_weights = gauss_laguerre(n_t, rate)
    return LightConeRule(s_nodes, s_weights, t_nodes, t_weights, m, rate, rate, boost_to(w / rate))


def integrate(rule, f):
    """Integrate ``f`` against dmu with a built rule.

    ``f`` receives a :class:`~hcs.geometry.ParabolicPoint` of node arrays and
    returns an array of values (real or complex); f divided by the rule's
    envelope is what the weights multiply. Summation order is fixed, so
    results are reproducible bit for bit.
    """
    vals = np.asarray(f(rule.grid()))
    residual = vals * np.exp(-rule.log_envelope())
    return complex(np.sum(rule.weights() * residual))


def envelope(w, p):
    """exp(-2 w.n_x) at the points p."""
    return np.exp(-2.0 * mdot(np.asarray(w, dtype=float), lightcone_vector(p)))


def convergence_check(w, f, order_ladder=None, tol=1e-10):
    """Integrate on a ladder of increasing orders.

    Returns
    -------
    value : complex
        result at the finest orders
    est_error : float
        |difference| between the two finest results

    Raises
    ------
    ConvergenceError
        if est_error stays above ``tol`` relative to max(1, |value|).
    """
    if order_ladder is None:
        order_ladder = [(16, 16, 16), (32, 32, 32), (64, 64, 64)]
    values = [integrate(build_rule(w, o), f) for o in order_ladder]
    value = values[-1]
    est_error = abs(values[-1] - values[-2]) if len(values) > 1 else float("nan")
    if est_error > tol * max(1.0, abs(value)):
        raise ConvergenceError(
            f"light-cone quadrature stagnates: successive difference {est_error:.3g} "
            f"at orders {order_ladder[-1]}"
        )
    return value, est_error
