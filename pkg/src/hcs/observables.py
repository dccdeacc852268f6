"""Moments, expectation values and density shape of coherent states.

Light-cone moments <u|n^mu|u> and <u|n^mu n^nu|u> are scalar products with
the measure dmu = r^-1 dV. Position expectations use the ratio
<u| r f |u> / <u| r |u>, i.e. ordinary volume expectations.
"""

import math
from dataclasses import dataclass

import numpy as np

from .coherent import amplitude_normalized, evolve
from .errors import InadmissibleParameterError
from .geometry import METRIC, lightcone_vector, validate
from .quadrature import DEFAULT_ORDERS, build_rule, integrate


@dataclass(frozen=True)
class KMTheta:
    """u = (k + i m) e^{i theta} with real orthogonal k and m."""

    k: np.ndarray
    m: np.ndarray
    theta: float = 0.0

    def __post_init__(self):
        k = np.asarray(self.k, dtype=float)
        m = np.asarray(self.m, dtype=float)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "m", m)
        if abs(k @ m) > 1e-10:
            raise ValueError(f"k and m must be orthogonal, k.m = {k @ m:.3g}")

    def u(self, theta=None):
        th = self.theta if theta is None else theta
        return (self.k + 1j * self.m) * np.exp(1j * th)


def expect_n(u):
    """<u|n^mu|u> = w^mu / (w.w)."""
    par = validate(u)
    return par.w / par.ww


def expect_nn(u):
    """<u|n^mu n^nu|u> = (4 w^mu w^nu - eta^{mu nu} w.w) / (2 (w.w)^2)."""
    par = validate(u)
    w, ww = par.w, par.ww
    return (4.0 * np.outer(w, w) - METRIC * ww) / (2.0 * ww**2)


def expect_position(u):
    """<x> = <u|r x|u> / <u|r|u> = 2 w_vec / (w.w)."""
    par = validate(u)
    return 2.0 * par.w[1:] / par.ww


def expect_position_kmt(k, m, theta):
    """<x> in terms of (k, m, theta); equal to :func:`expect_position` of (k + i m) e^{i theta}."""
    k = np.asarray(k, dtype=float)
    m = np.asarray(m, dtype=float)
    k2 = k @ k
    m2 = m @ m
    num = (1 + k2 - m2) * m * math.cos(theta) + (1 + m2 - k2) * k * math.sin(theta)
    den = 1 - 2 * (k2 + m2) + (k2 - m2) ** 2
    return -4.0 * num / den


def expect_r(u):
    """2 w0 / (w.w), which diverges as u approaches the Shilov boundary.

    The value is 2 <u|n^0|u>, twice the first light-cone moment. The volume
    expectation <u|r r|u> / <u|r|u> is :func:`expect_r_volume`; it is smaller
    by 1 / (2 w0) and diverges in the same limit.
    """
    par = validate(u)
    return 2.0 * par.w[0] / par.ww


def expect_r_volume(u):
    """<u|r r|u> / <u|r|u> = (4 w0^2 - w.w) / (2 w0 w.w)."""
    par = validate(u)
    w0, ww = par.w[0], par.ww
    return (4.0 * w0 * w0 - ww) / (2.0 * w0 * ww)


def moments_quadrature(u, orders=DEFAULT_ORDERS):
    """First and second light-cone moments by quadrature.

    Returns
    -------
    first : numpy.ndarray, shape (4,)
    second : numpy.ndarray, shape (4, 4)
    """
    par = validate(u)
    rule = build_rule(par.w, orders)
    p = rule.grid()
    dens = np.abs(amplitude_normalized(u, p)) ** 2
    n = lightcone_vector(p)
    wts = (rule.weights() * np.exp(-rule.log_envelope()) * dens).reshape(-1)
    n = n.reshape(-1, 4)
    first = wts @ n
    second = (n * wts[:, None]).T @ n
    return first, second


def expect_quadrature(u, f, orders=DEFAULT_ORDERS):
    """<f> = <u| r f |u> / <u| r |u> by quadrature; f maps points to values."""
    par = validate(u)
    rule = build_rule(par.w, orders)

    def weighted(g):
        return lambda p: np.abs(amplitude_normalized(u, p)) ** 2 * p.r * g(p)

    num = integrate(rule, weighted(f))
    den = integrate(rule, weighted(lambda p: 1.0))
    return num / den


def trajectory(kmt, samples):
    """<x> along the fictitious-time orbit theta -> theta0 + 2 pi j / samples.

    Returns
    -------
    thetas : numpy.ndarray, shape (samples,)
    positions : numpy.ndarray, shape (samples, 3)

    Raises
    ------
    InadmissibleParameterError
        naming the first theta at which u(theta) is not admissible.
    """
    thetas = kmt.theta + 2 * np.pi * np.arange(samples) / samples
    u0 = kmt.u()
    out = np.empty((samples, 3))
    for j, th in enumerate(thetas):
        try:
            out[j] = expect_position(evolve(u0, th - kmt.theta))
        except InadmissibleParameterError as exc:
            raise InadmissibleParameterError(
                f"u(theta={th:.17g}) is not admissible: {exc}", condition=exc.condition
            ) from exc
    return thetas, out


def fit_ellipse(thetas, positions):
    """Least-squares fit positions(theta) = A cos(theta) + B sin(theta).

    Returns
    -------
    A, B : numpy.ndarray, shape (3,)
    residual : float
        max absolute deviation of the fit over the samples.
    """
    design = np.column_stack([np.cos(thetas), np.sin(thetas)])
    coef, *_ = np.linalg.lstsq(design, positions, rcond=None)
    residual = float(np.max(np.abs(design @ coef - positions)))
    return coef[0], coef[1], residual


def density_shape(u):
    """(w0 - w3, w0 + w3, w_perp, alpha) describing |<x|u>|.

    |<x|u>|^2 = (w.w)/pi * exp(-c_xi xi^2 - c_eta eta^2 + 2 xi eta w_perp cos(phi - alpha)),
    see :func:`density_from_shape`.
    """
    par = validate(u)
    w = par.w
    w_perp = math.hypot(w[1], w[2])
    alpha = math.atan2(w[2], w[1]) if w_perp > 0 else 0.0
    return float(w[0] - w[3]), float(w[0] + w[3]), w_perp, alpha


def density_from_shape(u, p):
    """|<x|u>| rebuilt from :func:`density_shape` at the point(s) p."""
    c_xi, c_eta, w_perp, alpha = density_shape(u)
    ww = validate(u).ww
    xi, eta = np.asarray(p.xi), np.asarray(p.eta)
    expo = -c_xi * xi**2 - c_eta * eta**2 + 2 * xi * eta * w_perp * np.cos(p.phi - alpha)
    return math.sqrt(ww / math.pi) * np.exp(0.5 * expo)
