"""Complex Minkowski four-vectors, parabolic coordinates and the
coherent-state label u.

Four-vectors are plain numpy arrays whose last axis has length 4, ordered
(c0, c1, c2, c3). The metric is diag(+1, -1, -1, -1) and :func:`mdot` is
bilinear: no complex conjugation is applied.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InadmissibleParameterError, NearBoundaryWarning, SingularParameterError

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

# w.w of order 1e-6 or less (log10 rounding to <= -6) is admissible but
# flagged; quadrature cost grows like 1/(w.w)
NEAR_BOUNDARY = 10**-5.5


def four_vector(c0, c1, c2, c3):
    return np.array([c0, c1, c2, c3], dtype=complex)


def mdot(a, b):
    """Minkowski product a0 b0 - a1 b1 - a2 b2 - a3 b3 (broadcasts)."""
    a = np.asarray(a)
    b = np.asarray(b)
    return a[..., 0] * b[..., 0] - a[..., 1] * b[..., 1] - a[..., 2] * b[..., 2] - a[..., 3] * b[..., 3]


def cdot(u, v):
    """Bilinear Euclidean product of complex 3-vectors (no conjugation)."""
    u = np.asarray(u)
    v = np.asarray(v)
    return u[..., 0] * v[..., 0] + u[..., 1] * v[..., 1] + u[..., 2] * v[..., 2]


@dataclass(frozen=True)
class ParabolicPoint:
    """A spatial point (or array of points) in both Cartesian and parabolic charts.

    x + iy = xi eta exp(i phi), z = (xi^2 - eta^2)/2, r = (xi^2 + eta^2)/2.
    All fields broadcast together.
    """

    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    xi: np.ndarray
    eta: np.ndarray
    phi: np.ndarray

    @property
    def r(self):
        return 0.5 * (self.xi**2 + self.eta**2)

    @property
    def cartesian(self):
        return np.stack(np.broadcast_arrays(self.x, self.y, self.z), axis=-1)


def parabolic_from_cartesian(x, y, z):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    r = np.sqrt(x * x + y * y + z * z)
    xi = np.sqrt(np.maximum(r + z, 0.0))
    eta = np.sqrt(np.maximum(r - z, 0.0))
    # on the z-axis atan2(0, 0) = 0, which is the gauge we want
    phi = np.mod(np.arctan2(y, x), 2 * np.pi)
    return ParabolicPoint(x, y, z, xi, eta, phi)


def cartesian_from_parabolic(xi, eta, phi):
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if np.any(xi < 0) or np.any(eta < 0):
        raise ValueError("parabolic coordinates xi, eta must be >= 0")
    rho = xi * eta
    x = rho * np.cos(phi)
    y = rho * np.sin(phi)
    z = 0.5 * (xi**2 - eta**2)
    phi = np.where(rho == 0.0, 0.0, np.mod(phi, 2 * np.pi))
    return ParabolicPoint(x, y, z, xi, eta, phi)


def point(x, y, z):
    """Shorthand for :func:`parabolic_from_cartesian`."""
    return parabolic_from_cartesian(x, y, z)


def lightcone_vector(p):
    """The forward light-like vector n = (r, x, y, z) of a point."""
    x, y, z = np.broadcast_arrays(p.x, p.y, p.z)
    return np.stack([p.r * np.ones_like(x), x, y, z], axis=-1)


def l_of_u(u):
    """l_u = (i (1 - u.u)/(1 + u.u), -2u/(1 + u.u)); satisfies l.l = -1."""
    u = np.asarray(u, dtype=complex)
    uu = cdot(u, u)
    den = 1.0 + uu
    if np.any(np.abs(den) < 1e-14):
        raise SingularParameterError(f"1 + u.u vanishes for u={u}")
    out = np.empty(u.shape[:-1] + (4,), dtype=complex)
    out[..., 0] = 1j * (1.0 - uu) / den
    out[..., 1:] = -2.0 * u / np.asarray(den)[..., None]
    return out


def u_of_l(l, tol=1e-8):
    """Inverse of :func:`l_of_u`: u = -l_vec / (1 - i l0)."""
    l = np.asarray(l, dtype=complex)
    norm = mdot(l, l)
    if np.any(np.abs(norm + 1.0) > tol):
        raise ValueError(f"l.l = {norm}, expected -1")
    den = 1.0 - 1j * l[..., 0]
    if np.any(np.abs(den) < 1e-14):
        raise SingularParameterError("1 - i l0 vanishes; u is at infinity")
    return -l[..., 1:] / np.asarray(den)[..., None]


def w_dot_w_rational(u):
    """(1 - 2 u.u* + (u.u)(u*.u*)) / |1 + u.u|^2, the closed form of w.w."""
    u = np.asarray(u, dtype=complex)
    uu = cdot(u, u)
    uus = np.sum(np.abs(u) ** 2, axis=-1)
    return np.real(1.0 - 2.0 * uus + np.abs(uu) ** 2) / np.abs(1.0 + uu) ** 2


@dataclass(frozen=True)
class CSParam:
    """Coherent-state label u with cached l_u, w_u = Im l_u and w.w."""

    u: np.ndarray
    l: np.ndarray
    w: np.ndarray
    ww: float

    @property
    def admissible(self):
        return self.ww > 0 and self.w[0] > 0

    @property
    def near_boundary(self):
        return self.admissible and self.ww < NEAR_BOUNDARY


def cs_param(u):
    """Build a :class:`CSParam` without checking admissibility."""
    u = np.array(u, dtype=complex).reshape(3)
    l = l_of_u(u)
    w = l.imag.copy()
    ww = float(mdot(w, w))
    return CSParam(u, l, w, ww)


def validate(u, strict=True):
    """Return the :class:`CSParam` for ``u``, checking admissibility.

    u is admissible when w.w > 0 and w0 > 0. The rational closed form of w.w
    is compared with Im(l).Im(l) as a consistency guard.

    Raises
    ------
    InadmissibleParameterError
        if ``strict`` and a condition fails; ``condition`` is "w.w > 0" or
        "w0 > 0".
    """
    par = cs_param(u)
    rational = w_dot_w_rational(par.u)
    if abs(rational - par.ww) > 1e-10 * max(1.0, abs(par.ww)):
        raise ArithmeticError(f"w.w mismatch: {par.ww} vs rational form {rational}")
    if strict:
        if not par.ww > 0:
            raise InadmissibleParameterError(
                f"u={par.u} is not normalizable: w.w = {par.ww:.6g} <= 0", condition="w.w > 0"
            )
        if not par.w[0] > 0:
            raise InadmissibleParameterError(
                f"u={par.u} has w0 = {par.w[0]:.6g} <= 0", condition="w0 > 0"
            )
    if par.near_boundary:
        warnings.warn(
            f"u={par.u} is close to the admissibility boundary (w.w = {par.ww:.3g})",
            NearBoundaryWarning,
            stacklevel=2,
        )
    return par


def _check_rotation(R, tol=1e-12):
    R = np.asarray(R, dtype=float)
    if R.shape != (3, 3):
        raise ValueError("rotation must be 3x3")
    if np.max(np.abs(R.T @ R - np.eye(3))) > tol or abs(np.linalg.det(R) - 1.0) > tol:
        raise ValueError("matrix is not a proper rotation")
    return R


def rotate_param(u, R):
    """Apply a real rotation to a complex 3-vector."""
    R = _check_rotation(R)
    return R @ np.asarray(u, dtype=complex)


def rotate_point(p, R):
    R = _check_rotation(R)
    xyz = np.einsum("ij,...j->...i", R, p.cartesian)
    return parabolic_from_cartesian(xyz[..., 0], xyz[..., 1], xyz[..., 2])


def rot_z(angle):
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def random_rotation(rng):
    """Haar-random proper rotation from a numpy Generator."""
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def parse_complex_vector(text, length=None):
    """Parse "0.1+0.2i,0,0.3" into a complex numpy vector.

    Each component is ``a``, ``bi``, ``a+bi`` or ``a-bi``.
    """
    parts = [s.strip() for s in text.split(",")]
    out = []
    for s in parts:
        if not s:
            raise ValueError(f"empty component in {text!r}")
        try:
            out.append(complex(s.replace("i", "j").replace(" ", "")))
        except ValueError:
            raise ValueError(f"malformed complex literal {s!r}") from None
        if "j" in s:
            raise ValueError(f"malformed complex literal {s!r} (use i for the imaginary unit)")
    if length is not None and len(out) != length:
        raise ValueError(f"expected {length} components, got {len(out)}")
    return np.array(out, dtype=complex)


def format_complex(c):
    c = complex(c)
    return f"{c.real:.17g}{c.imag:+.17g}i"
