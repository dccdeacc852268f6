"""Special functions: associated Laguerre polynomials, integer-order Bessel
functions and checks of the two generating-function identities used to sum
the coherent-state series.
"""

import math
import warnings

import numpy as np

from .errors import ConvergenceWarning

# |x| at which bessel_j / bessel_i switch from power series to Miller recurrence
SERIES_SWITCH = 12.0


def laguerre(n, alpha, x):
    """Associated Laguerre polynomial L_n^alpha(x).

    Uses the upward three-term recurrence

        (k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}

    which is stable for alpha >= 0, x >= 0.

    Parameters
    ----------
    n : int
        degree, n >= 0
    alpha : int
        order, alpha >= 0
    x : float or numpy.ndarray
        evaluation points

    Returns
    -------
    float or numpy.ndarray
    """
    if n < 0 or alpha < 0:
        raise ValueError(f"laguerre needs n, alpha >= 0, got n={n}, alpha={alpha}")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur if cur.ndim else float(cur)


def laguerre_series(n, alpha, x):
    """L_n^alpha(x) from the explicit sum over (-1)^k C(n+alpha, n-k) x^k / k!.

    Slow and prone to cancellation for large x; kept as an independent
    check of :func:`laguerre`.
    """
    total = 0.0
    for k in range(n + 1):
        total += (-1) ** k * math.comb(n + alpha, n - k) * x**k / math.factorial(k)
    return total


def log_factorial(n):
    """ln(n!) for integer n >= 0."""
    if n < 0:
        raise ValueError(f"log_factorial needs n >= 0, got {n}")
    return math.lgamma(n + 1)


def _bessel_series(order, x, sign):
    # sum_k (sign)^k (x/2)^(2k+order) / (k! (k+order)!)
    half = 0.5 * x
    term = half**order / math.factorial(order)
    total = term
    q = sign * half * half
    k = 0
    while True:
        k += 1
        term *= q / (k * (k + order))
        total += term
        if abs(term) <= 1e-17 * abs(total) or term == 0.0:
            return total


def _miller_start(order, x):
    # Starting index comfortably above both the order and |x|.
    m = int(max(order, abs(x))) + 20 + int(10 * math.sqrt(max(order, abs(x))))
    return m + (m % 2)


def _bessel_j_miller(order, x):
    m = _miller_start(order, x)
    big = 1e250
    jp1, j = 0.0, 1e-300
    norm = 0.0
    result = 0.0
    for k in range(m, 0, -1):
        jm1 = 2.0 * k / x * j - jp1
        jp1, j = j, jm1
        # j now holds J_{k-1} (unnormalized)
        if k - 1 == order:
            result = j
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * j
        if abs(j) > big:
            j /= big
            jp1 /= big
            result /= big
            norm /= big
    norm += j  # J_0 term
    return result / norm


def _bessel_i_miller(order, x):
    m = _miller_start(order, x)
    big = 1e250
    ip1, i = 0.0, 1e-300
    norm = 0.0
    result = 0.0
    for k in range(m, 0, -1):
        im1 = 2.0 * k / x * i + ip1
        ip1, i = i, im1
        if k - 1 == order:
            result = i
        if k - 1 > 0:
            norm += 2.0 * i
        if abs(i) > big:
            i /= big
            ip1 /= big
            result /= big
            norm /= big
    norm += i
    # sum_k I_k over all integers k equals e^x
    return result / norm * math.exp(x)


def bessel_j(order, x):
    """Bessel function of the first kind J_order(x), integer order >= 0."""
    if order < 0:
        raise ValueError("bessel_j needs order >= 0")
    x = float(x)
    if x == 0.0:
        return 1.0 if order == 0 else 0.0
    if x < 0:
        return (-1) ** order * bessel_j(order, -x)
    if x < SERIES_SWITCH:
        return _bessel_series(order, x, -1.0)
    return _bessel_j_miller(order, x)


def bessel_i(order, x):
    """Modified Bessel function I_order(x), integer order >= 0.

    Raises
    ------
    OverflowError
        if |x| is large enough that e^|x| overflows a double.
    """
    if order < 0:
        raise ValueError("bessel_i needs order >= 0")
    x = float(x)
    if x == 0.0:
        return 1.0 if order == 0 else 0.0
    if x < 0:
        return (-1) ** order * bessel_i(order, -x)
    if x > 700.0:
        raise OverflowError(f"bessel_i({order}, {x}) overflows double precision")
    if x < SERIES_SWITCH:
        return _bessel_series(order, x, 1.0)
    return _bessel_i_miller(order, x)


def verify_hardy_hille(alpha, x, y, z, n_terms, tol=1e-10):
    """Residual of the bilinear Laguerre generating function at real x, y, z.

    Compares the truncated sum

        sum_{n < n_terms} n!/(n+alpha)! L_n^alpha(x) L_n^alpha(y) z^n

    with the closed form written for positive xyz,

        (1-z)^-1 exp(-z (x+y)/(1-z)) (xyz)^(-alpha/2) I_alpha(2 sqrt(xyz)/(1-z)).

    A :class:`ConvergenceWarning` is issued when the geometric estimate of the
    neglected tail exceeds ``tol``.
    """
    if not abs(z) < 1:
        raise ValueError(f"need |z| < 1, got z={z}")
    lhs = 0.0
    last = 0.0
    for n in range(n_terms):
        coef = math.exp(log_factorial(n) - log_factorial(n + alpha))
        last = coef * laguerre(n, alpha, x) * laguerre(n, alpha, y) * z**n
        lhs += last
    tail = abs(last) * abs(z) / (1 - abs(z))
    if tail > tol:
        warnings.warn(
            f"Hardy-Hille sum not converged at n_terms={n_terms}: tail ~ {tail:.3g}",
            ConvergenceWarning,
            stacklevel=2,
        )

    xyz = x * y * z
    if xyz == 0.0:
        scaled_bessel = 1.0 / math.factorial(alpha) / (1 - z) ** alpha
    else:
        s = math.sqrt(xyz)
        scaled_bessel = s ** (-alpha) * bessel_i(alpha, 2 * s / (1 - z))
    rhs = math.exp(-z * (x + y) / (1 - z)) / (1 - z) * scaled_bessel
    return abs(lhs - rhs)


def verify_bessel_gen(t, z, n_terms):
    """Residual of sum_{n=-N..N} t^n J_n(z) against exp((t - 1/t) z / 2).

    Negative orders use J_{-n} = (-1)^n J_n. A :class:`ConvergenceWarning`
    is issued when the outermost terms are not negligible, which happens for
    |t| far from 1 at small N.
    """
    t = complex(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    total = complex(bessel_j(0, z))
    edge = 0.0
    for n in range(1, n_terms + 1):
        jn = bessel_j(n, z)
        hi = t**n * jn
        lo = t ** (-n) * (-1) ** n * jn
        total += hi + lo
        edge = abs(hi) + abs(lo)
    exact = np.exp((t - 1 / t) * z / 2)
    if edge > 1e-14 * max(1.0, abs(exact)):
        warnings.warn(
            f"Bessel generating sum not converged at N={n_terms}: edge terms ~ {edge:.3g}",
            ConvergenceWarning,
            stacklevel=2,
        )
    return abs(total - exact)
