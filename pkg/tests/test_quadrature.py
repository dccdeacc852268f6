import math

import numpy as np
import pytest
import scipy.special as sc
from hypothesis import given
from hypothesis import strategies as st

from hcs import quadrature as q
from hcs.errors import ConvergenceError, InadmissibleParameterError
from hcs.geometry import cs_param, lightcone_vector, mdot


def test_gauss_laguerre_one_point():
    x, w = q.gauss_laguerre(1)
    assert x == pytest.approx([1.0]) and w == pytest.approx([1.0])


def test_gauss_laguerre_two_point():
    x, w = q.gauss_laguerre(2)
    r2 = math.sqrt(2)
    np.testing.assert_allclose(x, [2 - r2, 2 + r2], rtol=1e-14)
    np.testing.assert_allclose(w, [(2 + r2) / 4, (2 - r2) / 4], rtol=1e-14)


@pytest.mark.parametrize("n", [5, 16, 48, 80])
def test_gauss_laguerre_against_scipy(n):
    x, w = q.gauss_laguerre(n)
    xs, ws = sc.roots_laguerre(n)
    np.testing.assert_allclose(x, xs, rtol=1e-12)
    # tiny weights far in the tail are compared absolutely
    np.testing.assert_allclose(w, ws, rtol=1e-10, atol=1e-300)


@given(n=st.integers(1, 30), rate=st.floats(0.05, 20))
def test_gauss_laguerre_rate_scaling(n, rate):
    x1, w1 = q.gauss_laguerre(n)
    x, w = q.gauss_laguerre(n, rate)
    np.testing.assert_allclose(x, x1 / rate, rtol=1e-14)
    np.testing.assert_allclose(w, w1 / rate, rtol=1e-14)


@pytest.mark.parametrize("n", [4, 12, 30])
def test_gauss_laguerre_moments_exact(n):
    x, w = q.gauss_laguerre(n)
    for k in range(2 * n):
        if k > 40:
            break
        assert np.sum(w * x**k) == pytest.approx(math.factorial(k), rel=1e-12)


def test_build_rule_rest_frame():
    rule = q.build_rule([1.0, 0, 0, 0])
    assert rule.c_s == rule.c_t == 1.0
    np.testing.assert_allclose(rule.boost, np.eye(4), atol=1e-15)
    rule = q.build_rule([0.6, 0, 0, 0.2])
    assert rule.c_s == pytest.approx(math.sqrt(0.32))


def test_boost_maps_unit_time():
    w = np.array([1.3, 0.2, -0.4, 0.5])
    e = w / math.sqrt(mdot(w, w))
    lam = q.boost_to(e)
    np.testing.assert_allclose(lam @ [1, 0, 0, 0], e, atol=1e-14)
    np.testing.assert_allclose(lam.T @ np.diag([1, -1, -1, -1]) @ lam, np.diag([1, -1, -1, -1]), atol=1e-13)


@pytest.mark.parametrize("w", [[1, 0, 0, 0], [0.6, 0, 0, 0.2], [1.0, 0.3, -0.2, 0.5], [1.0, 0.0, 0.0, 0.99]])
def test_generating_integral(w):
    w = np.asarray(w, dtype=float)
    ww = mdot(w, w)
    val = q.integrate(q.build_rule(w), lambda p: q.envelope(w, p))
    assert val.real == pytest.approx(math.pi / ww, rel=1e-12)


def test_first_moment_ground():
    w = np.array([1.0, 0, 0, 0])
    val = q.integrate(q.build_rule(w), lambda p: p.r * q.envelope(w, p))
    assert val.real == pytest.approx(math.pi, rel=1e-13)


def test_generating_integral_random_u(rng):
    for _ in range(30):
        r = 0.8 * np.sqrt(rng.uniform(size=3))
        u = r * np.exp(2j * np.pi * rng.uniform(size=3))
        par = cs_param(u)
        if not par.admissible:
            continue
        # 4 pi / (b.b) with b = 2w
        val = q.integrate(q.build_rule(par.w), lambda p: q.envelope(par.w, p))
        assert val.real == pytest.approx(math.pi / par.ww, rel=1e-10)


def test_odd_in_phi_vanishes():
    w = np.array([1.0, 0, 0, 0])
    val = q.integrate(q.build_rule(w), lambda p: np.sin(p.phi) * q.envelope(w, p))
    assert abs(val) < 1e-14


def test_polynomial_exact_at_low_order():
    w = np.array([1.0, 0, 0, 0])

    def f(p):
        n = lightcone_vector(p)
        return (n[..., 0] ** 3 * n[..., 3] ** 2 + 1) * q.envelope(w, p)

    lo = q.integrate(q.build_rule(w, (4, 4, 8)), f)
    hi = q.integrate(q.build_rule(w, (32, 32, 32)), f)
    assert abs(lo - hi) < 1e-12 * abs(hi)


def test_convergence_check():
    w = np.array([1.0, 0, 0, 0])
    value, err = q.convergence_check(w, lambda p: q.envelope(w, p))
    assert value.real == pytest.approx(math.pi) and err < 1e-12


def test_convergence_check_near_boundary():
    # w.w = 1e-4: envelope matched by the boost, still converges
    w0 = math.sqrt(1 + 1e-4)
    w = np.array([w0, 0, 0, 1.0])
    value, err = q.convergence_check(w, lambda p: q.envelope(w, p))
    assert value.real == pytest.approx(math.pi / 1e-4, rel=1e-9)


def test_convergence_check_raises_on_mismatched_envelope():
    w = np.array([1.0, 0, 0, 0])
    # integrand decays ten times slower than the rule assumes
    with pytest.raises(ConvergenceError):
        q.convergence_check(w, lambda p: np.exp(-0.2 * p.r), order_ladder=[(4, 4, 4), (6, 6, 4)])


@pytest.mark.parametrize("w", [[0, 0, 0, 0], [1, 0, 0, 1], [1, 2, 0, 0], [-1, 0, 0, 0]])
def test_rejects_non_timelike(w):
    with pytest.raises(InadmissibleParameterError):
        q.build_rule(w)
