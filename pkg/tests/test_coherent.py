import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hcs import coherent as cs
from hcs.basis import eigenstate
from hcs.errors import DivergentSeriesError, NearBoundaryWarning, InadmissibleParameterError, SingularParameterError
from hcs.geometry import cartesian_from_parabolic, cdot, point, random_rotation, rotate_param, rotate_point, validate

INV_SQRT_PI = 1 / math.sqrt(math.pi)


def _points(rng, count, radius=3.0):
    xyz = rng.uniform(-1, 1, (count, 3)) * radius
    return point(*xyz.T)


def _disc(rng, radius):
    return radius * math.sqrt(rng.uniform()) * np.exp(2j * math.pi * rng.uniform())


def test_u_of_lambdas_examples():
    np.testing.assert_allclose(cs.u_of_lambdas(cs.LambdaPair(0.4, 0.4)), [0, 0.4, 0])
    u = cs.LambdaPair(0.3, 0.3j).u
    np.testing.assert_allclose(u, [-0.15 - 0.15j, 0.15 + 0.15j, 0], atol=1e-16)
    assert cdot(u, u) == pytest.approx(0.09j)


def test_normalization_examples():
    assert cs.normalization([0, 0.5, 0]) == pytest.approx(1.5)
    lam = 0.3
    assert cs.normalization([0, lam, 0]) == pytest.approx((1 - lam**2) / lam)
    with pytest.raises(SingularParameterError):
        cs.normalization([0, 0, 0])


def test_normalization_matches_ww(rng):
    for _ in range(50):
        lp = cs.LambdaPair(_disc(rng, 0.7), _disc(rng, 0.7))
        u = lp.u
        par = validate(u)
        uu = cdot(u, u)
        assert cs.normalization(u) ** 2 * abs(uu) / abs(1 + uu) ** 2 == pytest.approx(par.ww, rel=1e-12)


def test_amplitude_examples():
    p = point(0.4, -1.0, 2.0)
    assert cs.amplitude_normalized([0, 0, 0], p) == pytest.approx(INV_SQRT_PI * math.exp(-p.r))
    origin = point(0.0, 0.0, 0.0)
    assert cs.amplitude_normalized([0.1 + 0.2j, 0, 0.3], origin) == pytest.approx(
        INV_SQRT_PI * math.sqrt(validate([0.1 + 0.2j, 0, 0.3]).ww)
    )
    # n = (1, 0, 0, 1)
    assert cs.amplitude_normalized([0, 0.5, 0], point(0.0, 0.0, 1.0)) == pytest.approx(
        0.6 * math.exp(-0.6) * INV_SQRT_PI
    )


def test_amplitude_rejects_inadmissible():
    with pytest.raises(InadmissibleParameterError):
        cs.amplitude_normalized([0, 0, 2.0], point(0.0, 0.0, 0.0))


def test_closed_matches_normalized_modulus(rng):
    pts = _points(rng, 40)
    for _ in range(20):
        lp = cs.LambdaPair(_disc(rng, 0.7), _disc(rng, 0.7))
        closed = cs.normalization(lp.u) * np.abs(cs.amplitude_closed(lp, pts))
        np.testing.assert_allclose(closed, np.abs(cs.amplitude_normalized(lp.u, pts)), rtol=1e-12)


def test_closed_form_real_on_z_axis():
    p = point(0.0, 0.0, np.linspace(-2, 2, 9))
    vals = cs.amplitude_closed(cs.LambdaPair(0.3, 0.3), p)
    assert np.max(np.abs(vals.imag)) < 1e-16


def _aligned_diff(lp, pts):
    ref = cs.reference_point()
    ser = cs.series_amplitude(lp, pts)
    closed = cs.amplitude_closed(lp, pts)
    aligned, ratio = cs.align_phase(ser, cs.series_amplitude(lp, ref), cs.amplitude_closed(lp, ref))
    return np.max(np.abs(aligned - closed)), ratio


@pytest.mark.parametrize("lams, bound", [((0.2, 0.2), 1e-10), ((0.3, 0.2j), 1e-8)])
def test_series_matches_closed(rng, lams, bound):
    diff, ratio = _aligned_diff(cs.LambdaPair(*lams), _points(rng, 30))
    assert diff < bound
    # the only freedom is a sign
    assert min(abs(ratio - 1), abs(ratio + 1)) < 1e-10


def test_series_single_term():
    lp = cs.LambdaPair(0.3, 0.2j)
    origin = point(0.0, 0.0, 0.0)
    term = cs.series_coefficient(lp, 0, 0) * eigenstate((0, 0, 0), origin)
    assert term == pytest.approx(np.sqrt(0.3) * np.sqrt(0.2j) * INV_SQRT_PI)


def test_series_diverges_outside_bidisc():
    with pytest.raises(DivergentSeriesError):
        cs.series_amplitude(cs.LambdaPair(1.0, 0.1), point(0.0, 0.0, 1.0))


@given(l1=st.complex_numbers(max_magnitude=0.6), l2=st.complex_numbers(max_magnitude=0.6))
def test_series_truncation_bound_is_honest(l1, l2):
    lp = cs.LambdaPair(l1, l2)
    p = cartesian_from_parabolic(np.array([0.5, 1.5]), np.array([1.0, 0.2]), np.array([0.3, 2.0]))
    coarse = cs.series_amplitude(lp, p, tol=1e-6)
    fine = cs.series_amplitude(lp, p, tol=1e-14)
    assert np.max(np.abs(coarse - fine)) < 1e-6


def test_evolve():
    u = np.array([0.1 + 0.2j, -0.3, 0.05j])
    np.testing.assert_array_equal(cs.evolve(u, 0.0), u)
    np.testing.assert_array_equal(cs.evolve(u, 2 * math.pi), u)
    np.testing.assert_allclose(cs.evolve(u, 0.5), u * np.exp(0.5j))


@pytest.mark.parametrize("eps", [0.3, 1.0, math.pi])
def test_evolution_phase_law(rng, eps):
    pts = _points(rng, 15)
    lp = cs.LambdaPair(0.3 + 0.1j, -0.2 + 0.25j)
    phased = cs.series_amplitude(lp, pts, epsilon=eps)
    rot = cs.LambdaPair(lp.lam1 * np.exp(1j * eps), lp.lam2 * np.exp(1j * eps))
    direct = cs.series_amplitude(rot, pts)
    # principal square roots may flip one global sign
    err = min(np.max(np.abs(phased - direct)), np.max(np.abs(phased + direct)))
    assert err < 1e-10


def test_rotation_covariance(rng):
    pts = _points(rng, 25)
    for _ in range(10):
        u = np.array([_disc(rng, 0.5) for _ in range(3)])
        if not validate(u, strict=False).admissible:
            continue
        R = random_rotation(rng)
        lhs = cs.amplitude_normalized(rotate_param(u, R), rotate_point(pts, R))
        np.testing.assert_allclose(lhs, cs.amplitude_normalized(u, pts), atol=1e-13)


def test_quasiclassical_flatness_decreases():
    pts = point(*np.random.default_rng(0).uniform(-0.5, 0.5, (20, 3)).T)
    q = np.array([0.0, 0.0, 1.0])
    with pytest.warns(NearBoundaryWarning):
        flat = [cs.quasiclassical_ratio(q, rho, pts) for rho in (0.9, 0.99, 0.999)]
    assert flat[0] > flat[1] > flat[2]
    with pytest.raises(ValueError):
        cs.quasiclassical_ratio([0, 0, 2.0], 0.9, pts)
    with pytest.raises(ValueError):
        cs.quasiclassical_ratio(q, 1.0, pts)


def test_overlap_examples():
    assert abs(cs.overlap([0, 0, 0], [0, 0.5, 0])) == pytest.approx(0.75, abs=1e-12)
    u = [0.1 + 0.2j, 0.05, -0.3j]
    assert cs.overlap(u, u) == pytest.approx(1.0, abs=1e-12)


def test_overlap_hermitian_and_quadrature(rng):
    for _ in range(5):
        u = np.array([_disc(rng, 0.4) for _ in range(3)])
        v = np.array([_disc(rng, 0.4) for _ in range(3)])
        if not (validate(u, strict=False).admissible and validate(v, strict=False).admissible):
            continue
        assert cs.overlap(u, v) == pytest.approx(np.conj(cs.overlap(v, u)), rel=1e-13)
        assert abs(cs.overlap(u, v)) <= 1 + 1e-12
        quad = cs.overlap_quadrature(u, v)
        assert abs(quad - cs.overlap(u, v)) < 1e-8 * abs(quad)


def test_norm_quadrature():
    for u in ([0, 0, 0], [0, 0.5, 0], [0.2j, 0.3, -0.1 + 0.1j]):
        assert cs.norm_quadrature(u) == pytest.approx(1.0, abs=1e-10)
