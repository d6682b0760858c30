import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nystrom_quad import geom

CURVES = [geom.starfish(), geom.circle(1.0), geom.circle(2.0)]
angles = st.floats(-10.0, 10.0, allow_nan=False)


def test_starfish_points():
    c = geom.starfish()
    np.testing.assert_allclose(c.eval(0.0), [9 / 20 - 1 / 9, 0.0], atol=1e-15)
    r = np.linalg.norm(c.eval(np.pi / 5))
    assert abs(r - (9 / 20 + 1 / 9)) < 1e-15
    np.testing.assert_allclose(c.eval(2 * np.pi), c.eval(0.0), atol=1e-14)


def test_circle_basics():
    assert geom.circle(1).speed(0.7) == pytest.approx(1.0, abs=1e-15)
    np.testing.assert_allclose(geom.circle(2).normal(np.pi / 2), [0.0, 1.0], atol=1e-15)
    assert geom.arclength(geom.circle(3.0), 16) == pytest.approx(6 * np.pi, abs=1e-13)
    with pytest.raises(ValueError):
        geom.circle(0.0)
    with pytest.raises(ValueError):
        geom.circle(-1.0)


@pytest.mark.parametrize("radius", [1.0, 2.0])
def test_circle_curvature(radius):
    t = np.linspace(0, 2 * np.pi, 7)
    _, speed, normal, kappa = geom.curve_frame(geom.circle(radius), t)
    np.testing.assert_allclose(kappa, 1 / radius, rtol=1e-14)
    np.testing.assert_allclose(speed, radius, rtol=1e-14)


def test_starfish_curvature_matches_finite_differences():
    c = geom.starfish()
    h, t = 1e-3, 0.0
    f = [c.eval(t + k * h) for k in (-2, -1, 0, 1, 2)]
    # fourth-order centered differences
    d = (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * h)
    dd = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h**2)
    kappa_fd = (d[0] * dd[1] - d[1] * dd[0]) / np.hypot(*d) ** 3
    assert abs(c.curvature(t) - kappa_fd) < 1e-6
    # polar formula (r^2 - r r'')/r^3 at t = 0, evaluated in 30 digits
    assert c.curvature(0.0) == pytest.approx(-21.236226820747110992, rel=1e-14)


@pytest.mark.parametrize("curve", CURVES, ids=lambda c: c.name)
@settings(max_examples=100, deadline=None)
@given(t=angles)
def test_unit_outward_normal(curve, t):
    n = curve.normal(t)
    assert abs(np.linalg.norm(n) - 1) < 1e-14
    assert np.dot(n, curve.eval(t)) > 0  # centroid at the origin
    np.testing.assert_allclose(curve.eval(t + curve.period), curve.eval(t), atol=1e-14)
    assert curve.speed(t) > 0


@pytest.mark.parametrize("curve", CURVES, ids=lambda c: c.name)
@settings(max_examples=30, deadline=None)
@given(t=angles)
def test_derivatives_match_finite_differences(curve, t):
    h = 1e-5
    fd1 = (curve.eval(t + h) - curve.eval(t - h)) / (2 * h)
    fd2 = (curve.deriv(t + h) - curve.deriv(t - h)) / (2 * h)
    scale1 = np.linalg.norm(curve.deriv(t))
    scale2 = max(np.linalg.norm(curve.deriv2(t)), 1.0)
    assert np.linalg.norm(fd1 - curve.deriv(t)) <= 1e-8 * scale1
    assert np.linalg.norm(fd2 - curve.deriv2(t)) <= 1e-8 * scale2


def test_arclength_spectral():
    c = geom.starfish()
    assert abs(geom.arclength(c, 256) - geom.arclength(c, 512)) < 1e-13


def test_broadcasting_shapes():
    c = geom.starfish()
    t = np.zeros((3, 4))
    assert c.eval(t).shape == (3, 4, 2)
    assert c.speed(t).shape == (3, 4)
