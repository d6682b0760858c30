import numpy as np
import pytest

from nystrom_quad import geom, kernels, linalg, nystrom, specfun


def test_k1d_values():
    k = kernels.k1d()
    assert k.eval(0.0, np.pi) == pytest.approx(0.0, abs=1e-16)
    assert k.phi(1.0, 2.0) == 0.25
    assert k.psi(1.0, 2.0) == pytest.approx(-0.34657359027997264, rel=1e-15)
    assert abs(k.split_eval(0.3, 2.1) - k.eval(0.3, 2.1)) < 1e-15
    with pytest.raises(ValueError):
        k.eval(0.4, 0.4)
    with pytest.raises(ValueError):
        k.eval(0.4, 0.4 + 2 * np.pi)


def test_split_required_together():
    with pytest.raises(ValueError):
        kernels.KernelSpec(lambda t, s: t, phi=lambda t, s: t)
    k = kernels.KernelSpec(lambda t, s: np.cos(t - s))
    assert not k.has_split
    with pytest.raises(ValueError):
        k.phi(0.0, 1.0)


def test_cfie_rotation_invariance_on_circle():
    k = kernels.helm_cfie(geom.circle(1.0), 1.0)
    assert abs(k.eval(0.3, 1.0) - k.eval(1.3, 2.0)) < 1e-13


def test_cfie_split_consistency_random_pairs():
    k = kernels.helm_cfie(geom.starfish(), 2.8)
    rng = np.random.default_rng(1)
    t = rng.uniform(0, 2 * np.pi, 100)
    s = rng.uniform(0, 2 * np.pi, 100)
    keep = kernels.periodic_gap(t, s, 2 * np.pi) > 1e-3
    assert np.max(np.abs(k.split_eval(t[keep], s[keep]) - k.eval(t[keep], s[keep]))) <= 1e-11


def test_cfie_small_separation():
    k = kernels.helm_cfie(geom.starfish(), 2.8)
    t = 0.9
    v = k.eval(t, t + 1e-7)
    assert np.isfinite(v)
    assert abs(v - k.split_eval(t, t + 1e-7)) <= 1e-9


@pytest.mark.parametrize("omega", [0.0, -1.0])
def test_cfie_rejects_bad_wavenumber(omega):
    with pytest.raises(ValueError):
        kernels.helm_cfie(geom.starfish(), omega)


def test_cfie_rejects_coincident_points():
    k = kernels.helm_cfie(geom.starfish(), 2.8)
    with pytest.raises(ValueError):
        k.eval(1.0, 1.0)


@pytest.mark.parametrize("omega", [2.8, 28.0])
@pytest.mark.parametrize("t", [0.0, 0.7, 2.9])
def test_cfie_split_smooth_on_diagonal(omega, t):
    k = kernels.helm_cfie(geom.starfish(), omega)
    d = 1e-3
    for f in (k.phi, k.psi):
        mid = f(t, t)
        avg = 0.5 * (f(t, t + d) + f(t, t - d))
        # second-order symmetric difference: error O(d^2 |f''|)
        assert abs(mid - avg) <= 1e-5 * max(1.0, abs(mid)) * omega**2


def test_cfie_diagonal_limit_from_both_sides():
    k = kernels.helm_cfie(geom.starfish(), 2.8)
    t = 1.234
    for d in (1e-4, -1e-4):
        assert abs(k.psi(t, t + d) - k.psi(t, t)) < 1e-2
    # one-sided Richardson extrapolation (first-order error) to the diagonal
    d = 1e-3
    est = 2 * k.psi(t, t + d / 2) - k.psi(t, t + d)
    assert abs(est - k.psi(t, t)) < 1e-5


def test_point_source_field():
    assert kernels.point_source_field(2.8, [0, 0], 0.0, [1.0, 0.0]) == 0
    v = kernels.point_source_field(2.8, [0.1, 0.0], 1.0, [1.1, 0.0])
    assert v == pytest.approx(0.25j * specfun.hankel1_0(2.8), rel=1e-15)
    a = abs(kernels.point_source_field(2.8, [0, 0], 1.0, [100.0, 0]))
    b = abs(kernels.point_source_field(2.8, [0, 0], 1.0, [400.0, 0]))
    assert abs(a / b - 2) < 0.02
    with pytest.raises(ValueError):
        kernels.point_source_field(2.8, [0.5, 0.5], 1.0, [0.5, 0.5])


def test_potential_linear_and_guarded():
    c = geom.starfish()
    x = 2 * np.pi * np.arange(1, 65) / 64
    w = np.full(64, 2 * np.pi / 64)
    u = kernels.helm_potential(c, 2.8, np.zeros(64), x, w, [[2.0, 0.0], [0.0, -3.0]])
    np.testing.assert_array_equal(u, 0)
    with pytest.raises(ValueError):
        kernels.helm_potential(c, 2.8, np.ones(64), x, w, [[c.eval(0.3)[0] + 1e-3, c.eval(0.3)[1]]])


def test_cfie_system_well_conditioned():
    sys_ = nystrom.build_kress(kernels.helm_cfie(geom.starfish(), 2.8), 256)
    s = linalg.singular_values(nystrom.assemble_system(sys_, 0.5))
    assert s[-1] >= 0.1
