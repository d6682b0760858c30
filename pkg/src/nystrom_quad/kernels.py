"""Log-singular kernels on periodic parameter domains.

A :class:`KernelSpec` evaluates ``k(t, s)`` off the diagonal and, when the
analytic split is known, the smooth functions ``phi`` and ``psi`` in

    k(t, s) = phi(t, s) * log(4 sin^2((t - s)/2)) + psi(t, s)

with ``psi`` extended to the diagonal by its limit. All callables broadcast
over numpy arrays of ``t`` and ``s``.
"""

from __future__ import annotations

import numpy as np

from . import specfun
from .specfun import EULER_GAMMA

# |t - s| (mod T) below this is treated as coincident
SINGULAR_GAP = 1e-10


def periodic_gap(t, s, period):
    d = np.mod(np.asarray(t) - np.asarray(s) + period / 2, period) - period / 2
    return np.abs(d)


def log4sin2(d):
    return np.log(4 * np.sin(d / 2) ** 2)


class KernelSpec:
    """Kernel with optional periodized-log split.

    Parameters
    ----------
    func : callable
        ``func(t, s)`` for ``t != s``.
    phi, psi : callable, optional
        Smooth split functions; both or neither.
    period : float
    name : str
    """

    def __init__(self, func, phi=None, psi=None, period=2 * np.pi, name="kernel"):
        if (phi is None) != (psi is None):
            raise ValueError("phi and psi must be given together")
        self._func = func
        self._phi = phi
        self._psi = psi
        self.period = float(period)
        self.name = name

    @property
    def has_split(self):
        return self._phi is not None

    def eval(self, t, s, check=True):
        """Kernel values; ``check=False`` skips the coincident-point guard."""
        t, s = np.broadcast_arrays(np.asarray(t, float), np.asarray(s, float))
        if check and np.any(periodic_gap(t, s, self.period) < SINGULAR_GAP):
            raise ValueError(f"{self.name}: evaluation at coincident parameters")
        return self._func(t, s)

    def phi(self, t, s):
        if not self.has_split:
            raise ValueError(f"{self.name}: no analytic split available")
        t, s = np.broadcast_arrays(np.asarray(t, float), np.asarray(s, float))
        return self._phi(t, s)

    def psi(self, t, s):
        if not self.has_split:
            raise ValueError(f"{self.name}: no analytic split available")
        t, s = np.broadcast_arrays(np.asarray(t, float), np.asarray(s, float))
        return self._psi(t, s)

    def split_eval(self, t, s):
        """Kernel rebuilt from the split (off the diagonal)."""
        return self.phi(t, s) * log4sin2(np.asarray(t) - np.asarray(s)) + self.psi(t, s)

    def __repr__(self):
        return f"KernelSpec({self.name!r})"


def k1d():
    """``k(t, s) = (1/2) log|sin((t - s)/2)|``; phi = 1/4, psi = -(log 2)/2."""
    return KernelSpec(
        lambda t, s: 0.5 * np.log(np.abs(np.sin((t - s) / 2))),
        phi=lambda t, s: np.full(np.shape(t), 0.25),
        psi=lambda t, s: np.full(np.shape(t), -0.5 * np.log(2)),
        name="k1d",
    )


def smooth_cos():
    """The non-singular kernel ``cos(t - s)`` with trivial split."""
    return KernelSpec(
        lambda t, s: np.cos(t - s),
        phi=lambda t, s: np.zeros(np.shape(t)),
        psi=lambda t, s: np.cos(t - s),
        name="cos",
    )


def _cfie_geometry(curve, t, s):
    xt = curve.eval(t)
    xs = curve.eval(s)
    ds = curve.deriv(s)
    dx = xs - xt
    r = np.hypot(dx[..., 0], dx[..., 1])
    speed = np.hypot(ds[..., 0], ds[..., 1])
    # (speed * outward normal at s) . (x(s) - x(t))
    q = ds[..., 1] * dx[..., 0] - ds[..., 0] * dx[..., 1]
    return r, speed, q


def helm_cfie(curve, omega):
    """Parametrized combined-field kernel ``m(t, s)`` for exterior Dirichlet Helmholtz.

    ``m = (d/dn(s) - i omega) Phi(x(t), x(s)) |x'(s)|`` with
    ``Phi = (i/4) H0(omega |x - y|)``. The split follows the
    Martensen-Kussmaul decomposition; single- and double-layer parts are
    assembled separately.
    """
    if not omega > 0:
        raise ValueError(f"wavenumber must be positive, got {omega}")
    w = float(omega)
    four_pi = 4 * np.pi

    def func(t, s):
        r, speed, q = _cfie_geometry(curve, t, s)
        z = w * r
        single = 0.25j * specfun.hankel1_0(z) * speed
        double = -0.25j * w * specfun.hankel1_1(z) * q / r
        return double - 1j * w * single

    def phi(t, s):
        r, speed, q = _cfie_geometry(curve, t, s)
        z = w * r
        on = r == 0
        rr = np.where(on, 1.0, r)
        phi_single = -specfun.bessel_j0(z) * speed / four_pi
        phi_double = np.where(on, 0.0, w * q * specfun.bessel_j1(z) / (four_pi * rr))
        return phi_double - 1j * w * phi_single

    def psi(t, s):
        r, speed, q = _cfie_geometry(curve, t, s)
        on = r == 0
        rr = np.where(on, 1.0, r)
        z = w * rr
        half_sin = 2 * np.abs(np.sin((t - s) / 2))
        ell = np.log(w * rr / np.where(on, 1.0, 2 * half_sin))
        j0, j1 = specfun.bessel_j0(z), specfun.bessel_j1(z)
        psi_single = speed * (0.25j * j0 - 0.25 * specfun.y0_regular(z) - j0 * ell / (2 * np.pi))
        qr = q / rr
        psi_double = (-0.25j * w * qr * j1 + 0.25 * w * qr * specfun.y1_regular(z)
                      - qr / rr / (2 * np.pi) + w * qr * j1 * ell / (2 * np.pi))
        if np.any(on):
            kappa = curve.curvature(np.broadcast_to(t, r.shape))
            diag_single = speed * (0.25j - (EULER_GAMMA + np.log(w * speed / 2)) / (2 * np.pi))
            psi_single = np.where(on, diag_single, psi_single)
            psi_double = np.where(on, -kappa * speed / four_pi, psi_double)
        return psi_double - 1j * w * psi_single

    return KernelSpec(func, phi, psi, period=curve.period, name=f"cfie({curve.name}, omega={w:g})")


def point_source_field(omega, source, strength, target):
    """``strength * (i/4) H0(omega |target - source|)``."""
    d = np.linalg.norm(np.asarray(target, float) - np.asarray(source, float), axis=-1)
    if np.any(d == 0):
        raise ValueError("target coincides with the point source")
    return strength * 0.25j * specfun.hankel1_0(omega * d)


def helm_potential(curve, omega, density, nodes, weights, points):
    """Evaluate the combined-field representation at exterior points.

    Uses the plain underlying rule ``(nodes, weights)``; points must lie at
    least one node spacing away from the curve.
    """
    points = np.atleast_2d(np.asarray(points, float))
    density = np.asarray(density)
    src = curve.eval(nodes)
    ds = curve.deriv(nodes)
    spacing = np.max(np.linalg.norm(np.roll(src, -1, axis=0) - src, axis=1))
    dx = src[None, :, :] - points[:, None, :]
    r = np.hypot(dx[..., 0], dx[..., 1])
    if np.min(r) < spacing:
        raise ValueError(
            f"evaluation point within {np.min(r):.3g} of the curve (node spacing {spacing:.3g}); "
            "close evaluation is not supported")
    speed = np.hypot(ds[:, 0], ds[:, 1])
    q = ds[None, :, 1] * dx[..., 0] - ds[None, :, 0] * dx[..., 1]
    z = omega * r
    single = 0.25j * specfun.hankel1_0(z) * speed
    double = -0.25j * omega * specfun.hankel1_1(z) * q / r
    return (double - 1j * omega * single) @ (np.asarray(weights) * density)
