"""Smooth closed planar curves given by periodic parametrizations.

A curve maps a parameter ``t`` in ``[0, T)`` to a point in the plane and
provides analytic first and second derivatives. All evaluators broadcast
over numpy arrays; positions are returned with a trailing axis of length 2.
"""

from __future__ import annotations

import numpy as np


class Curve:
    """Periodic parametrized curve with analytic derivatives.

    Parameters
    ----------
    eval, deriv, deriv2 : callable
        Functions of the parameter returning arrays of shape ``t.shape + (2,)``.
    period : float
        Parameter period ``T``.
    name : str
        Label used in reports.
    """

    def __init__(self, eval, deriv, deriv2, period=2 * np.pi, name="curve"):
        if period <= 0:
            raise ValueError("period must be positive")
        self._eval = eval
        self._deriv = deriv
        self._deriv2 = deriv2
        self.period = float(period)
        self.name = name

    def eval(self, t):
        return self._eval(np.asarray(t, dtype=float))

    def deriv(self, t):
        return self._deriv(np.asarray(t, dtype=float))

    def deriv2(self, t):
        return self._deriv2(np.asarray(t, dtype=float))

    def speed(self, t):
        d = self.deriv(t)
        return np.hypot(d[..., 0], d[..., 1])

    def normal(self, t):
        """Unit normal, outward for counterclockwise curves."""
        d = self.deriv(t)
        sp = np.hypot(d[..., 0], d[..., 1])
        return np.stack([d[..., 1] / sp, -d[..., 0] / sp], axis=-1)

    def curvature(self, t):
        d = self.deriv(t)
        dd = self.deriv2(t)
        sp = np.hypot(d[..., 0], d[..., 1])
        return (d[..., 0] * dd[..., 1] - d[..., 1] * dd[..., 0]) / sp**3

    def __repr__(self):
        return f"Curve({self.name!r}, period={self.period})"


def polar_curve(r, dr, ddr, name="polar"):
    """Curve ``(r(t) cos t, r(t) sin t)`` from a radial function and its derivatives."""

    def ev(t):
        rt = r(t)
        return np.stack([rt * np.cos(t), rt * np.sin(t)], axis=-1)

    def d1(t):
        rt, r1 = r(t), dr(t)
        c, s = np.cos(t), np.sin(t)
        return np.stack([r1 * c - rt * s, r1 * s + rt * c], axis=-1)

    def d2(t):
        rt, r1, r2 = r(t), dr(t), ddr(t)
        c, s = np.cos(t), np.sin(t)
        return np.stack([r2 * c - 2 * r1 * s - rt * c,
                         r2 * s + 2 * r1 * c - rt * s], axis=-1)

    return Curve(ev, d1, d2, period=2 * np.pi, name=name)


def starfish(r0=9 / 20, amp=1 / 9, arms=5):
    """Five-armed starfish with radial function ``r0 - amp*cos(arms*t)``."""
    return polar_curve(
        lambda t: r0 - amp * np.cos(arms * t),
        lambda t: amp * arms * np.sin(arms * t),
        lambda t: amp * arms**2 * np.cos(arms * t),
        name="starfish",
    )


def circle(radius=1.0):
    if not radius > 0:
        raise ValueError(f"circle radius must be positive, got {radius}")
    return polar_curve(
        lambda t: radius + 0 * t,
        lambda t: 0 * t,
        lambda t: 0 * t,
        name=f"circle({radius:g})",
    )


def curve_frame(curve, t):
    """Return ``(position, speed, unit_normal, curvature)`` at parameter ``t``."""
    return curve.eval(t), curve.speed(t), curve.normal(t), curve.curvature(t)


def arclength(curve, n):
    """Perimeter by the ``n``-point periodic trapezoid rule."""
    t = curve.period * np.arange(1, n + 1) / n
    return curve.period / n * np.sum(curve.speed(t))
