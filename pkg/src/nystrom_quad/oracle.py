"""Brute-force reference integrals for verifying the Nyström schemes.

Globally adaptive Gauss-Kronrod (7-15) integration with breakpoints at the
singular points. Used by tests and table validation only.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .rules import lagrange_coeffs

# 15-point Kronrod nodes on [-1, 1] (non-negative half) and weights;
# the 7-point Gauss rule uses the odd-indexed nodes.
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
KRONROD_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WK[:-1], _WK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[1::2] = np.concatenate([_WG[:-1], _WG[::-1]])


class IntegrationError(RuntimeError):
    """Raised when the requested tolerance cannot be met."""


@dataclass(frozen=True)
class AdaptiveConfig:
    tol: float = 1e-13
    max_depth: int = 60
    min_length: float = 1e-15
    max_panels: int = 20000


def _gk15(f, a, b):
    half = (b - a) / 2
    s = (a + b) / 2 + half * KRONROD_NODES
    fv = np.asarray(f(s))
    k = half * np.tensordot(KRONROD_WEIGHTS, fv, axes=(0, 0))
    g = half * np.tensordot(GAUSS_WEIGHTS, fv, axes=(0, 0))
    return k, float(np.max(np.abs(k - g)))


def adaptive_integrate(f, breakpoints, config=None):
    """Integrate ``f`` over ``[breakpoints[0], breakpoints[-1]]``.

    ``f`` maps an array of abscissae of shape ``(n,)`` to values of shape
    ``(n,)`` or ``(n, k)``. Interior breakpoints should sit on the
    singularities; the panel with the largest error estimate is bisected
    until the summed estimate meets ``config.tol``.

    Returns
    -------
    value : complex or ndarray
    err : float
        Summed Gauss/Kronrod difference over the final panels.
    """
    cfg = config or AdaptiveConfig()
    heap = []
    done_val, done_err = 0.0, 0.0
    count = 0
    for a, b in zip(breakpoints[:-1], breakpoints[1:]):
        v, e = _gk15(f, a, b)
        heapq.heappush(heap, (-e, count, a, b, 0, v))
        count += 1
    total_err = sum(-h[0] for h in heap)
    while heap and total_err > cfg.tol:
        neg_e, _, a, b, depth, v = heapq.heappop(heap)
        if depth >= cfg.max_depth or (b - a) < cfg.min_length or count > cfg.max_panels:
            # cannot refine further: freeze this panel
            done_val = done_val + v
            done_err += -neg_e
            if done_err > cfg.tol:
                raise IntegrationError(
                    f"tolerance {cfg.tol:.1e} not reached: estimate {total_err:.3e} at depth {depth}")
            continue
        m = (a + b) / 2
        total_err += neg_e
        for lo, hi in ((a, m), (m, b)):
            vv, ee = _gk15(f, lo, hi)
            total_err += ee
            heapq.heappush(heap, (-ee, count, lo, hi, depth + 1, vv))
            count += 1
    if total_err > cfg.tol:
        raise IntegrationError(f"tolerance {cfg.tol:.1e} not reached: estimate {total_err:.3e}")
    value = done_val + sum(h[5] for h in heap)
    return value, total_err


def adaptive_row_integral(kernel, target, sigma, config=None):
    """``int_0^T k(target, s) sigma(s) ds`` for a kernel singular at ``s = target``.

    The period is traversed as ``[target, target + T]`` so the singularity
    sits at both ends, where panels are refined dyadically.
    """
    T = kernel.period
    t = float(target)

    def f(s):
        return kernel.eval(np.full_like(s, t), s, check=False) * sigma(s)

    val, _ = adaptive_integrate(f, [t, t + T / 2, t + T], config)
    return val


def product_weights_bruteforce(kernel, target, panel, nodes, config=None):
    """``w_j = int_panel k(target, s) L_j(s) ds`` with ``L_j`` the Lagrange basis on ``nodes``.

    The panel is split at the target when the target lies inside it.
    """
    a, b = panel
    nodes = np.asarray(nodes, float)
    t = float(target)

    def f(s):
        return kernel.eval(np.full_like(s, t), s, check=False)[:, None] * lagrange_coeffs(nodes, s)

    bps = [a, t, b] if a < t < b else [a, b]
    val, _ = adaptive_integrate(f, bps, config)
    return val
