"""Dense Nyström matrices for log-singular periodic kernels.

Every builder returns a :class:`NystromSystem` whose matrix ``A`` satisfies
``(A sigma)_i ~ int_0^T k(x_i, s) sigma(s) ds`` at the nodes ``x_i``.
Index conventions are 0-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rules
from .rules import PanelRule, lagrange_coeffs


@dataclass(frozen=True)
class NystromSystem:
    """Nodes, underlying weights and Nyström matrix of one discretization.

    ``A`` is read-only. ``weights`` are the plain (uncorrected) weights of
    the underlying rule, so ``A[i, j] - k(x_i, x_j) * weights[j]`` is the
    correction at entry ``(i, j)``.
    """

    scheme: str
    nodes: np.ndarray
    weights: np.ndarray
    A: np.ndarray
    period: float

    def __post_init__(self):
        for arr in (self.nodes, self.weights, self.A):
            arr.flags.writeable = False

    @property
    def n(self):
        return len(self.nodes)


def offset(i, j, n):
    """Signed index offset ``j - i`` reduced to ``(-n/2, n/2]``."""
    d = np.mod(np.asarray(j) - np.asarray(i), n)
    return np.where(d > n / 2, d - n, d)


def _eval_offdiag(kernel, x):
    """Matrix ``k(x_i, x_j)`` with zeros on the diagonal."""
    n = len(x)
    K = np.zeros((n, n), complex)
    off = ~np.eye(n, dtype=bool)
    T, S = np.meshgrid(x, x, indexing="ij")
    K[off] = kernel.eval(T[off], S[off])
    return K


def build_kr(kernel, n, order, period=None):
    """Kapur-Rokhlin corrected trapezoid matrix of order 2, 6 or 10."""
    corr = rules.kr_correction(order)
    m = corr.order
    if n <= 4 * m:
        raise ValueError(f"Kapur-Rokhlin order {m} needs N > {4 * m}, got {n}")
    rule = rules.PeriodicTrapezoid(n, kernel.period if period is None else period)
    x, h = rule.nodes, rule.h
    idx = np.arange(n)
    ell = np.abs(offset(idx[:, None], idx[None, :], n))
    factor = np.ones((n, n))
    band = (ell >= 1) & (ell <= m)
    factor[band] += corr.weights[ell[band] - 1]
    A = h * factor * _eval_offdiag(kernel, x)
    return NystromSystem(f"kr{order}", x, rule.weights, A, rule.period)


def build_alpert(kernel, n, order, period=None):
    """Alpert hybrid Gauss-trapezoid matrix of order 2, 6, 10 or 16."""
    rule = rules.alpert_rule(order)
    M = order + 3
    if n <= 2 * (rule.a + rule.m + M):
        raise ValueError(f"Alpert order {order} needs N > {2 * (rule.a + rule.m + M)}, got {n}")
    trap = rules.PeriodicTrapezoid(n, kernel.period if period is None else period)
    x, h = trap.nodes, trap.h
    idx = np.arange(n)

    K = _eval_offdiag(kernel, x)
    ell = np.abs(offset(idx[:, None], idx[None, :], n))
    A = np.where(ell >= rule.a, h * K, 0.0)

    # auxiliary nodes on both sides of every target, folded chi -> -chi
    chi = np.concatenate([rule.nodes, -rule.nodes])
    wts = np.concatenate([rule.weights, rule.weights])
    for c, w in zip(chi, wts):
        stencil = np.floor(c - M / 2) + np.arange(1, M + 1)
        coef = lagrange_coeffs(stencil, c)
        kv = kernel.eval(x, x + c * h) * (h * w)
        cols = (idx[:, None] + stencil.astype(int)[None, :]) % n
        np.add.at(A, (np.repeat(idx, M), cols.ravel()), (kv[:, None] * coef[None, :]).ravel())
    return NystromSystem(f"alpert{order}", x, trap.weights, A, trap.period)


def build_modgauss(kernel, panels, tables):
    """Panel Gauss-Legendre matrix with modified Gaussian near-field rules.

    Parameters
    ----------
    kernel : KernelSpec
    panels : PanelRule or int
        Panel rule, or a panel count for the 10-point default.
    tables : ModGaussTables
    """
    if not isinstance(panels, PanelRule):
        panels = PanelRule(int(panels), tables.n, kernel.period)
    if panels.order != tables.n:
        raise ValueError(f"panel order {panels.order} does not match table order {tables.n}")
    q, L, T = panels.order, panels.panel_length, panels.period
    npan = panels.npanels
    x, wts = panels.nodes, panels.weights
    tau = panels.std_nodes
    n = panels.n

    A = np.zeros((n, n), complex)
    pan = np.arange(n) // q
    near = np.abs(offset(pan[:, None], pan[None, :], npan)) <= 1
    T_, S_ = np.meshgrid(x, x, indexing="ij")
    A[~near] = kernel.eval(T_[~near], S_[~near]) * np.broadcast_to(wts, (n, n))[~near]

    # same-panel and adjacent-panel blocks for each local target position
    nbr = {}
    for side in (-1, 1):
        d = tau if side == -1 else 1 - tau
        nbr[side] = [tables.adjacent_rule(di) for di in d]
    for loc in range(q):
        y, v = tables.same[loc]
        blocks = [(0, y, v)]
        for side in (-1, 1):
            ya, va = nbr[side][loc]
            # stored rules assume the target sits left of the panel
            blocks.append((side, ya if side == 1 else 1 - ya, va))
        coefs = [lagrange_coeffs(tau, yb) for _, yb, _ in blocks]
        for p in range(npan):
            i = p * q + loc
            for (side, yb, vb), cb in zip(blocks, coefs):
                ps = (p + side) % npan
                s = np.mod(ps * L + L * yb, T)
                kv = kernel.eval(np.full_like(s, x[i]), s) * (L * vb)
                A[i, ps * q:(ps + 1) * q] += kv @ cb
    return NystromSystem(f"modgauss{npan}", x, wts, A, T)


def kress_weights(n):
    """Product-quadrature weights ``R_j`` for ``log(4 sin^2((t - s)/2))``, ``j = 0..N-1``.

    ``R_j`` pairs the target with the node ``j`` grid steps away.
    """
    if n % 2:
        raise ValueError(f"Kress weights need an even N, got {n}")
    half = n // 2
    t = 2 * np.pi * np.arange(n) / n
    k = np.arange(1, half)
    R = np.cos(np.outer(t, k)) @ (1.0 / k) + np.cos(half * t) / n
    return -4 * np.pi / n * R


def build_kress(kernel, n):
    """Kress spectral product-quadrature matrix ``R o Phi + h Psi``."""
    if not kernel.has_split:
        raise ValueError(f"{kernel.name}: Kress quadrature needs the phi/psi split")
    if n % 2:
        raise ValueError(f"Kress quadrature needs an even N, got {n}")
    if not np.isclose(kernel.period, 2 * np.pi):
        raise ValueError("Kress quadrature is set up for period 2*pi")
    trap = rules.PeriodicTrapezoid(n, 2 * np.pi)
    x, h = trap.nodes, trap.h
    R = kress_weights(n)
    idx = np.arange(n)
    circ = R[np.mod(idx[None, :] - idx[:, None], n)]
    T_, S_ = np.meshgrid(x, x, indexing="ij")
    A = circ * kernel.phi(T_, S_) + h * kernel.psi(T_, S_)
    return NystromSystem("kress", x, trap.weights, A.astype(complex), trap.period)


def assemble_system(system, identity_coefficient=1.0):
    """Return ``c I + A`` as a fresh array."""
    M = np.array(system.A, dtype=complex)
    M[np.diag_indices_from(M)] += identity_coefficient
    return M


def panel_to_uniform(values, panels, n):
    """Interpolate panel-node samples onto the uniform grid ``x_j = j T / n``, ``j = 1..n``.

    Each target uses the degree ``order - 1`` interpolant of the panel it
    falls in.
    """
    values = np.asarray(values)
    q, L = panels.order, panels.panel_length
    t = panels.period * np.arange(1, n + 1) / n
    p = np.minimum((t // L).astype(int), panels.npanels - 1)
    loc = t / L - p
    coef = lagrange_coeffs(panels.std_nodes, loc)
    blocks = values.reshape(panels.npanels, q)
    return np.einsum("ij,ij->i", coef, blocks[p])


def build(scheme, kernel, n, tables=None):
    """Dispatch on a scheme tag: ``kr2/6/10``, ``alpert2/6/10/16``, ``modgauss``, ``kress``.

    For ``modgauss`` ``n`` is the total node count and must be a multiple
    of the table order.
    """
    if scheme == "kress":
        return build_kress(kernel, n)
    if scheme in ("kr2", "kr6", "kr10"):
        return build_kr(kernel, n, int(scheme[2:]))
    if scheme in ("alpert2", "alpert6", "alpert10", "alpert16"):
        return build_alpert(kernel, n, int(scheme[6:]))
    if scheme == "modgauss":
        if tables is None:
            tables = rules.load_modgauss()
        if n % tables.n:
            raise ValueError(f"modified Gaussian needs N divisible by {tables.n}, got {n}")
        return build_modgauss(kernel, PanelRule(n // tables.n, tables.n, kernel.period), tables)
    raise ValueError(f"unknown scheme {scheme!r}")


SCHEMES = ("kr2", "kr6", "kr10", "alpert2", "alpert6", "alpert10", "alpert16", "modgauss", "kress")
