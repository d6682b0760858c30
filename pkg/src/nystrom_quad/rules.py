"""Underlying and corrected quadrature rules.

Contents
--------
* periodic trapezoid rule and composite Gauss-Legendre panels,
* Kapur-Rokhlin folded endpoint weights for a log singularity,
* Alpert hybrid Gauss-trapezoid correction nodes and weights,
* modified Gaussian (Kolm-Rokhlin type) tables read from a text file,
* barycentric Lagrange interpolation coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._tables import ALPERT_TABLES, KR_FOLDED_WEIGHTS


class TableError(ValueError):
    """Raised when a modified Gaussian table file is malformed."""


# ---------------------------------------------------------------------------
# underlying rules

def gauss_legendre(n, a=-1.0, b=1.0):
    """Nodes and weights of the ``n``-point Gauss-Legendre rule on ``[a, b]``.

    Roots of ``P_n`` are found by Newton iteration from Chebyshev-like
    initial guesses using the three-term recurrence.
    """
    if n < 1:
        raise ValueError("need at least one node")
    if not a < b:
        raise ValueError(f"degenerate interval [{a}, {b}]")
    i = np.arange(1, n + 1)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5))
    for _ in range(100):
        p0, p1 = np.ones_like(x), x.copy()
        for k in range(2, n + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        if n == 1:
            p0, p1 = np.ones_like(x), x
        dp = n * (x * p1 - p0) / (x**2 - 1)
        dx = p1 / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    # one more derivative evaluation at the converged roots
    p0, p1 = np.ones_like(x), x.copy()
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    if n == 1:
        p0 = np.ones_like(x)
    dp = n * (x * p1 - p0) / (x**2 - 1)
    w = 2 / ((1 - x**2) * dp**2)
    x = x[::-1]
    w = w[::-1]
    half = (b - a) / 2
    return a + half * (x + 1), half * w


@dataclass(frozen=True)
class PeriodicTrapezoid:
    """Equispaced nodes ``x_j = j T / N``, ``j = 1..N``, with equal weights."""

    n: int
    period: float = 2 * np.pi

    @property
    def h(self):
        return self.period / self.n

    @property
    def nodes(self):
        return self.h * np.arange(1, self.n + 1)

    @property
    def weights(self):
        return np.full(self.n, self.h)


@dataclass(frozen=True)
class PanelRule:
    """Composite Gauss-Legendre rule on ``npanels`` equal panels of ``[0, T]``."""

    npanels: int
    order: int = 10
    period: float = 2 * np.pi

    def __post_init__(self):
        if self.npanels < 3:
            raise ValueError("panel rule needs at least 3 panels")

    @property
    def n(self):
        return self.npanels * self.order

    @property
    def panel_length(self):
        return self.period / self.npanels

    @property
    def edges(self):
        return self.panel_length * np.arange(self.npanels + 1)

    @property
    def std_nodes(self):
        return gauss_legendre(self.order, 0.0, 1.0)[0]

    @property
    def std_weights(self):
        return gauss_legendre(self.order, 0.0, 1.0)[1]

    @property
    def nodes(self):
        return (self.edges[:-1, None] + self.panel_length * self.std_nodes).ravel()

    @property
    def weights(self):
        return np.tile(self.panel_length * self.std_weights, self.npanels)

    def panel_of(self, j):
        return np.asarray(j) // self.order


# ---------------------------------------------------------------------------
# interpolation

def lagrange_coeffs(nodes, x):
    """Coefficients ``c_j`` with ``sum_j c_j p(nodes[j]) = p(x)`` for deg p < len(nodes).

    ``x`` may be a scalar (returns shape ``(n,)``) or an array (returns
    ``x.shape + (n,)``). Evaluated in barycentric form.
    """
    nodes = np.asarray(nodes, dtype=float)
    diff = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(diff, 1.0)
    if np.any(diff == 0):
        raise ValueError("interpolation nodes must be distinct")
    lam = 1.0 / np.prod(diff, axis=1)
    x = np.asarray(x, dtype=float)
    d = x[..., None] - nodes
    # within rounding of a node: take the node's value (also avoids overflow in lam / d)
    exact = np.abs(d) <= np.finfo(float).eps * max(np.ptp(nodes), 1.0)
    first = np.cumsum(exact, axis=-1) == 1
    exact &= first
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        q = lam / d
        c = q / q.sum(axis=-1, keepdims=True)
    hit = exact.any(axis=-1)
    if np.any(hit):
        c[hit] = exact[hit].astype(float)
    return c


# ---------------------------------------------------------------------------
# Kapur-Rokhlin

@dataclass(frozen=True)
class KRCorrection:
    order: int
    weights: np.ndarray  # folded gamma_l + gamma_{-l}, l = 1..order


def kr_correction(order):
    if order not in KR_FOLDED_WEIGHTS:
        raise ValueError(f"Kapur-Rokhlin order must be one of {sorted(KR_FOLDED_WEIGHTS)}, got {order}")
    return KRCorrection(order, np.array(KR_FOLDED_WEIGHTS[order]))


def kr_periodic_rule(g, n, order, period=2 * np.pi):
    """Apply the corrected trapezoid rule to ``g`` with its log singularity at 0 (mod T)."""
    c = kr_correction(order).weights
    h = period / n
    j = np.arange(1, n)
    total = h * np.sum(g(j * h))
    l = np.arange(1, order + 1)
    total += h * np.sum(c * (g(l * h) + g(period - l * h)))
    return total


# ---------------------------------------------------------------------------
# Alpert

@dataclass(frozen=True)
class AlpertRule:
    order: int
    m: int
    a: int
    nodes: np.ndarray
    weights: np.ndarray


def alpert_rule(order):
    if order not in ALPERT_TABLES:
        raise ValueError(f"Alpert order must be one of {sorted(ALPERT_TABLES)}, got {order}")
    a, nodes, weights = ALPERT_TABLES[order]
    return AlpertRule(order, len(nodes), a, np.array(nodes), np.array(weights))


def alpert_periodic_rule(g, n, order, period=2 * np.pi):
    """Alpert rule for ``g`` on ``[0, T]`` with log singularities at both ends."""
    r = alpert_rule(order)
    h = period / n
    j = np.arange(r.a, n - r.a + 1)
    return h * (np.sum(g(j * h)) + np.sum(r.weights * (g(r.nodes * h) + g(period - r.nodes * h))))


# ---------------------------------------------------------------------------
# modified Gaussian tables

@dataclass(frozen=True)
class ModGaussTables:
    """Auxiliary rules on the standard panel ``[0, 1]``.

    ``same[i]`` holds ``(nodes, weights)`` for the target at the ``i``-th
    Gauss-Legendre node of the panel. ``adjacent[p]`` holds the rule for
    targets to the left of the panel at distance in ``[10**-p, 10**(1-p)]``;
    targets to the right use the mirrored rule.
    """

    n: int
    m: int
    mprime: int
    same: tuple
    adjacent: dict

    @staticmethod
    def bin_for_distance(d):
        """Ladder index ``p`` with ``10**-p <= d < 10**(1-p)``."""
        return max(1, int(math.ceil(-math.log10(d))))

    def adjacent_rule(self, d):
        p = self.bin_for_distance(d)
        if p not in self.adjacent:
            raise TableError(
                f"no adjacent-panel rule for distance {d:.3e} (bin ADJ {p}, "
                f"available {sorted(self.adjacent)})")
        return self.adjacent[p]


def _std_log_integral(t):
    """Integral of log|s - t| over s in [0, 1]."""
    def f(u):
        return u * math.log(u) - u if u > 0 else 0.0
    return f(abs(1 - t)) * (1 if t <= 1 else -1) + f(abs(t)) * (1 if t >= 0 else -1)


def validate_modgauss(tables, tol=1e-12):
    """Check node placement and exactness on constants for every record."""
    targets = gauss_legendre(tables.n, 0.0, 1.0)[0]
    checks = []
    for i, (y, v) in enumerate(tables.same):
        checks.append((f"SAME {i + 1}", y, v, [targets[i]]))
    for p, (y, v) in tables.adjacent.items():
        lo, hi = 10.0**-p, 10.0 ** (1 - p)
        checks.append((f"ADJ {p}", y, v, [-lo, -math.sqrt(lo * hi), -hi]))
    for label, y, v, ts in checks:
        if np.any(y <= 0) or np.any(y >= 1):
            raise TableError(f"{label}: node outside the open standard panel")
        if abs(v.sum() - 1) > tol:
            raise TableError(f"{label}: weights sum to {v.sum()!r}, expected 1")
        for t in ts:
            err = abs(np.dot(v, np.log(np.abs(y - t))) - _std_log_integral(t))
            if err > tol:
                raise TableError(f"{label}: log moment error {err:.2e} at target {t:.4g}")


def load_modgauss(path=None):
    """Read and validate a modified Gaussian table file.

    Format: ``#`` comments; header ``n m mprime bins``; then blocks that start
    with ``SAME i`` or ``ADJ p`` followed by ``node weight`` lines.
    Defaults to the table shipped with the package.
    """
    if path is None:
        path = Path(__file__).with_name("data") / "modgauss_n10.txt"
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise TableError(f"cannot read {path}: {exc}") from exc
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise TableError(f"{path}: empty table file")
    try:
        n, m, mprime, nbins = (int(v) for v in lines[0])
    except ValueError as exc:
        raise TableError(f"{path}: bad header {' '.join(lines[0])!r}") from exc

    blocks = []
    for tok in lines[1:]:
        if tok[0] in ("SAME", "ADJ"):
            if len(tok) != 2:
                raise TableError(f"{path}: bad record header {' '.join(tok)!r}")
            blocks.append((tok[0], int(tok[1]), []))
        else:
            if not blocks or len(tok) != 2:
                raise TableError(f"{path}: unexpected line {' '.join(tok)!r}")
            try:
                blocks[-1][2].append((float(tok[0]), float(tok[1])))
            except ValueError as exc:
                raise TableError(f"{path}: cannot parse {' '.join(tok)!r}") from exc

    same = {}
    adjacent = {}
    for kind, key, rows in blocks:
        arr = np.array(rows, dtype=float).reshape(-1, 2)
        want = m if kind == "SAME" else mprime
        if len(arr) != want:
            raise TableError(f"{path}: {kind} {key} has {len(arr)} nodes, expected {want}")
        if kind == "SAME":
            same[key] = (arr[:, 0].copy(), arr[:, 1].copy())
        else:
            adjacent[key] = (arr[:, 0].copy(), arr[:, 1].copy())
    if sorted(same) != list(range(1, n + 1)):
        raise TableError(f"{path}: expected SAME records 1..{n}, found {sorted(same)}")
    if len(adjacent) != nbins:
        raise TableError(f"{path}: header declares {nbins} ADJ bins, found {len(adjacent)}")

    tables = ModGaussTables(n, m, mprime, tuple(same[i] for i in range(1, n + 1)), adjacent)
    validate_modgauss(tables)
    return tables
