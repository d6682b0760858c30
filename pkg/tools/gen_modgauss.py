"""Build ``src/nystrom_quad/data/modgauss_n10.txt``.

Same-panel rules (20 nodes): the panel ``[0, 1]`` is split at the target
Gauss-Legendre node and each side gets the 10-point log-weighted
generalized Gaussian rule from ``tools/ggq_log.json`` (run
``gen_rules.py`` first), so ``p(y) + q(y) log|y - t|`` is integrated
exactly for polynomials of degree < 10.

Adjacent-panel rules (24 nodes) for a target at distance ``d`` left of the
panel, ``d`` in ``[10**-p, 10**(1-p)]``: nodes are fitted by
Levenberg-Marquardt with the weights eliminated by least squares, over
Legendre polynomials of degree < 30 and Legendre(degree < 14) times
``log(y + d)`` at 25 log-Chebyshev samples of ``d`` (bin edges and the
geometric midpoint included).

Needs mpmath and scipy. Run: ``python tools/gen_modgauss.py``.
"""

import json
from pathlib import Path

import mpmath as mp
import numpy as np
from numpy.polynomial import legendre as L
from scipy.optimize import least_squares

mp.mp.dps = 50
ROOT = Path(__file__).resolve().parent.parent
N, M_SAME, M_ADJ = 10, 20, 24
BINS = (1, 2)
K_POLY, K_LOG, N_DIST = 30, 14, 25


def same_rules():
    g = json.loads((ROOT / "tools" / "ggq_log.json").read_text())["10"]
    x = np.array([float(v) for v in g["nodes"]])
    w = np.array([float(v) for v in g["weights"]])
    t, _ = np.polynomial.legendre.leggauss(N)
    t = (t + 1) / 2
    rules = []
    for ti in t:
        y = np.concatenate([ti - ti * x[::-1], ti + (1 - ti) * x])
        v = np.concatenate([ti * w[::-1], (1 - ti) * w])
        rules.append((y, v))
    return rules


def _legendre_monomial(k):
    """Coefficients of P_k(2y - 1) in powers of y, exact rationals."""
    c = [mp.mpf(0)] * (k + 1)
    for j in range(k + 1):
        c[j] = (-1) ** (k + j) * mp.binomial(k, j) * mp.binomial(k + j, j)
    return c


def log_moment(k, d):
    """int_0^1 P_k(2y - 1) log(y + d) dy in extended precision."""
    d = mp.mpf(d)

    def F(j, u):  # antiderivative of u**j log u
        return u ** (j + 1) * (mp.log(u) / (j + 1) - mp.mpf(1) / (j + 1) ** 2)

    total = mp.mpf(0)
    for j, cj in enumerate(_legendre_monomial(k)):
        # int_0^1 y**j log(y + d) dy via u = y + d
        s = mp.fsum(mp.binomial(j, i) * (-d) ** (j - i) * (F(i, 1 + d) - F(i, d)) for i in range(j + 1))
        total += cj * s
    return float(total)


def distances(p):
    lo, hi = np.log(10.0 ** -p), np.log(10.0 ** (1 - p))
    u = np.cos(np.pi * np.arange(N_DIST) / (N_DIST - 1))
    return np.exp((lo + hi) / 2 + (hi - lo) / 2 * u)


def adjacent_rule(p):
    ds = distances(p)
    b = np.concatenate([[1.0], np.zeros(K_POLY - 1),
                        [log_moment(k, d) for d in ds for k in range(K_LOG)]])

    def design(y):
        P = np.array([L.legval(2 * y - 1, [0] * k + [1]) for k in range(K_POLY)])
        rows = [P]
        for d in ds:
            rows.append(P[:K_LOG] * np.log(y + d))
        return np.vstack(rows)

    def resid(z):
        A = design(1 / (1 + np.exp(-z)))
        w, *_ = np.linalg.lstsq(A, b, rcond=None)
        return A @ w - b

    g, _ = np.polynomial.legendre.leggauss(M_ADJ)
    best = None
    for power in (1.0, 1.4, 1.8, 2.2):
        y0 = ((g + 1) / 2) ** power
        r = least_squares(resid, np.log(y0 / (1 - y0)), method="lm",
                          xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=4000)
        err = np.max(np.abs(r.fun))
        if best is None or err < best[0]:
            best = (err, r.x)
    y = np.sort(1 / (1 + np.exp(-best[1])))
    w, *_ = np.linalg.lstsq(design(y), b, rcond=None)
    print(f"ADJ {p}: max moment residual {best[0]:.2e}, min weight {w.min():.3e}")
    return y, w


def main():
    lines = [
        "# Modified Gaussian auxiliary rules on the standard panel [0, 1]",
        "# (generated by tools/gen_modgauss.py).",
        "# SAME i: target at the i-th 10-point Gauss-Legendre node of the panel.",
        "# ADJ p: target left of the panel at distance in [10^-p, 10^(1-p)];",
        "#        targets right of the panel use the mirrored rule 1 - y.",
        "# header: n m mprime bins",
        f"{N} {M_SAME} {M_ADJ} {len(BINS)}",
    ]
    for i, (y, v) in enumerate(same_rules(), 1):
        lines.append(f"SAME {i}")
        lines += [f"{a:.17e} {c:.17e}" for a, c in zip(y, v)]
    for p in BINS:
        y, v = adjacent_rule(p)
        lines.append(f"ADJ {p}")
        lines += [f"{a:.17e} {c:.17e}" for a, c in zip(y, v)]
    out = ROOT / "src" / "nystrom_quad" / "data" / "modgauss_n10.txt"
    out.write_text("\n".join(lines) + "\n")
    print(out)


if __name__ == "__main__":
    main()
