"""Regenerate the embedded Kapur-Rokhlin and Alpert tables.

Writes ``src/nystrom_quad/_tables.py`` and ``tools/ggq_log.json`` (the
log-weighted generalized Gaussian rules used by ``gen_modgauss.py``).

Kapur-Rokhlin folded weights solve a linear moment system. The nonlinear
Alpert and generalized Gaussian systems are solved by two continuations
in extended precision (80 digits):

1. exponent continuation: the conditions on ``x**(k(1+d))`` and the
   divided differences ``(x**(k(1+d)+d) - x**(k(1+d)))/d`` span polynomials
   of degree < 2m at ``d = 1`` (Gauss-Legendre) and tend to
   ``{x**k, x**k log x}`` as ``d -> 0``; exponents stay distinct, so the
   rule varies continuously;
2. moment continuation: from the log-GGQ for Lebesgue measure on
   ``[0, a - 1/2]`` to the Alpert end-correction moments.

Needs mpmath. Run: ``python tools/gen_rules.py`` (a few minutes).
"""

import json
import sys
from pathlib import Path

import mpmath as mp
import numpy as np

mp.mp.dps = 80
TOL = mp.mpf(10) ** -36
ROOT = Path(__file__).resolve().parent.parent

KR_ORDERS = (2, 6, 10)
ALPERT = {2: (1, 1), 6: (5, 3), 10: (10, 6), 16: (15, 10)}  # order -> (m, a)


def kr_folded(m):
    """Folded weights c_l, l = 1..m, for the trapezoid rule punctured at a log singularity."""
    half = m // 2
    A = mp.matrix(m, m)
    b = mp.matrix(m, 1)
    for k in range(half):
        for l in range(1, m + 1):
            A[k, l - 1] = mp.mpf(l) ** (2 * k)
            A[half + k, l - 1] = mp.mpf(l) ** (2 * k) * mp.log(l)
        b[k] = mp.mpf(1) / 2 if k == 0 else 0
        b[half + k] = mp.zeta(-2 * k, derivative=1)
    return [mp.mpf(v) for v in mp.lu_solve(A, b)]


def _system(x, w, d, Z, dZ, m):
    F = mp.matrix(2 * m, 1)
    J = mp.matrix(2 * m, 2 * m)
    for k in range(m):
        e = k * (1 + mp.mpf(d))
        f = [x[p] ** e for p in range(m)]
        df = [e * x[p] ** (e - 1) if k else 0 for p in range(m)]
        F[k] = mp.fsum(w[p] * f[p] for p in range(m)) - Z(e)
        if d == 0:
            g = [x[p] ** k * mp.log(x[p]) for p in range(m)]
            dg = [(k * x[p] ** (k - 1) * mp.log(x[p]) if k else 0) + x[p] ** (k - 1) for p in range(m)]
            rhs = dZ(mp.mpf(k))
        else:
            g = [(x[p] ** (e + d) - f[p]) / d for p in range(m)]
            dg = [((e + d) * x[p] ** (e + d - 1) - df[p]) / d for p in range(m)]
            rhs = (Z(e + d) - Z(e)) / d
        F[m + k] = mp.fsum(w[p] * g[p] for p in range(m)) - rhs
        for p in range(m):
            J[k, p] = w[p] * df[p]
            J[k, m + p] = f[p]
            J[m + k, p] = w[p] * dg[p]
            J[m + k, m + p] = g[p]
    return F, J


def _newton(x, w, d, Z, dZ, m, maxit=60):
    F, J = _system(x, w, d, Z, dZ, m)
    for _ in range(maxit):
        if mp.norm(F) < TOL:
            return x, w
        step = mp.lu_solve(J, F)
        t = mp.mpf(1)
        while True:
            xn = [x[p] - t * step[p] for p in range(m)]
            wn = [w[p] - t * step[m + p] for p in range(m)]
            if all(v > 0 for v in xn):
                Fn, Jn = _system(xn, wn, d, Z, dZ, m)
                if mp.norm(Fn) < mp.norm(F):
                    break
            t /= 2
            if t < 1e-8:
                raise ArithmeticError("line search failed")
        x, w, F, J = xn, wn, Fn, Jn
    if mp.norm(F) < TOL:
        return x, w
    raise ArithmeticError(f"Newton did not converge at d={mp.nstr(d, 5)}")


def log_ggq(m):
    """m-point rule on [0, 1] exact for x**k and x**k log x, k < m."""
    Z = lambda s: 1 / (s + 1)
    dZ = lambda s: -1 / (s + 1) ** 2
    g, gw = np.polynomial.legendre.leggauss(m)
    x = [mp.mpf((v + 1) / 2) for v in g]
    w = [mp.mpf(v / 2) for v in gw]
    d = mp.mpf(1)
    x, w = _newton(x, w, d, Z, dZ, m)
    step = d / 20
    while d > 0:
        dn = d - step if d - step > mp.mpf(10) ** -12 else mp.mpf(0)
        try:
            xn, wn = _newton(x, w, dn, Z, dZ, m)
        except (ArithmeticError, ZeroDivisionError):
            step /= 2
            if step < 1e-10:
                raise
            continue
        x, w, d = xn, wn, dn
        step = min(step * 1.5, d / 2)
    return _sorted(x, w)


def alpert(order):
    """Alpert end-correction nodes and weights (grid units) for a log singularity."""
    m, a = ALPERT[order]
    A = mp.mpf(a) - mp.mpf(1) / 2
    x, w = log_ggq(m)
    x = [A * v for v in x]
    w = [A * v for v in w]
    Z0 = lambda s: A ** (s + 1) / (s + 1)
    dZ0 = lambda s: A ** (s + 1) * (mp.log(A) / (s + 1) - 1 / (s + 1) ** 2)
    Z1 = lambda s: mp.fsum(mp.mpf(j) ** s for j in range(1, a)) - mp.zeta(-s)
    dZ1 = lambda s: (mp.fsum(mp.mpf(j) ** s * mp.log(j) for j in range(1, a))
                     + mp.zeta(-s, derivative=1))
    lam, step = mp.mpf(0), mp.mpf(1) / 20
    while lam < 1:
        ln = min(lam + step, mp.mpf(1))
        Z = lambda s: (1 - ln) * Z0(s) + ln * Z1(s)
        dZ = lambda s: (1 - ln) * dZ0(s) + ln * dZ1(s)
        try:
            x, w = _newton(x, w, 0, Z, dZ, m)
        except (ArithmeticError, ZeroDivisionError):
            step /= 2
            if step < 1e-10:
                raise
            continue
        lam = ln
        step *= 1.5
    x, w = _sorted(x, w)
    if min(w) <= 0:
        raise ArithmeticError(f"Alpert order {order}: non-positive weight")
    return a, x, w


def _sorted(x, w):
    order = sorted(range(len(x)), key=lambda p: x[p])
    return [x[p] for p in order], [w[p] for p in order]


def _fmt(vals, indent):
    return ",\n".join(indent + mp.nstr(v, 20, min_fixed=-3, max_fixed=3) for v in vals)


def main():
    out = ['"""Embedded correction tables (generated by tools/gen_rules.py; do not edit).',
           "",
           "KR_FOLDED_WEIGHTS[m]: folded Kapur-Rokhlin weights gamma_l + gamma_-l, l = 1..m.",
           "ALPERT_TABLES[l]: (a, nodes, weights) for the log-singular Alpert rule of order l.",
           '"""', "", "KR_FOLDED_WEIGHTS = {"]
    for m in KR_ORDERS:
        out += [f"    {m}: [", _fmt(kr_folded(m), " " * 8) + ",", "    ],"]
    out += ["}", "", "ALPERT_TABLES = {"]
    for order in ALPERT:
        print(f"alpert {order}", file=sys.stderr)
        a, x, w = alpert(order)
        out += [f"    {order}: (", f"        {a},", "        [", _fmt(x, " " * 12) + ",", "        ],",
                "        [", _fmt(w, " " * 12) + ",", "        ],", "    ),"]
    out += ["}", ""]
    (ROOT / "src" / "nystrom_quad" / "_tables.py").write_text("\n".join(out))

    print("log-GGQ 10", file=sys.stderr)
    x, w = log_ggq(10)
    (ROOT / "tools" / "ggq_log.json").write_text(json.dumps(
        {"10": {"nodes": [mp.nstr(v, 25) for v in x], "weights": [mp.nstr(v, 25) for v in w]}}, indent=1))


if __name__ == "__main__":
    main()
