"""Bessel and Hankel functions of orders 0 and 1 for real positive argument.

J and Y themselves come from :mod:`scipy.special` (Cephes). What scipy does
not provide are the log-free parts of Y0 and Y1 used by the Kress split of
the Helmholtz kernels::

    Y0(x) = (2/pi) log(x/2) J0(x) + y0_regular(x)
    Y1(x) = (2/pi) log(x/2) J1(x) - 2/(pi x) + y1_regular(x)

Both regular parts are entire functions. They are summed from their power
series below ``SERIES_SWITCH`` and obtained by subtraction above it, where
the logarithm is no longer small and nothing cancels.
"""

import numpy as np
from scipy import special

EULER_GAMMA = 0.57721566490153286060651209008240243
SERIES_SWITCH = 2.0
_SERIES_TERMS = 24

# H_k and psi(k+1) + psi(k+2) tables for the series.
_k = np.arange(_SERIES_TERMS)
_harmonic = np.concatenate([[0.0], np.cumsum(1.0 / np.arange(1, _SERIES_TERMS))])
_psi_pair = 2 * (-EULER_GAMMA) + _harmonic + (_harmonic + 1.0 / (_k + 1))
_fact = np.array([float(np.prod(np.arange(1, k + 1))) for k in _k])


def _as_positive(x, name):
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError(f"{name} requires x > 0")
    return x


def bessel_j0(x):
    return special.j0(x)


def bessel_j1(x):
    return special.j1(x)


def bessel_y0(x):
    return special.y0(_as_positive(x, "bessel_y0"))


def bessel_y1(x):
    return special.y1(_as_positive(x, "bessel_y1"))


def hankel1_0(x):
    x = _as_positive(x, "hankel1_0")
    return special.j0(x) + 1j * special.y0(x)


def hankel1_1(x):
    x = _as_positive(x, "hankel1_1")
    return special.j1(x) + 1j * special.y1(x)


def _y0_series(x):
    q = (x / 2) ** 2
    k = _k[1:]
    terms = (-1.0) ** (k + 1) * _harmonic[1:] * q[..., None] ** k / _fact[1:] ** 2
    return (2 / np.pi) * (EULER_GAMMA * special.j0(x) + terms.sum(axis=-1))


def _y1_series(x):
    h = x / 2
    terms = (-1.0) ** _k * _psi_pair * h[..., None] ** (2 * _k + 1) / (_fact * _fact * (_k + 1))
    return -terms.sum(axis=-1) / np.pi


def y0_regular(x):
    """``Y0(x) - (2/pi) log(x/2) J0(x)``, smooth down to ``x = 0``."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) <= SERIES_SWITCH
    out = np.empty_like(x)
    out[small] = _y0_series(x[small])
    xl = x[~small]
    out[~small] = special.y0(xl) - (2 / np.pi) * np.log(xl / 2) * special.j0(xl)
    return out[()] if out.ndim == 0 else out


def y1_regular(x):
    """``Y1(x) - (2/pi) log(x/2) J1(x) + 2/(pi x)``, smooth down to ``x = 0``."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) <= SERIES_SWITCH
    out = np.empty_like(x)
    out[small] = _y1_series(x[small])
    xl = x[~small]
    out[~small] = (special.y1(xl) - (2 / np.pi) * np.log(xl / 2) * special.j1(xl)
                   + 2 / (np.pi * xl))
    return out[()] if out.ndim == 0 else out
