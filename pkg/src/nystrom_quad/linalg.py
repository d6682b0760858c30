"""Dense complex linear algebra for Nyström systems.

GMRES (unrestarted, modified Gram-Schmidt Arnoldi, Givens least squares) is
implemented here. Factorizations (LU, SVD, Hessenberg-QR eigenvalues) call
LAPACK through numpy/scipy.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla


class SolverError(RuntimeError):
    """Raised on singular systems or non-convergent factorizations."""


def as_matrix(M):
    """Return ``M`` as a square complex array, rejecting NaN/Inf entries."""
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M.astype(complex, copy=False)


def _rhs(M, rhs):
    b = np.asarray(rhs, dtype=complex).ravel()
    if b.shape[0] != M.shape[0]:
        raise ValueError(f"rhs length {b.shape[0]} does not match matrix size {M.shape[0]}")
    return b


def lu_solve(M, rhs):
    """Solve ``M x = rhs`` by LU with partial pivoting."""
    M = as_matrix(M)
    b = _rhs(M, rhs)
    with warnings.catch_warnings():
        # a zero pivot is reported below as SolverError
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(M, check_finite=False)
    if np.any(np.diag(lu) == 0):
        raise SolverError("matrix is singular (zero pivot)")
    return sla.lu_solve((lu, piv), b, check_finite=False)


@dataclass
class GmresReport:
    """Outcome of a GMRES run.

    ``history[k]`` is the relative residual after ``k`` iterations
    (``history[0] == 1``) as given by the Arnoldi recurrence;
    ``residual`` is the explicitly recomputed final relative residual.
    """

    iterations: int
    residual: float
    converged: bool
    history: list = field(default_factory=list)


def gmres(M, rhs, tol=1e-12, maxit=None):
    """Unrestarted GMRES from a zero initial guess.

    Parameters
    ----------
    M : (N, N) array_like
    rhs : (N,) array_like
    tol : float
        Relative residual ``||rhs - M x|| / ||rhs||`` at which to stop.
    maxit : int, optional
        Iteration cap; defaults to ``min(N, 500)``.

    Returns
    -------
    x : ndarray
    report : GmresReport
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    M = as_matrix(M)
    b = _rhs(M, rhs)
    n = M.shape[0]
    maxit = min(n, 500) if maxit is None else int(maxit)
    beta = np.linalg.norm(b)
    if beta == 0:
        return np.zeros(n, complex), GmresReport(0, 0.0, True, [0.0])

    V = np.zeros((maxit + 1, n), complex)
    H = np.zeros((maxit + 1, maxit), complex)
    cs = np.zeros(maxit)
    sn = np.zeros(maxit, complex)
    g = np.zeros(maxit + 1, complex)
    g[0] = beta
    V[0] = b / beta
    history = [1.0]
    k = 0
    breakdown = False
    while k < maxit:
        w = M @ V[k]
        for i in range(k + 1):
            H[i, k] = np.vdot(V[i], w)
            w = w - H[i, k] * V[i]
        hnext = np.linalg.norm(w)
        H[k + 1, k] = hnext
        breakdown = hnext <= 1e-14 * np.linalg.norm(H[: k + 2, k])
        if not breakdown:
            V[k + 1] = w / hnext
        # apply stored rotations, then build a new one to zero H[k+1, k]
        for i in range(k):
            t = cs[i] * H[i, k] + sn[i] * H[i + 1, k]
            H[i + 1, k] = -np.conj(sn[i]) * H[i, k] + cs[i] * H[i + 1, k]
            H[i, k] = t
        a, c = H[k, k], H[k + 1, k]
        r = np.hypot(abs(a), abs(c))
        if a == 0:
            cs[k], sn[k] = 0.0, 1.0
        else:
            cs[k] = abs(a) / r
            sn[k] = (a / abs(a)) * np.conj(c) / r
        H[k, k] = cs[k] * a + sn[k] * c
        H[k + 1, k] = 0.0
        g[k + 1] = -np.conj(sn[k]) * g[k]
        g[k] = cs[k] * g[k]
        k += 1
        history.append(float(abs(g[k]) / beta))
        if history[-1] <= tol or breakdown:
            x = _update(H, g, V, k)
            res = np.linalg.norm(b - M @ x) / beta
            # the recurrence can be optimistic by rounding; keep going if so
            if res <= tol or breakdown:
                break
    else:
        x = _update(H, g, V, k)
        res = np.linalg.norm(b - M @ x) / beta

    converged = bool(res <= tol)
    if breakdown and not converged:
        raise SolverError(f"GMRES breakdown at iteration {k} with residual {res:.3e}")
    return x, GmresReport(k, float(res), converged, history)


def _update(H, g, V, k):
    y = sla.solve_triangular(H[:k, :k], g[:k], check_finite=False)
    return V[:k].T @ y


def singular_values(M):
    return sla.svdvals(as_matrix(M), check_finite=False)


def cond2(M):
    """2-norm condition number ``s_max / s_min``; ``inf`` if ``M`` is singular."""
    s = singular_values(M)
    if s[-1] == 0:
        return float("inf")
    return float(s[0] / s[-1])


def eig(M):
    """All eigenvalues of ``M``."""
    M = as_matrix(M)
    try:
        return sla.eigvals(M, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"eigenvalue iteration failed: {exc}") from exc
