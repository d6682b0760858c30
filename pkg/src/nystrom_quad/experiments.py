"""Convergence, conditioning and spectrum studies behind the ``nq`` CLI.

Each study returns an :class:`ExperimentReport` of ``(scheme, N, metric,
value)`` rows.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import geom, kernels, linalg, nystrom, rules

log = logging.getLogger(__name__)

ALL_SCHEMES = nystrom.SCHEMES
REFERENCE_N = 2560
HIGH_FREQUENCY = 100.0  # omega above this needs an explicit opt-in


@dataclass
class ExperimentConfig:
    name: str
    schemes: tuple = ALL_SCHEMES
    ns: tuple = (20, 40, 80, 160, 320, 640, 1280)
    omega: float = 2.8
    seed: int = 0
    out: Path | None = None
    tables: Path | None = None
    n_sources: int = 5
    allow_high_frequency: bool = False


@dataclass
class ExperimentReport:
    name: str
    rows: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    spectra: dict = field(default_factory=dict)

    def add(self, scheme, n, metric, value):
        self.rows.append((scheme, int(n), metric, float(value)))

    def get(self, scheme, n, metric):
        for s, nn, m, v in self.rows:
            if (s, nn, m) == (scheme, n, metric):
                return v
        raise KeyError((scheme, n, metric))

    def series(self, scheme, metric):
        """``(N, value)`` arrays for one scheme and metric, sorted by N."""
        pts = sorted((nn, v) for s, nn, m, v in self.rows if s == scheme and m == metric)
        return np.array([p[0] for p in pts]), np.array([p[1] for p in pts])

    def to_csv(self):
        buf = io.StringIO()
        for k in sorted(self.meta):
            buf.write(f"# {k}={self.meta[k]}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["scheme", "N", "metric", "value"])
        for row in self.rows:
            w.writerow([row[0], row[1], row[2], repr(row[3])])
        return buf.getvalue()

    def spectrum_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["scheme", "re", "im"])
        for scheme, lam in self.spectra.items():
            for z in lam:
                w.writerow([scheme, repr(float(z.real)), repr(float(z.imag))])
        return buf.getvalue()

    def write(self, out):
        out = Path(out)
        out.mkdir(parents=True, exist_ok=True)
        paths = [out / f"{self.name}.csv"]
        paths[0].write_text(self.to_csv())
        if self.spectra:
            paths.append(out / f"{self.name}_eigs.csv")
            paths[1].write_text(self.spectrum_csv())
        return paths


def _version():
    try:
        from importlib.metadata import version
        return version("artifact")
    except Exception:
        return "unknown"


def _tables(config):
    return rules.load_modgauss(config.tables) if config.tables else rules.load_modgauss()


def _build(scheme, kernel, n, tables):
    return nystrom.build(scheme, kernel, n, tables=tables)


def _uniform_values(system, sigma, tables):
    """Density on the uniform grid of size N (panel solutions are interpolated)."""
    if system.scheme.startswith("modgauss"):
        panels = rules.PanelRule(system.n // tables.n, tables.n, system.period)
        return nystrom.panel_to_uniform(sigma, panels, system.n)
    return sigma


# ---------------------------------------------------------------------------
# 1D log kernel

def rhs_1d(x):
    return np.sin(3 * x) * np.exp(np.cos(5 * x))


def solve_1d(scheme, n, tables=None):
    """Solve ``(I + A) sigma = f`` for the 1D kernel; returns ``(system, sigma)``."""
    sys_ = _build(scheme, kernels.k1d(), n, tables)
    sigma = linalg.lu_solve(nystrom.assemble_system(sys_, 1.0), rhs_1d(sys_.nodes))
    return sys_, sigma


def reference_1d(n=REFERENCE_N):
    """Kress solution of the 1D test on ``x_j = 2 pi j / n``."""
    return solve_1d("kress", n)[1]


def converge1d(config, reference=None):
    """Relative sup-norm error of the 1D test versus a Kress reference at N=2560."""
    tables = _tables(config) if "modgauss" in config.schemes else None
    ref = reference_1d() if reference is None else reference
    scale = np.max(np.abs(ref))
    rep = ExperimentReport("converge1d", meta={"reference_N": len(ref), "version": _version()})
    rep.add("kress", len(ref), "sup_norm", scale)
    for scheme in config.schemes:
        for n in config.ns:
            if len(ref) % n:
                log.warning("skipping %s N=%d: does not divide the reference grid", scheme, n)
                continue
            try:
                sys_, sigma = solve_1d(scheme, n, tables)
            except ValueError as exc:
                log.info("skipping %s N=%d: %s", scheme, n, exc)
                continue
            u = _uniform_values(sys_, sigma, tables)
            err = np.max(np.abs(u - ref[len(ref) // n - 1::len(ref) // n])) / scale
            rep.add(scheme, n, "rel_error", err)
    return rep


# ---------------------------------------------------------------------------
# 2D Helmholtz

@dataclass(frozen=True)
class HelmholtzSetup:
    curve: geom.Curve
    omega: float
    sources: np.ndarray
    strengths: np.ndarray
    points: np.ndarray

    def exact(self, x):
        x = np.atleast_2d(x)
        u = np.zeros(len(x), complex)
        for src, q in zip(self.sources, self.strengths):
            u += kernels.point_source_field(self.omega, src, q, x)
        return u


def helmholtz_setup(omega, seed=0, n_sources=5, n_points=20, radius=2.0):
    """Starfish with interior point sources and an exterior measurement ring."""
    curve = geom.starfish()
    theta = 2 * np.pi * np.arange(n_sources) / 5 + 0.1
    rad = 0.5 * (9 / 20 - np.cos(5 * theta) / 9)
    sources = np.column_stack([rad * np.cos(theta), rad * np.sin(theta)])
    rng = np.random.default_rng(seed)
    strengths = rng.uniform(-1, 1, n_sources) + 1j * rng.uniform(-1, 1, n_sources)
    phi = 2 * np.pi * np.arange(n_points) / n_points
    points = radius * np.column_stack([np.cos(phi), np.sin(phi)])
    return HelmholtzSetup(curve, float(omega), sources, strengths, points)


def solve_helmholtz(setup, scheme, n, tables=None, method="lu"):
    """Solve ``(I/2 + A) sigma = f`` for Dirichlet data from the point sources.

    Returns ``(system, sigma, u)`` with ``u`` the field at the measurement points.
    """
    kern = kernels.helm_cfie(setup.curve, setup.omega)
    sys_ = _build(scheme, kern, n, tables)
    M = nystrom.assemble_system(sys_, 0.5)
    f = setup.exact(setup.curve.eval(sys_.nodes))
    if method == "gmres":
        sigma, _ = linalg.gmres(M, f, tol=1e-12)
    else:
        sigma = linalg.lu_solve(M, f)
    u = kernels.helm_potential(setup.curve, setup.omega, sigma, sys_.nodes, sys_.weights, setup.points)
    return sys_, sigma, u


def field_error(u, exact):
    scale = np.max(np.abs(exact))
    if scale == 0:
        return float(np.max(np.abs(u)))
    return float(np.max(np.abs(u - exact)) / scale)


def helmholtz(config):
    """Relative error at the measurement ring for each scheme and N."""
    if config.omega > HIGH_FREQUENCY and not config.allow_high_frequency:
        raise ValueError(f"omega={config.omega:g} is a long dense sweep; pass --high-frequency to run it")
    tables = _tables(config) if "modgauss" in config.schemes else None
    setup = helmholtz_setup(config.omega, config.seed, config.n_sources)
    exact = setup.exact(setup.points)
    rep = ExperimentReport("helmholtz", meta={"omega": config.omega, "seed": config.seed,
                                              "version": _version()})
    for scheme in config.schemes:
        for n in config.ns:
            try:
                _, _, u = solve_helmholtz(setup, scheme, n, tables)
            except ValueError as exc:
                log.info("skipping %s N=%d: %s", scheme, n, exc)
                continue
            except (linalg.SolverError, np.linalg.LinAlgError) as exc:
                log.warning("%s N=%d failed: %s", scheme, n, exc)
                rep.add(scheme, n, "failed", 1)
                continue
            rep.add(scheme, n, "rel_error", field_error(u, exact))
    return rep


def cfie_system(scheme, n, omega=2.8, tables=None):
    kern = kernels.helm_cfie(geom.starfish(), omega)
    sys_ = _build(scheme, kern, n, tables)
    return sys_, nystrom.assemble_system(sys_, 0.5)


def gmres_study(config):
    """Condition number and GMRES iteration count of ``I/2 + A`` per scheme."""
    tables = _tables(config) if "modgauss" in config.schemes else None
    setup = helmholtz_setup(config.omega, config.seed, config.n_sources)
    rep = ExperimentReport("gmres_study", meta={"omega": config.omega, "seed": config.seed,
                                                "version": _version()})
    for scheme in config.schemes:
        for n in config.ns:
            sys_, M = cfie_system(scheme, n, config.omega, tables)
            f = setup.exact(setup.curve.eval(sys_.nodes))
            _, report = linalg.gmres(M, f, tol=1e-12)
            rep.add(scheme, n, "cond2", linalg.cond2(M))
            rep.add(scheme, n, "gmres_iters", report.iterations)
            rep.add(scheme, n, "gmres_residual", report.residual)
    return rep


def spectrum(config):
    """Eigenvalues of ``I/2 + A``; summary rows count outliers and the eigenvalue nearest 0."""
    tables = _tables(config) if "modgauss" in config.schemes else None
    rep = ExperimentReport("spectrum", meta={"omega": config.omega, "version": _version()})
    for scheme in config.schemes:
        for n in config.ns:
            if n > 1024:
                raise ValueError(f"spectrum is limited to N <= 1024, got {n}")
            lam = linalg.eig(cfie_system(scheme, n, config.omega, tables)[1])
            lam = lam[np.lexsort((lam.imag, lam.real))]
            rep.spectra[f"{scheme}" if len(config.ns) == 1 else f"{scheme}_{n}"] = lam
            rep.add(scheme, n, "n_far_from_half", np.sum(np.abs(lam - 0.5) > 1))
            rep.add(scheme, n, "min_abs", np.min(np.abs(lam)))
    return rep


STUDIES = {
    "converge1d": (converge1d, "1D log-kernel test: relative sup-norm error vs N for each scheme"),
    "helmholtz": (helmholtz, "exterior Helmholtz on the starfish: field error at the measurement ring vs N"),
    "gmres-study": (gmres_study, "cond2(I/2 + A) and GMRES iterations to 1e-12 at N=640"),
    "spectrum": (spectrum, "eigenvalues of I/2 + A (CSV of re, im) with outlier counts"),
}
