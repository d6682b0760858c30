"""High-order Nyström discretizations for log-singular periodic integral equations.

Schemes: Kapur-Rokhlin corrected trapezoid, Alpert hybrid Gauss-trapezoid,
modified Gaussian panels and Kress spectral product quadrature.
"""

from . import geom, kernels, linalg, nystrom, oracle, rules, specfun
from .nystrom import NystromSystem, assemble_system, build, build_alpert, build_kr, build_kress, build_modgauss

__all__ = [
    "geom", "kernels", "linalg", "nystrom", "oracle", "rules", "specfun",
    "NystromSystem", "assemble_system", "build", "build_alpert", "build_kr", "build_kress", "build_modgauss",
]
