"""``nq``: run the convergence, conditioning and spectrum studies and write CSV."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import experiments
from .experiments import ExperimentConfig, STUDIES

DEFAULT_NS = {
    "converge1d": (20, 1280),
    "helmholtz": (40, 640),
    "gmres-study": (640, 640),
    "spectrum": (640, 640),
}
DEFAULT_SCHEMES = {
    "spectrum": ("kr10", "kress"),
}


def sweep(nmin, nmax):
    """Doubling sequence ``nmin, 2 nmin, ...`` up to ``nmax``."""
    if nmin < 1 or nmax < nmin:
        raise ValueError(f"bad N range [{nmin}, {nmax}]")
    ns = [nmin]
    while ns[-1] * 2 <= nmax:
        ns.append(ns[-1] * 2)
    return tuple(ns)


def build_parser():
    p = argparse.ArgumentParser(prog="nq", description=__doc__)
    p.add_argument("study", nargs="?", choices=sorted(STUDIES))
    p.add_argument("--list", action="store_true", help="list the available studies and exit")
    p.add_argument("--schemes", help="comma-separated scheme tags (default: all)")
    p.add_argument("--nmin", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--omega", type=float, default=2.8, help="wavenumber (default 2.8)")
    p.add_argument("--seed", type=int, default=0, help="seed for the source strengths")
    p.add_argument("--tables", type=Path, help="modified Gaussian table file")
    p.add_argument("--out", type=Path, default=Path("."), help="output directory")
    p.add_argument("--high-frequency", action="store_true",
                   help=f"allow helmholtz runs with omega > {experiments.HIGH_FREQUENCY:g}")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if args.list:
        for name in sorted(STUDIES):
            print(f"{name:12s} {STUDIES[name][1]}")
        return 0
    if args.study is None:
        print("nq: a study name is required (see --list)", file=sys.stderr)
        return 2

    lo, hi = DEFAULT_NS[args.study]
    schemes = (tuple(s.strip() for s in args.schemes.split(",") if s.strip()) if args.schemes
               else DEFAULT_SCHEMES.get(args.study, experiments.ALL_SCHEMES))
    unknown = [s for s in schemes if s not in experiments.ALL_SCHEMES]
    if unknown:
        print(f"nq: unknown scheme(s) {', '.join(unknown)}; choose from {', '.join(experiments.ALL_SCHEMES)}",
              file=sys.stderr)
        return 2
    try:
        ns = sweep(args.nmin or lo, args.nmax or max(hi, args.nmin or lo))
        config = ExperimentConfig(args.study, schemes, ns, args.omega, args.seed, args.out,
                                  args.tables, allow_high_frequency=args.high_frequency)
        report = STUDIES[args.study][0](config)
    except Exception as exc:  # report the failed cell and exit nonzero
        print(f"nq {args.study}: {exc}", file=sys.stderr)
        return 1
    for path in report.write(args.out):
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
