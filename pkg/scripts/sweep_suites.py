"""Sweep the verification suites over a grid of n, cutoff and seed.

Prints one row per run: suite, n, cutoff, seed, cases, failures, max deviation,
runtime. Exits 1 if any run has a failing case.

Usage: python scripts/sweep_suites.py --suites equivariance wallcross --n 1 2 3 --cutoffs 1 2 5/2 --seeds 0 1
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from time import perf_counter

from cyclic_fukaya.novikov import RingConfig
from cyclic_fukaya.suites import run_suite


@dataclass
class SweepConfig:
    suites: list[str] = field(default_factory=lambda: ["equivariance", "wallcross", "novikov-laws"])
    n_values: list[int] = field(default_factory=lambda: [1, 2, 3, 5])
    cutoffs: list[Fraction] = field(default_factory=lambda: [Fraction(1), Fraction(2), Fraction(5, 2)])
    seeds: list[int] = field(default_factory=lambda: [0, 1])
    tol: float = 1e-9


def sweep(cfg: SweepConfig):
    rows = []
    for suite, n, cut, seed in product(cfg.suites, cfg.n_values, cfg.cutoffs, cfg.seeds):
        start = perf_counter()
        rep = run_suite(suite, RingConfig(cutoff=cut, tol=cfg.tol, n=n), seed, n_values=[n])
        rows.append((suite, n, str(cut), seed, len(rep.cases), len(rep.failures),
                     rep.max_deviation, perf_counter() - start))
    return rows


def main(argv=None) -> int:
    d = SweepConfig()
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--suites", nargs="+", default=d.suites)
    p.add_argument("--n", nargs="+", type=int, default=d.n_values)
    p.add_argument("--cutoffs", nargs="+", type=Fraction, default=d.cutoffs)
    p.add_argument("--seeds", nargs="+", type=int, default=d.seeds)
    p.add_argument("--tol", type=float, default=d.tol)
    a = p.parse_args(argv)
    rows = sweep(SweepConfig(a.suites, a.n, a.cutoffs, a.seeds, a.tol))
    print(f"{'suite':<16}{'n':>3}{'cutoff':>8}{'seed':>6}{'cases':>8}{'fail':>6}{'max dev':>12}{'secs':>7}")
    for suite, n, cut, seed, cases, fails, dev, secs in rows:
        print(f"{suite:<16}{n:>3}{cut:>8}{seed:>6}{cases:>8}{fails:>6}{dev:>12.2e}{secs:>7.2f}")
    return 1 if any(r[5] for r in rows) else 0


if __name__ == "__main__":
    sys.exit(main())
