"""Walk through the projective-plane example end to end.

Builds the disk classes from the moment polytope, solves for the character,
evaluates W along the cyclic orbit of a point and checks the complete mirror.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from fractions import Fraction

from cyclic_fukaya.jsonio import load_builtin, polytope_from_json
from cyclic_fukaya.mirror import cp2_mirror_report
from cyclic_fukaya.novikov import NovikovScalar, RingConfig
from cyclic_fukaya.potential import MCPoint, apply_tau, compute_gamma, weak_mc_check
from cyclic_fukaya.toric import cho_oh_classes


@dataclass
class DemoConfig:
    u: tuple[Fraction, Fraction] = (Fraction(1, 3), Fraction(1, 3))
    y: tuple[complex, complex] = (1, 1)
    cutoff: Fraction = Fraction(2)
    samples: int = 1000
    seed: int = 0


def run(cfg: DemoConfig) -> None:
    doc = load_builtin("cp2-toric")
    ring = RingConfig(cutoff=cfg.cutoff, n=doc["n"])
    alg = cho_oh_classes(polytope_from_json(doc).at(cfg.u))
    for c in alg.classes:
        print(f"class {c.label}: energy {c.energy}, maslov {c.maslov}, boundary {c.boundary}")
    gamma = compute_gamma(alg.classes, ring)
    print(f"gamma exponents (mod {gamma.order}): {gamma.exponents}")
    pt = MCPoint.at([NovikovScalar.const(v) for v in cfg.y])
    for k in range(ring.n + 1):
        w = weak_mc_check(alg, apply_tau(pt, gamma, ring, times=k), ring).W
        print(f"W(tau^{k} y) = {w}")
    print(cp2_mirror_report(cfg.samples, cfg.seed).summary_line())


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--u", nargs=2, type=Fraction, default=DemoConfig.u)
    p.add_argument("--samples", type=int, default=DemoConfig.samples)
    p.add_argument("--seed", type=int, default=DemoConfig.seed)
    a = p.parse_args()
    run(DemoConfig(u=tuple(a.u), samples=a.samples, seed=a.seed))
