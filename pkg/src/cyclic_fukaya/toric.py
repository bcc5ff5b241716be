"""Basic-disk potentials of toric Fano manifolds from moment-polytope data."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BoundaryPoint
from .graded import UNIT, GradedBasis, GradedVector, MultilinearTable
from .novikov import as_fraction
from .potential import DiskClass, FiberAlgebra


@dataclass(frozen=True)
class Polytope:
    """Facets ``<nu_i, x> >= lambda_i`` and a chosen fiber point ``u``."""

    normals: tuple[tuple[int, ...], ...]
    constants: tuple[Fraction, ...]
    point: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "normals", tuple(tuple(int(x) for x in v) for v in self.normals))
        object.__setattr__(self, "constants", tuple(as_fraction(c) for c in self.constants))
        object.__setattr__(self, "point", tuple(as_fraction(c) for c in self.point))
        if len(self.normals) != len(self.constants):
            raise ValueError("one constant per facet normal")
        if any(len(v) != self.rank for v in self.normals):
            raise ValueError("normals must have the dimension of the point")

    @property
    def rank(self) -> int:
        return len(self.point)

    def facet_distances(self) -> list[Fraction]:
        return [sum(a * b for a, b in zip(v, self.point)) - c
                for v, c in zip(self.normals, self.constants)]

    def at(self, point: Sequence) -> "Polytope":
        return Polytope(self.normals, self.constants, tuple(point))

    def to_json(self):
        return {
            "facets": [{"normal": list(v), "lambda": [c.numerator, c.denominator]}
                       for v, c in zip(self.normals, self.constants)],
            "point": [[p.numerator, p.denominator] for p in self.point],
        }

    @classmethod
    def from_json(cls, obj) -> "Polytope":
        facets = obj["facets"]
        return cls(tuple(tuple(f["normal"]) for f in facets),
                   tuple(as_fraction(f["lambda"]) for f in facets),
                   tuple(as_fraction(p) for p in obj["point"]))


def cho_oh_classes(p: Polytope) -> FiberAlgebra:
    """One Maslov-2 disk per facet, energy = distance of ``u`` to the facet.

    Each class carries the single table entry ``m_{0,beta}() = 1``; no
    higher-Maslov or sphere-bubble corrections are included, so the result is
    the potential of a toric Fano manifold.
    """
    dist = p.facet_distances()
    for i, d in enumerate(dist):
        if d <= 0:
            raise BoundaryPoint(f"point {p.point} is not interior to facet {i} (distance {d})")
    basis = GradedBasis.torus(p.rank)
    classes = tuple(DiskClass(f"D{i + 1}", d, 2, v) for i, (d, v) in enumerate(zip(dist, p.normals)))
    unit = GradedVector.element(basis, UNIT)
    tables = {(c.label, 0): MultilinearTable.on_basis(basis, 0, {(): unit}) for c in classes}
    return FiberAlgebra(p.rank, classes, tables)
