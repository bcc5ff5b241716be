"""Graded bases, graded vectors over Novikov scalars, and sparse multilinear maps."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from .errors import ArityMismatch
from .novikov import INF, NovikovScalar, RingConfig, nv_deviation

UNIT = "1"


def torus_name(subset: Sequence[int], rank: int) -> str:
    if not subset:
        return UNIT
    sep = "" if rank < 10 else "_"
    return "e" + sep.join(str(i) for i in subset)


@dataclass(frozen=True)
class GradedBasis:
    """Named basis elements with integer degrees.

    ``GradedBasis.torus(l)`` builds the exterior algebra on ``e_1..e_l``: one
    element per subset of ``{1..l}``, degree = subset size, ``"1"`` for the
    empty subset.
    """

    elements: tuple[tuple[str, int], ...]
    torus_rank: int | None = None
    _degree: dict = field(default=None, init=False, repr=False, compare=False)
    _subset: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        elements = tuple((str(n), int(d)) for n, d in self.elements)
        object.__setattr__(self, "elements", elements)
        degree = dict(elements)
        if len(degree) != len(elements):
            raise ValueError("basis names must be unique")
        object.__setattr__(self, "_degree", degree)
        subset = {}
        if self.torus_rank is not None:
            if len(elements) != 2**self.torus_rank:
                raise ValueError("torus basis must have 2^rank elements")
            for d in range(self.torus_rank + 1):
                for s in combinations(range(1, self.torus_rank + 1), d):
                    subset[torus_name(s, self.torus_rank)] = s
        object.__setattr__(self, "_subset", subset)

    @classmethod
    def torus(cls, rank: int) -> "GradedBasis":
        elems = []
        for d in range(rank + 1):
            for s in combinations(range(1, rank + 1), d):
                elems.append((torus_name(s, rank), d))
        return cls(tuple(elems), torus_rank=rank)

    def __contains__(self, name):
        return name in self._degree

    def __len__(self):
        return len(self.elements)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.elements)

    def degree(self, name: str) -> int:
        return self._degree[name]

    def of_degree(self, d: int) -> tuple[str, ...]:
        return tuple(n for n, dd in self.elements if dd == d)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted({d for _, d in self.elements}))

    def subset(self, name: str) -> tuple[int, ...]:
        """Index set of a torus-basis element, e.g. ``"e13" -> (1, 3)``."""
        return self._subset[name]

    def name_of(self, subset: Sequence[int]) -> str:
        return torus_name(tuple(subset), self.torus_rank)

    def generator(self, i: int) -> str:
        """Name of the degree-one generator ``e_i`` of a torus basis."""
        return torus_name((i,), self.torus_rank)

    def to_json(self):
        if self.torus_rank is not None:
            return {"torus_rank": self.torus_rank}
        return {"elements": [[n, d] for n, d in self.elements]}

    @classmethod
    def from_json(cls, obj) -> "GradedBasis":
        if "torus_rank" in obj:
            return cls.torus(int(obj["torus_rank"]))
        return cls(tuple((n, d) for n, d in obj["elements"]))


class GradedVector:
    """Sparse vector ``{basis name: NovikovScalar}``; zero coordinates are dropped."""

    __slots__ = ("basis", "coords")

    def __init__(self, basis: GradedBasis, coords: Mapping[str, NovikovScalar] = ()):
        clean = {}
        for name, c in dict(coords).items():
            if name not in basis:
                raise KeyError(f"{name!r} is not in the basis")
            c = NovikovScalar.coerce(c)
            if not c.is_zero():
                clean[name] = c
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "coords", clean)

    def __setattr__(self, name, value):
        raise AttributeError("GradedVector is immutable")

    @classmethod
    def zero(cls, basis: GradedBasis) -> "GradedVector":
        return cls(basis)

    @classmethod
    def element(cls, basis: GradedBasis, name: str, coeff=1) -> "GradedVector":
        return cls(basis, {name: NovikovScalar.coerce(coeff)})

    def __getitem__(self, name) -> NovikovScalar:
        return self.coords.get(name, NovikovScalar.zero())

    def is_zero(self) -> bool:
        return not self.coords

    def support_degrees(self) -> set[int]:
        return {self.basis.degree(n) for n in self.coords}

    def degree_part(self, keep) -> "GradedVector":
        """Components whose degree satisfies the predicate ``keep``."""
        return GradedVector(
            self.basis,
            {n: c for n, c in self.coords.items() if keep(self.basis.degree(n))},
        )

    def map_coords(self, f) -> "GradedVector":
        return GradedVector(self.basis, {n: f(n, c) for n, c in self.coords.items()})

    def __add__(self, other: "GradedVector") -> "GradedVector":
        coords = dict(self.coords)
        for n, c in other.coords.items():
            coords[n] = coords[n] + c if n in coords else c
        return GradedVector(self.basis, coords)

    def __neg__(self):
        return self.map_coords(lambda _, c: -c)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        if isinstance(s, NovikovScalar):
            return self.map_coords(lambda _, c: c * s)
        return self.map_coords(lambda _, c: c.scale(s))

    __rmul__ = __mul__

    def truncate(self, cutoff) -> "GradedVector":
        return self.map_coords(lambda _, c: c.truncate(cutoff))

    def deviation(self, other: "GradedVector", cutoff=INF) -> float:
        names = set(self.coords) | set(other.coords)
        return max(
            (nv_deviation(self[n], other[n], cutoff) for n in names), default=0.0
        )

    def equals(self, other: "GradedVector", cfg: RingConfig) -> bool:
        return self.deviation(other, cfg.cutoff) <= cfg.tol

    def __repr__(self):
        if not self.coords:
            return "0"
        return " + ".join(f"({c})*{n}" for n, c in sorted(self.coords.items()))

    def to_json(self):
        return {"coords": {n: c.to_json() for n, c in sorted(self.coords.items())}}

    @classmethod
    def from_json(cls, basis: GradedBasis, obj) -> "GradedVector":
        coords = obj.get("coords", obj)
        return cls(basis, {n: NovikovScalar.from_json(c) for n, c in coords.items()})


@dataclass(frozen=True)
class MultilinearTable:
    """A k-linear map given by its values on tuples of basis elements.

    Each entry output must be homogeneous, and ``output degree - sum(input
    degrees)`` must be the same for every entry; that common shift is the
    degree of the map, stored in ``degree`` (None for an all-zero table).
    """

    arity: int
    entries: Mapping[tuple[str, ...], GradedVector]
    in_bases: tuple[GradedBasis, ...]
    out_basis: GradedBasis
    degree: int | None = field(default=None, init=False)

    def __post_init__(self):
        if len(self.in_bases) != self.arity:
            raise ArityMismatch("need one input basis per argument")
        clean = {}
        shift = None
        for key, out in self.entries.items():
            key = tuple(key)
            if len(key) != self.arity:
                raise ArityMismatch(f"entry {key} has length {len(key)} != {self.arity}")
            for b, name in zip(self.in_bases, key):
                if name not in b:
                    raise KeyError(f"input {name!r} not in its basis")
            if out.is_zero():
                continue
            degs = out.support_degrees()
            if len(degs) != 1:
                raise ValueError(f"entry {key} output is not homogeneous")
            d = degs.pop() - sum(b.degree(n) for b, n in zip(self.in_bases, key))
            if shift is not None and d != shift:
                raise ValueError(f"entry {key} has degree {d}, table has {shift}")
            shift = d
            clean[key] = out
        object.__setattr__(self, "entries", clean)
        object.__setattr__(self, "degree", shift)

    @classmethod
    def on_basis(cls, basis: GradedBasis, arity: int, entries) -> "MultilinearTable":
        """Table whose inputs and output all live in one basis."""
        return cls(arity, dict(entries), (basis,) * arity, basis)

    def input_degree(self, key) -> int:
        return sum(b.degree(n) for b, n in zip(self.in_bases, key))

    def output_degree(self, key) -> int:
        return next(iter(self.entries[key].support_degrees()))

    def scaled(self, c) -> "MultilinearTable":
        return MultilinearTable(
            self.arity,
            {k: v * c for k, v in self.entries.items()},
            self.in_bases,
            self.out_basis,
        )

    def to_json(self):
        return {
            "arity": self.arity,
            "entries": [
                {"in": list(k), "out": v.to_json()}
                for k, v in sorted(self.entries.items())
            ],
        }

    @classmethod
    def from_json(cls, obj, in_bases, out_basis) -> "MultilinearTable":
        k = int(obj["arity"])
        entries = {
            tuple(e["in"]): GradedVector.from_json(out_basis, e["out"])
            for e in obj.get("entries", [])
        }
        return cls(k, entries, tuple(in_bases), out_basis)


def ml_apply(t: MultilinearTable, args: Sequence[GradedVector], cutoff=INF) -> GradedVector:
    """Multilinear extension of ``t`` evaluated at ``args``.

    ``cutoff`` truncates intermediate products; it is safe whenever the
    coefficients involved have nonnegative valuation.
    """
    if len(args) != t.arity:
        raise ArityMismatch(f"table has arity {t.arity}, got {len(args)} arguments")
    result: dict[str, NovikovScalar] = {}
    for key, out in sorted(t.entries.items()):
        coef = None
        for arg, name in zip(args, key):
            c = arg.coords.get(name)
            if c is None:
                coef = False
                break
            coef = c if coef is None else (coef * c).truncate(cutoff)
        if coef is False:
            continue
        for n, c in out.coords.items():
            term = c.truncate(cutoff) if coef is None else (c * coef).truncate(cutoff)
            result[n] = result[n] + term if n in result else term
    return GradedVector(t.out_basis, result)


def twist_apply(v: GradedVector, zeta: complex) -> GradedVector:
    """Multiply each degree-r component by ``zeta**(-r)``."""
    return v.map_coords(lambda n, c: c.scale(zeta ** (-v.basis.degree(n))))


def twist_by_order(v: GradedVector, cfg: RingConfig, extra: int = 0) -> GradedVector:
    """``zeta**extra * twist_apply(v, zeta)`` with exponents reduced mod 2n first."""
    return v.map_coords(lambda n, c: c.scale(cfg.zeta_pow(extra - v.basis.degree(n))))


def split_pr1(v: GradedVector) -> tuple[GradedVector, GradedVector]:
    """Split into the degree-one part and the rest."""
    return v.degree_part(lambda d: d == 1), v.degree_part(lambda d: d != 1)
