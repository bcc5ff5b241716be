"""Rank-one combinatorial model of Fukaya-category data and the twisted functor.

Every local system is a character, so the isomorphisms ``s_C`` attached to
clean-intersection components are scalars ``zeta**s`` and the twisted functor
``Phi`` acts on a degree-r element supported on ``C`` by ``zeta**(-r) * s_C``.

The twisted structure constants are fixed by holonomy: a polygon in class
``beta`` with corners ``C_1..C_k, C_0`` picks up the E_L-holonomy
``zeta**maslov / prod_{i=0..k} s_{C_i}``. Combined with the relation
``s_{C0'} s_{C0} = zeta**(dim C0 - dim X / 2)`` this is the scalar
``zeta**(maslov - d0) * s_{C0'} / prod_{i>=1} s_{C_i}``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DegreeRuleViolation, MissingELSystem
from .graded import GradedBasis, GradedVector, MultilinearTable, ml_apply
from .novikov import RingConfig, as_fraction
from .report import FAIL, Report, judged


@dataclass(frozen=True)
class LagrangianLabel:
    name: str
    h1_rank: int = 0
    oriented: bool = True
    ambient_dim: int = 2

    def __post_init__(self):
        if self.ambient_dim < 2 or self.ambient_dim % 2:
            raise ValueError("ambient_dim must be even and >= 2")
        if self.h1_rank < 0:
            raise ValueError("h1_rank must be nonnegative")


@dataclass(frozen=True)
class HolonomyCharacter:
    """A multiplicative map ``Z^l -> C^x`` given by its values on generators.

    When the character was built from root-of-unity exponents, ``exponents``
    and ``order`` keep the exact data (``values[i] == e^{2 pi i exps[i]/order}``).
    """

    values: tuple[complex, ...]
    exponents: tuple[int, ...] | None = None
    order: int | None = None

    @classmethod
    def from_exponents(cls, exps: Sequence[int], order: int) -> "HolonomyCharacter":
        exps = tuple(int(e) % order for e in exps)
        vals = tuple(cmath.exp(2j * math.pi * e / order) for e in exps)
        return cls(vals, exps, order)

    @classmethod
    def trivial(cls, rank: int) -> "HolonomyCharacter":
        return cls.from_exponents((0,) * rank, 1)

    @property
    def rank(self) -> int:
        return len(self.values)

    def __mul__(self, other: "HolonomyCharacter") -> "HolonomyCharacter":
        if self.rank != other.rank:
            raise ValueError("characters of different rank")
        if self.exponents is not None and other.exponents is not None:
            order = math.lcm(self.order, other.order)
            exps = [a * (order // self.order) + b * (order // other.order)
                    for a, b in zip(self.exponents, other.exponents)]
            return HolonomyCharacter.from_exponents(exps, order)
        return HolonomyCharacter(tuple(a * b for a, b in zip(self.values, other.values)))

    def __call__(self, x: Sequence[int]) -> complex:
        """Value on the lattice vector ``x``."""
        if self.exponents is not None:
            e = sum(a * int(b) for a, b in zip(self.exponents, x))
            return cmath.exp(2j * math.pi * (e % self.order) / self.order)
        out = 1 + 0j
        for v, k in zip(self.values, x):
            out *= v ** int(k)
        return out

    def deviation(self, other: "HolonomyCharacter") -> float:
        return max((abs(a - b) for a, b in zip(self.values, other.values)), default=0.0)

    def is_unitary(self, tol: float) -> bool:
        return all(abs(abs(v) - 1) <= tol for v in self.values)

    def is_root_of_unity(self, order: int, tol: float) -> bool:
        return all(abs(v**order - 1) <= tol for v in self.values)

    def to_json(self):
        if self.exponents is not None:
            return {"exponents": list(self.exponents), "order": self.order}
        return {"values": [[v.real, v.imag] for v in self.values]}

    @classmethod
    def from_json(cls, obj, default_order: int | None = None) -> "HolonomyCharacter":
        if isinstance(obj, list):
            return cls.from_exponents(obj, default_order)
        if "exponents" in obj:
            return cls.from_exponents(obj["exponents"], obj.get("order", default_order))
        return cls(tuple(complex(re, im) for re, im in obj["values"]))


@dataclass(frozen=True)
class MorphismComponent:
    """A clean-intersection component ``C`` from ``source`` to ``target``.

    ``s`` is the exponent of ``s_C = zeta**s`` (mod 2n); ``reverse`` names the
    same component viewed from ``target`` to ``source`` (``C'``).
    """

    id: str
    source: str
    target: str
    dim_c: int
    basis: GradedBasis
    s: int = 0
    reverse: str | None = None


@dataclass(frozen=True)
class PolygonClass:
    """Label plus energy, Maslov index and corners ``(C_1, ..., C_k, C_0)``."""

    label: str
    k: int
    energy: Fraction
    maslov: int
    components: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "energy", as_fraction(self.energy))
        object.__setattr__(self, "components", tuple(self.components))
        if self.energy < 0:
            raise ValueError(f"class {self.label}: negative energy")
        if len(self.components) != self.k + 1:
            raise ValueError(f"class {self.label}: need k+1 corner components")

    @property
    def inputs(self) -> tuple[str, ...]:
        return self.components[:-1]

    @property
    def c0(self) -> str:
        return self.components[-1]


Obj = tuple  # (LagrangianLabel, HolonomyCharacter)


@dataclass(frozen=True)
class CategoryData:
    """Objects, E_L systems, components and one structure table per class.

    With ``strict=True`` (the default) every table entry must satisfy the
    degree rule ``out = (dim C0 - dim X/2) + 2 - k - maslov + sum(in)``;
    ``strict=False`` admits deliberately broken data for negative tests.
    """

    n: int
    objects: Mapping[str, Obj]
    el_systems: Mapping[str, HolonomyCharacter]
    components: Mapping[str, MorphismComponent]
    classes: tuple[tuple[PolygonClass, MultilinearTable], ...]
    strict: bool = field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        dims = {lab.ambient_dim for lab, _ in self.objects.values()}
        if len(dims) > 1:
            raise ValueError("objects disagree on ambient_dim")
        for c in self.components.values():
            for end in (c.source, c.target):
                if end not in self.objects:
                    raise KeyError(f"component {c.id}: unknown object {end!r}")
            if not 0 <= c.dim_c <= self.half_dim:
                raise ValueError(f"component {c.id}: dim_c out of range")
            if c.reverse is not None:
                r = self.components.get(c.reverse)
                if r is None or r.reverse != c.id:
                    raise ValueError(f"component {c.id}: reverse pairing broken")
                if (r.source, r.target, r.dim_c) != (c.target, c.source, c.dim_c):
                    raise ValueError(f"component {c.id}: reverse has wrong ends")
        for name, chi in self.el_systems.items():
            if name in self.objects:
                check_el_character(chi, self.objects[name][0], self.n, 1e-9)
        bad = s_consistency_violations(self)
        if bad:
            raise ValueError("s-consistency fails: " + "; ".join(bad))
        for cls, table in self.classes:
            self._check_shape(cls, table)
        if self.strict:
            bad = degree_violations(self)
            if bad:
                raise DegreeRuleViolation(bad)

    @property
    def order(self) -> int:
        return 2 * self.n

    @property
    def ambient_dim(self) -> int:
        return next(iter(self.objects.values()))[0].ambient_dim if self.objects else 2

    @property
    def half_dim(self) -> int:
        return self.ambient_dim // 2

    def d0(self, cls: PolygonClass) -> int:
        """``dim(C_0) - dim(X)/2`` for the class's output corner."""
        return self.components[cls.c0].dim_c - self.half_dim

    def output_component(self, cls: PolygonClass) -> MorphismComponent:
        return self.components[self.components[cls.c0].reverse]

    def _check_shape(self, cls: PolygonClass, table: MultilinearTable):
        comps = [self.components[c] for c in cls.components]
        if table.arity != cls.k:
            raise ValueError(f"class {cls.label}: table arity {table.arity} != k")
        for i, c in enumerate(comps[:-1]):
            if i + 1 < cls.k and c.target != comps[i + 1].source:
                raise ValueError(f"class {cls.label}: corners do not chain")
        last_target = comps[-2].target if cls.k else comps[-1].target
        if comps[-1].source != last_target:
            raise ValueError(f"class {cls.label}: C_0 must start at L_k")
        if cls.k and comps[-1].target != comps[0].source:
            raise ValueError(f"class {cls.label}: C_0 must end at L_0")
        if comps[-1].reverse is None:
            raise ValueError(f"class {cls.label}: C_0 has no registered reverse")
        for b, c in zip(table.in_bases, comps[:-1]):
            if b != c.basis:
                raise ValueError(f"class {cls.label}: input basis mismatch")
        if table.out_basis != self.output_component(cls).basis:
            raise ValueError(f"class {cls.label}: output basis mismatch")

    def with_tables(self, tables, objects=None, strict=None) -> "CategoryData":
        return CategoryData(
            self.n,
            self.objects if objects is None else objects,
            self.el_systems,
            self.components,
            tuple((cls, t) for (cls, _), t in zip(self.classes, tables)),
            self.strict if strict is None else strict,
        )


def s_consistency_violations(cat: CategoryData) -> list[str]:
    bad = []
    for c in cat.components.values():
        if c.reverse is None:
            continue
        r = cat.components[c.reverse]
        if (c.s + r.s - (c.dim_c - cat.half_dim)) % cat.order:
            bad.append(f"{c.id}/{r.id}: s exponents {c.s}+{r.s} != {c.dim_c - cat.half_dim}")
    return bad


def degree_violations(cat: CategoryData) -> list[str]:
    bad = []
    for cls, table in cat.classes:
        shift = cat.d0(cls) + 2 - cls.k - cls.maslov
        for key in table.entries:
            expect = shift + table.input_degree(key)
            got = table.output_degree(key)
            if got != expect:
                bad.append(f"{cls.label}{list(key)}: degree {got}, rule gives {expect}")
    return bad


def check_el_character(chi: HolonomyCharacter, label: LagrangianLabel, n: int, tol: float):
    if len(chi.values) != label.h1_rank:
        raise ValueError(f"E_L for {label.name}: rank {len(chi.values)} != {label.h1_rank}")
    order = n if label.oriented else 2 * n
    if not chi.is_root_of_unity(order, tol):
        raise ValueError(f"E_L for {label.name} is not valued in {order}-th roots of unity")


def phi_object(obj: Obj, el_systems: Mapping[str, HolonomyCharacter]) -> Obj:
    """``Phi(L, E) = (L, E (x) E_L)``."""
    label, chi = obj
    try:
        el = el_systems[label.name]
    except KeyError:
        raise MissingELSystem(label.name) from None
    return label, chi * el


def phi1_scalar(c: MorphismComponent, cls_s: complex, r: int, zeta: complex) -> complex:
    """Scalar by which ``Phi_1`` acts on a degree-r element supported on ``c``."""
    return zeta ** (-r) * cls_s


def _s(cfg: RingConfig, comp: MorphismComponent) -> complex:
    return cfg.zeta_pow(comp.s)


def twist_factor_exponent(cat: CategoryData, cls: PolygonClass) -> int:
    """Exponent ``e`` with twisted table = ``zeta**e`` * table."""
    total = cls.maslov - sum(cat.components[c].s for c in cls.components)
    return total % cat.order


def _twisted(cat: CategoryData, cfg: RingConfig, times: int = 1) -> CategoryData:
    tables = [t for _, t in cat.classes]
    objects = dict(cat.objects)
    for _ in range(times):
        tables = [t.scaled(cfg.zeta_pow(twist_factor_exponent(cat, cls)))
                  for (cls, _), t in zip(cat.classes, tables)]
        objects = {k: phi_object(o, cat.el_systems) for k, o in objects.items()}
    return cat.with_tables(tables, objects=objects, strict=False)


def build_twisted_structure(cat: CategoryData, cfg: RingConfig | None = None) -> CategoryData:
    """Category ``Phi(cat)``: objects twisted by E_L, tables by the holonomy scalar."""
    cfg = cfg or RingConfig(n=cat.n)
    bad = degree_violations(cat)
    if bad:
        raise DegreeRuleViolation(bad)
    twisted = _twisted(cat, cfg)
    return twisted.with_tables([t for _, t in twisted.classes], strict=cat.strict)


def _phi1(cat: CategoryData, comp: MorphismComponent, v: GradedVector, cfg: RingConfig):
    s = comp.s
    return v.map_coords(lambda n, c: c.scale(cfg.zeta_pow(s - comp.basis.degree(n))))


def check_twisted_equations(cat: CategoryData, cfg: RingConfig | None = None,
                            twisted: CategoryData | None = None) -> Report:
    """Evaluate ``m^Phi(Phi_1 a_1, ..., Phi_1 a_k) = zeta^(2-k) Phi_1 m(a)`` on basis inputs.

    Runs on any category, degree-valid or not; a class whose outputs break the
    degree rule fails because its output twist ``zeta**(-r0)`` is off.
    """
    cfg = cfg or RingConfig(n=cat.n)
    if twisted is None:
        twisted = _twisted(cat, cfg)
    report = Report("twisted-functor")
    for (cls, table), (_, ttable) in zip(cat.classes, twisted.classes):
        ins = [cat.components[c] for c in cls.inputs]
        out = cat.output_component(cls)
        d0 = cat.d0(cls)
        worst = 0.0
        bad_exponent = []
        lhs_s = rhs_s = ""
        for key in sorted(table.entries):
            args = [GradedVector.element(c.basis, name) for c, name in zip(ins, key)]
            lhs = ml_apply(ttable, [_phi1(cat, c, a, cfg) for c, a in zip(ins, args)])
            m = ml_apply(table, args)
            rhs = _phi1(cat, out, m, cfg)
            rhs = rhs.map_coords(lambda _, c: c.scale(cfg.zeta_pow(2 - cls.k)))
            dev = lhs.deviation(rhs, cfg.cutoff)
            if dev >= worst:
                worst, lhs_s, rhs_s = dev, repr(lhs), repr(rhs)
            r_in = sum(c.basis.degree(nm) for c, nm in zip(ins, key))
            r0 = table.output_degree(key)
            if -r_in + cls.maslov - d0 != (2 - cls.k) - r0:
                bad_exponent.append(list(key))
        case = judged(f"class:{cls.label}", worst, cfg.tol, lhs_s, rhs_s)
        if bad_exponent:
            case.status = FAIL
            case.detail = f"exponent identity fails on {bad_exponent[:3]}"
        report.cases.append(case)
    return report


def check_functor_order(cat: CategoryData, cfg: RingConfig | None = None) -> Report:
    """``Phi^(2n) = id`` strictly; ``Phi^n = id`` on oriented objects."""
    cfg = cfg or RingConfig(n=cat.n)
    report = Report("functor-order")
    order = cat.order
    for name, obj in sorted(cat.objects.items()):
        cur = obj
        for _ in range(order):
            cur = phi_object(cur, cat.el_systems)
        report.cases.append(judged(f"object:{name}:2n", cur[1].deviation(obj[1]), cfg.tol))
        if obj[0].oriented:
            cur = obj
            for _ in range(cat.n):
                cur = phi_object(cur, cat.el_systems)
            report.cases.append(judged(f"object:{name}:n", cur[1].deviation(obj[1]), cfg.tol))
    zeta = cfg.zeta
    for cid, comp in sorted(cat.components.items()):
        worst = 0.0
        for r in comp.basis.degrees:
            acc = 1 + 0j
            for _ in range(order):
                acc *= phi1_scalar(comp, _s(cfg, comp), r, zeta)
            worst = max(worst, abs(acc - 1))
        report.cases.append(judged(f"component:{cid}", worst, cfg.tol))
    back = _twisted(cat, cfg, times=order)
    for (cls, t0), (_, t1) in zip(cat.classes, back.classes):
        dev = max((t0.entries[k].deviation(t1.entries[k]) for k in t0.entries), default=0.0)
        report.cases.append(judged(f"table:{cls.label}", dev, cfg.tol))
    return report
