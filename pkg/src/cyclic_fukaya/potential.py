"""Potential function, weak Maurer-Cartan points and the cyclic action on them."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import ClassVar, Mapping, NamedTuple, Sequence

from .errors import (DegreeRuleViolation, Inconsistent, NoEnergyGap,
                     PreconditionFailed)
from .fukcat import HolonomyCharacter
from .graded import (UNIT, GradedBasis, GradedVector, MultilinearTable,
                     ml_apply, twist_by_order)
from .intlinalg import lex_min_solution
from .novikov import (INF, NovikovScalar, RingConfig, as_fraction, exponent_mismatch,
                      nv_deviation, torus_monomial)
from .report import FAIL, Report, judged


@dataclass(frozen=True)
class DiskClass:
    label: str
    energy: Fraction
    maslov: int
    boundary: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "energy", as_fraction(self.energy))
        object.__setattr__(self, "boundary", tuple(int(b) for b in self.boundary))

    @property
    def is_zero(self) -> bool:
        return self.energy == 0 and self.maslov == 0 and not any(self.boundary)

    def pairing(self, v: Sequence) -> Fraction:
        """``<boundary, v>`` for a vector of rationals."""
        return sum((b * as_fraction(x) for b, x in zip(self.boundary, v)), Fraction(0))

    def to_json(self):
        e = self.energy
        return {"label": self.label, "energy": [e.numerator, e.denominator],
                "maslov": self.maslov, "boundary": list(self.boundary)}

    @classmethod
    def from_json(cls, obj) -> "DiskClass":
        return cls(obj["label"], as_fraction(obj["energy"]), int(obj["maslov"]),
                   tuple(obj["boundary"]))


@dataclass(frozen=True)
class DiskData:
    """Disk classes of a torus fiber with one multilinear table per (class, arity).

    Tables act on the exterior basis of ``H^*(T^rank)``. Each stored entry
    must satisfy ``out = sum(in) + degree_shift - k - maslov``.
    """

    degree_shift: ClassVar[int] = 2

    rank: int
    classes: tuple[DiskClass, ...]
    tables: Mapping[tuple[str, int], MultilinearTable]
    basis: GradedBasis = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        object.__setattr__(self, "tables", dict(self.tables))
        if self.basis is None:
            object.__setattr__(self, "basis", GradedBasis.torus(self.rank))
        labels = [c.label for c in self.classes]
        if len(set(labels)) != len(labels):
            raise ValueError("class labels must be unique")
        for c in self.classes:
            if len(c.boundary) != self.rank:
                raise ValueError(f"class {c.label}: boundary length != rank")
        by_label = self.class_map
        bad = []
        for (label, k), t in self.tables.items():
            if label not in by_label:
                raise KeyError(f"table for unknown class {label!r}")
            if t.arity != k:
                raise ValueError(f"table ({label}, {k}) has arity {t.arity}")
            if t.out_basis != self.basis or any(b != self.basis for b in t.in_bases):
                raise ValueError(f"table ({label}, {k}) is not on the torus basis")
            expect = self.degree_shift - k - by_label[label].maslov
            if t.degree is not None and t.degree != expect:
                bad.append(f"({label}, {k}): map degree {t.degree}, rule gives {expect}")
            for out in t.entries.values():
                for c in out.coords.values():
                    if c.val < 0:
                        raise ValueError(f"table ({label}, {k}) has a coefficient outside Lambda_0")
        if bad:
            raise DegreeRuleViolation(bad)

    @property
    def class_map(self) -> dict[str, DiskClass]:
        return {c.label: c for c in self.classes}

    def sorted_tables(self):
        return sorted(self.tables.items(), key=lambda kv: kv[0])

    def check_energy_gap(self):
        cm = self.class_map
        for (label, k) in self.tables:
            c = cm[label]
            if c.is_zero:
                if k < 2:
                    raise NoEnergyGap(f"zero class carries an arity-{k} table")
            elif c.energy <= 0:
                raise NoEnergyGap(f"class {label} has energy {c.energy} <= 0")

    @property
    def energy_gap(self):
        pos = [c.energy for c in self.classes if c.energy > 0]
        return min(pos) if pos else INF


class FiberAlgebra(DiskData):
    """Structure maps ``m_{k,beta}`` on the cohomology of a torus fiber."""

    degree_shift = 2


@dataclass(frozen=True)
class MCPoint:
    """Torus coordinates ``y`` and the higher odd part ``b_high`` of a cochain."""

    y: tuple[NovikovScalar, ...]
    b_high: GradedVector

    def __post_init__(self):
        object.__setattr__(self, "y", tuple(NovikovScalar.coerce(v) for v in self.y))
        for i, v in enumerate(self.y):
            if v.is_zero():
                raise ValueError(f"y_{i + 1} must be invertible")
        basis = self.b_high.basis
        if basis.torus_rank != len(self.y):
            raise ValueError("b_high must live on the torus basis of rank len(y)")
        for name, c in self.b_high.coords.items():
            d = basis.degree(name)
            if d <= 1 or d % 2 == 0:
                raise ValueError(f"b_high has a component in degree {d}; only odd degrees > 1 allowed")
            if c.val <= 0:
                raise ValueError(f"b_high coordinate {name} has valuation {c.val} <= 0")

    @classmethod
    def at(cls, y: Sequence, b_high: GradedVector | None = None) -> "MCPoint":
        y = tuple(NovikovScalar.coerce(v) for v in y)
        if b_high is None:
            b_high = GradedVector.zero(GradedBasis.torus(len(y)))
        return cls(y, b_high)

    @property
    def rank(self) -> int:
        return len(self.y)

    def valuations(self):
        return tuple(v.val for v in self.y)

    def deviation(self, other: "MCPoint", cutoff=INF) -> float:
        dy = max((nv_deviation(a, b, cutoff) for a, b in zip(self.y, other.y)), default=0.0)
        return max(dy, self.b_high.deviation(other.b_high, cutoff))

    def to_json(self):
        return {"y": [v.to_json() for v in self.y], "b_high": self.b_high.to_json()}

    @classmethod
    def from_json(cls, obj) -> "MCPoint":
        y = tuple(NovikovScalar.from_json(v) for v in obj["y"])
        basis = GradedBasis.torus(len(y))
        b = GradedVector.from_json(basis, obj.get("b_high", {"coords": {}}))
        return cls(y, b)


def compute_gamma(classes: Sequence[DiskClass], cfg: RingConfig,
                  oriented: bool = True) -> HolonomyCharacter:
    """Character ``gamma`` with ``gamma(boundary) = zeta**maslov`` on every class.

    Exponents are found by solving the linear congruences over ``Z/2n``. For
    an oriented fiber the local system is a ``Z_n`` one, so ``gamma`` is
    searched among ``n``-th roots (even exponents), which keeps ``tau^n = id``
    exact. Among all solutions the lexicographically smallest exponent vector
    is returned; unconstrained coordinates therefore come out as 0.
    """
    classes = list(classes)
    if not classes:
        raise ValueError("need at least one class")
    rank = len(classes[0].boundary)
    a = [list(c.boundary) for c in classes]
    if oriented:
        odd = [c.label for c in classes if c.maslov % 2]
        if odd:
            raise Inconsistent(f"odd Maslov index on an oriented fiber: {odd}")
        sol = lex_min_solution(a, [c.maslov // 2 for c in classes], cfg.n)
        exps = None if sol is None else [2 * h for h in sol]
    else:
        exps = lex_min_solution(a, [c.maslov for c in classes], cfg.order)
    if exps is None:
        raise Inconsistent(
            f"no character with gamma(boundary) = zeta^maslov for n={cfg.n}; "
            "the classes are incompatible with c_1 divisible by n"
        )
    if rank == 0:
        exps = []
    return HolonomyCharacter.from_exponents(exps, cfg.order)


def character_violations(classes, gamma: HolonomyCharacter, cfg: RingConfig) -> list[str]:
    bad = []
    for c in classes:
        if abs(gamma(c.boundary) - cfg.zeta_pow(c.maslov)) > cfg.tol:
            bad.append(c.label)
    return bad


def class_terms(data: DiskData, pt: MCPoint, cfg: RingConfig):
    """Per-(class, arity) contributions ``T^E y^boundary m_{k,beta}(b_high^k)``.

    Returned in canonical (label, arity) order. The monomial part is computed
    at relative precision so negative valuations of ``y`` truncate correctly.
    """
    data.check_energy_gap()
    cm = data.class_map
    cutoff = cfg.cutoff
    out = []
    for (label, k), table in data.sorted_tables():
        c = cm[label]
        mono = torus_monomial(pt.y, c.boundary, cutoff - c.energy).shift(c.energy)
        w = mono.val
        if w == INF:
            out.append(((label, k), GradedVector.zero(data.basis)))
            continue
        inner_cut = cutoff - min(w, 0)
        b = pt.b_high.truncate(inner_cut)
        inner = ml_apply(table, [b] * k, inner_cut)
        term = inner.map_coords(lambda _, x: (x * mono).truncate(cutoff))
        out.append(((label, k), term))
    return out


def sum_terms(basis: GradedBasis, terms, cutoff) -> GradedVector:
    total = GradedVector.zero(basis)
    for _, v in terms:
        total = total + v
    return total.truncate(cutoff)


def eval_P(alg: FiberAlgebra, pt: MCPoint, cfg: RingConfig) -> GradedVector:
    """The potential ``P(y, b_high)`` modulo ``T^cutoff``."""
    return sum_terms(alg.basis, class_terms(alg, pt, cfg), cfg.cutoff)


class WeakMC(NamedTuple):
    ok: bool
    W: NovikovScalar
    offending: tuple[str, ...]


def weak_mc_check(alg: FiberAlgebra, pt: MCPoint, cfg: RingConfig) -> WeakMC:
    """Is ``P(pt) = W * 1``? Returns the verdict, ``W`` and any non-unit coordinates."""
    p = eval_P(alg, pt, cfg)
    zero = NovikovScalar.zero(cfg.cutoff)
    offending = tuple(
        n for n, c in sorted(p.coords.items())
        if n != UNIT and nv_deviation(c, zero, cfg.cutoff) > cfg.tol
    )
    w = p.coords.get(UNIT, zero)
    return WeakMC(not offending, w, offending)


def tau_b_high(b: GradedVector, cfg: RingConfig, times: int = 1) -> GradedVector:
    """``(zeta * id^zeta)^times``: degree-d part scaled by ``zeta**(times*(1-d))``."""
    return b.map_coords(lambda n, c: c.scale(cfg.zeta_pow(times * (1 - b.basis.degree(n)))))


def apply_tau(pt: MCPoint, gamma: HolonomyCharacter, cfg: RingConfig, times: int = 1) -> MCPoint:
    """``tau(y, b) = (gamma_i y_i, zeta id^zeta(b))``, applied ``times`` times."""
    if gamma.rank != pt.rank:
        raise ValueError("gamma rank differs from the number of coordinates")
    if gamma.exponents is not None:
        g = HolonomyCharacter.from_exponents([times * e for e in gamma.exponents], gamma.order)
        scales = g.values
    else:
        scales = tuple(v**times for v in gamma.values)
    y = tuple(v.scale(s) for v, s in zip(pt.y, scales))
    return MCPoint(y, tau_b_high(pt.b_high, cfg, times))


def check_equivariance(alg: FiberAlgebra, pt: MCPoint, gamma: HolonomyCharacter,
                       cfg: RingConfig, label: str = "") -> Report:
    """``tau(pt)`` is weak MC again and ``W(tau pt) = zeta^2 W(pt)``."""
    base = weak_mc_check(alg, pt, cfg)
    if not base.ok:
        raise PreconditionFailed(f"point is not weak MC (non-unit coordinates {base.offending})")
    moved = weak_mc_check(alg, apply_tau(pt, gamma, cfg), cfg)
    rep = Report("equivariance")
    prefix = f"{label}:" if label else ""
    rep.cases.append(judged(prefix + "tau-weak-mc", 0.0 if moved.ok else 1.0, cfg.tol,
                            detail=f"offending={list(moved.offending)}"))
    expect = base.W.scale(cfg.zeta_pow(2))
    rep.cases.append(judged(prefix + "W-equivariance", nv_deviation(moved.W, expect, cfg.cutoff),
                            cfg.tol, moved.W, expect))
    return rep


def check_covariance(alg: FiberAlgebra, pt: MCPoint, gamma: HolonomyCharacter,
                     cfg: RingConfig) -> float:
    """Deviation of ``P(tau pt)`` from ``zeta^2 id^zeta(P(pt))``; holds off the MC locus too."""
    lhs = eval_P(alg, apply_tau(pt, gamma, cfg), cfg)
    rhs = twist_by_order(eval_P(alg, pt, cfg), cfg, extra=2)
    return lhs.deviation(rhs, cfg.cutoff)


def check_divisor_axiom(data: DiskData, kind: str = "m", cfg: RingConfig | None = None) -> Report:
    """Check the divisor axiom at one insertion on every entry with a degree-1 input.

    For a stored entry with inputs ``x`` containing a degree-1 element, drop
    that element to get ``x'`` and compare, for each generator ``e_j``,
    ``sum over positions p of table_{k+1}(x' with e_j at p)`` against
    ``<boundary, e_j> * table_k(x')``. The case ``(k, m, beta) = (0, 1, 0)`` is
    excluded.
    """
    if kind not in ("m", "F"):
        raise ValueError("kind must be 'm' or 'F'")
    cfg = cfg or RingConfig()
    basis = data.basis
    rank = data.rank
    gens = [basis.generator(i) for i in range(1, rank + 1)]
    rep = Report(f"divisor-axiom-{kind}")
    cm = data.class_map
    for (label, k1), t1 in data.sorted_tables():
        if k1 == 0:
            continue
        c = cm[label]
        k = k1 - 1
        if k == 0 and c.is_zero:
            continue
        t0 = data.tables.get((label, k))
        reduced = set()
        for key in t1.entries:
            for p, name in enumerate(key):
                if basis.degree(name) == 1:
                    reduced.add(key[:p] + key[p + 1:])
        for x in sorted(reduced):
            args = [GradedVector.element(basis, nm) for nm in x]
            for j, g in enumerate(gens):
                lhs = GradedVector.zero(basis)
                for p in range(k + 1):
                    ins = args[:p] + [GradedVector.element(basis, g)] + args[p:]
                    lhs = lhs + ml_apply(t1, ins)
                rhs = GradedVector.zero(basis)
                if t0 is not None and c.boundary[j]:
                    rhs = ml_apply(t0, args) * complex(c.boundary[j])
                rep.cases.append(judged(f"{label}:{k1}:{list(x)}+{g}",
                                        lhs.deviation(rhs), cfg.tol, lhs, rhs))
    return rep


def rescale_point(pt: MCPoint, v: Sequence) -> MCPoint:
    """``y_i -> T^{v_i} y_i`` with ``b_high`` unchanged."""
    return MCPoint(tuple(y.shift(as_fraction(s)) for y, s in zip(pt.y, v)), pt.b_high)


def check_monomial_transform(data: DiskData, pt: MCPoint, v: Sequence, cfg: RingConfig,
                             label: str = "") -> Report:
    """Each class term at ``T^v y`` equals the term at ``y`` times ``T^{<boundary, v>}``.

    Exponents are compared exactly; coefficients within ``cfg.tol``. The
    comparison is made below the cutoff both sides are known to, i.e.
    ``min(cutoff, cutoff + <boundary, v>)``.
    """
    cm = data.class_map
    before = dict(class_terms(data, pt, cfg))
    after = dict(class_terms(data, rescale_point(pt, v), cfg))
    rep = Report("monomial-transform")
    prefix = f"{label}:" if label else ""
    for key in sorted(before):
        s = cm[key[0]].pairing(v)
        moved = before[key].map_coords(lambda _, c: c.shift(s))
        got = after[key]
        bound = min(cfg.cutoff, cfg.cutoff + s)
        mismatched = []
        dev = 0.0
        for name in sorted(set(moved.coords) | set(got.coords)):
            a, b = got[name], moved[name]
            mismatched += [(name, e) for e in exponent_mismatch(a, b, bound, cfg.tol)]
            dev = max(dev, nv_deviation(a, b, bound))
        case = judged(f"{prefix}{key[0]}:{key[1]}", dev, cfg.tol, got, moved,
                      f"shift {s}; exponent mismatches {mismatched}" if mismatched else f"shift {s}")
        if mismatched:
            case.status = FAIL
        rep.cases.append(case)
    return rep
