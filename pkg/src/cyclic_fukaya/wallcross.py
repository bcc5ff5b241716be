"""Gluing maps between local charts and their compatibility with the cyclic action.

Conventions for the reparametrisation ``(v, M)``: ``M`` is an integer
unimodular matrix acting on the ``H_1`` lattice of the fiber, so boundary
classes move as ``x -> M x`` and characters are transported by
``gamma'(M x) = gamma(x)``. Torus coordinates then transform as
``y'_i = T^{-v_i} prod_j y_j^{(M^-1)_{ji}}``, which keeps every monomial
``y^{boundary}`` invariant, and ``b_high`` is pushed forward by the exterior
powers of ``B = (M^-1)^T`` on the ordered wedge basis ``e_S``
(``S`` increasing).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import CharacterMismatch, OutsideDomain
from .fukcat import HolonomyCharacter
from .graded import GradedVector, split_pr1, twist_by_order
from .intlinalg import det, exterior_power, transpose, unimodular_inverse
from .novikov import NovikovScalar, RingConfig, as_fraction, nv_exp, torus_monomial
from .potential import (DiskData, MCPoint, apply_tau, character_violations,
                        class_terms, sum_terms)
from .report import Report, judged


class PseudoIsotopy(DiskData):
    """Tables ``F_{k,beta}``; entries obey ``out = sum(in) + 1 - k - maslov``."""

    degree_shift = 1


@dataclass(frozen=True)
class IsotopyReparam:
    v: tuple[Fraction, ...]
    M: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(as_fraction(x) for x in self.v))
        object.__setattr__(self, "M", tuple(tuple(int(x) for x in row) for row in self.M))
        if len(self.M) != len(self.v) or any(len(r) != len(self.v) for r in self.M):
            raise ValueError("M must be square of size len(v)")
        if abs(det(self.M)) != 1:
            raise ValueError("M must have determinant +-1")

    @classmethod
    def identity(cls, rank: int) -> "IsotopyReparam":
        return cls((0,) * rank, tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.v)

    @property
    def M_inv(self):
        return unimodular_inverse([list(r) for r in self.M])

    def inverse(self) -> "IsotopyReparam":
        """The reparametrisation undoing this one: ``(-M^T v, M^-1)``."""
        w = [-sum(self.M[i][k] * self.v[i] for i in range(self.rank)) for k in range(self.rank)]
        return IsotopyReparam(tuple(w), tuple(tuple(r) for r in self.M_inv))

    def to_json(self):
        return {"v": [[x.numerator, x.denominator] for x in self.v], "M": [list(r) for r in self.M]}

    @classmethod
    def from_json(cls, obj) -> "IsotopyReparam":
        return cls(tuple(as_fraction(x) for x in obj["v"]), tuple(tuple(r) for r in obj["M"]))


def transport_character(gamma: HolonomyCharacter, r: IsotopyReparam) -> HolonomyCharacter:
    """``gamma'`` with ``gamma'(M x) = gamma(x)``."""
    minv = r.M_inv
    n = r.rank
    if gamma.exponents is not None:
        exps = [sum(minv[j][i] * gamma.exponents[j] for j in range(n)) for i in range(n)]
        return HolonomyCharacter.from_exponents(exps, gamma.order)
    vals = []
    for i in range(n):
        acc = 1 + 0j
        for j in range(n):
            acc *= gamma.values[j] ** minv[j][i]
        vals.append(acc)
    return HolonomyCharacter(tuple(vals))


def eval_f(F: PseudoIsotopy, pt: MCPoint, cfg: RingConfig,
           implicit_identity: bool = True) -> GradedVector:
    """``f(b) = sum T^E y^boundary F_{k,beta}(b_high^k)`` modulo ``T^cutoff``.

    With ``implicit_identity`` the term ``F_{1,0} = id`` is included, i.e.
    ``b_high`` itself is added.
    """
    total = sum_terms(F.basis, class_terms(F, pt, cfg), cfg.cutoff)
    if implicit_identity:
        total = total + pt.b_high.truncate(cfg.cutoff)
    return total


def f_star(F: PseudoIsotopy, pt: MCPoint, gamma: HolonomyCharacter | None, cfg: RingConfig,
           implicit_identity: bool = True) -> MCPoint:
    """``F_*(y, b) = (y_i exp(<pr_1 f, e_i^v>), pr_{!=1} f)``.

    ``gamma`` is accepted for symmetry with the other chart maps and unused.
    Raises OutsideDomain when a degree-1 coordinate of ``f`` has valuation
    ``<= 0`` (the exponential would not converge) or the new ``b_high``
    leaves ``Lambda_+``.
    """
    f = eval_f(F, pt, cfg, implicit_identity)
    pr1, rest = split_pr1(f)
    y = []
    for i, yi in enumerate(pt.y, start=1):
        g = pr1[F.basis.generator(i)]
        if g.terms and g.val <= 0:
            raise OutsideDomain(f"<pr_1 f, e_{i}> has valuation {g.val} <= 0")
        y.append(yi * nv_exp(g.with_cutoff(cfg.cutoff)) if g.terms else yi)
    try:
        return MCPoint(tuple(y), rest)
    except ValueError as exc:
        raise OutsideDomain(str(exc)) from None


def psi_reparam(r: IsotopyReparam, pt: MCPoint, cfg: RingConfig) -> MCPoint:
    """Transport coordinates through ``M`` and rescale ``y'_i`` by ``T^{-v_i}``."""
    if r.rank != pt.rank:
        raise ValueError("reparametrisation rank differs from the point")
    minv = r.M_inv
    n = r.rank
    y = []
    for i in range(n):
        exps = [minv[j][i] for j in range(n)]
        yi = torus_monomial(pt.y, exps, cfg.cutoff + r.v[i]).shift(-r.v[i])
        if yi.is_zero():
            raise OutsideDomain(f"y'_{i + 1} vanishes modulo T^{cfg.cutoff}; raise the cutoff")
        y.append(yi)
    return MCPoint(tuple(y), pushforward_b(pt.b_high, minv))


def pushforward_b(b: GradedVector, minv) -> GradedVector:
    """Exterior-power action of ``B = (M^-1)^T`` on a torus-basis vector."""
    basis = b.basis
    bmat = transpose(minv)
    coords: dict[str, NovikovScalar] = {}
    by_degree: dict[int, list] = {}
    for name, c in b.coords.items():
        by_degree.setdefault(basis.degree(name), []).append((name, c))
    for d, items in by_degree.items():
        _, minors = exterior_power(bmat, d)
        for name, c in items:
            s = tuple(i - 1 for i in basis.subset(name))
            for (t, ss), m in minors.items():
                if ss != s:
                    continue
                tn = basis.name_of(tuple(i + 1 for i in t))
                term = c.scale(m)
                coords[tn] = coords[tn] + term if tn in coords else term
    return GradedVector(basis, coords)


def gluing(F: PseudoIsotopy, r: IsotopyReparam, pt: MCPoint, gamma, cfg: RingConfig,
           implicit_identity: bool = True) -> MCPoint:
    """``Psi = psi o F_*``."""
    return psi_reparam(r, f_star(F, pt, gamma, cfg, implicit_identity), cfg)


def check_commute(F: PseudoIsotopy, r: IsotopyReparam, pt: MCPoint, gamma: HolonomyCharacter,
                  gamma_prime: HolonomyCharacter | None, cfg: RingConfig,
                  implicit_identity: bool = True, label: str = "") -> Report:
    """Verify ``f(tau b) = zeta id^zeta f(b)``, ``F_* tau = tau F_*`` and ``tau' Psi = Psi tau``."""
    bad = character_violations(F.classes, gamma, cfg)
    if bad:
        raise CharacterMismatch(f"gamma(boundary) != zeta^maslov on classes {bad}")
    expected_prime = transport_character(gamma, r)
    if gamma_prime is None:
        gamma_prime = expected_prime
    elif gamma_prime.deviation(expected_prime) > cfg.tol:
        raise CharacterMismatch("gamma' is not gamma transported through M")
    prefix = f"{label}:" if label else ""
    rep = Report("wallcross")
    moved = apply_tau(pt, gamma, cfg)

    f_moved = eval_f(F, moved, cfg, implicit_identity)
    f_twisted = twist_by_order(eval_f(F, pt, cfg, implicit_identity), cfg, extra=1)
    rep.cases.append(judged(prefix + "f-intertwines", f_moved.deviation(f_twisted, cfg.cutoff),
                            cfg.tol, f_moved, f_twisted))

    a = f_star(F, moved, gamma, cfg, implicit_identity)
    b = apply_tau(f_star(F, pt, gamma, cfg, implicit_identity), gamma, cfg)
    rep.cases.append(judged(prefix + "F*-commutes", a.deviation(b, cfg.cutoff), cfg.tol))

    a = psi_reparam(r, moved, cfg)
    b = apply_tau(psi_reparam(r, pt, cfg), gamma_prime, cfg)
    rep.cases.append(judged(prefix + "psi-commutes", a.deviation(b, cfg.cutoff), cfg.tol))

    a = gluing(F, r, moved, gamma, cfg, implicit_identity)
    b = apply_tau(gluing(F, r, pt, gamma, cfg, implicit_identity), gamma_prime, cfg)
    rep.cases.append(judged(prefix + "Psi-commutes", a.deviation(b, cfg.cutoff), cfg.tol,
                            [str(v) for v in a.y], [str(v) for v in b.y]))
    return rep
