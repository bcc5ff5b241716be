"""Truncated Novikov-ring arithmetic.

A :class:`NovikovScalar` is a finite sum ``sum a_i T^{lambda_i}`` with exact
rational exponents and complex coefficients, meaningful modulo ``T^cutoff``.
The same type houses the whole family of Novikov rings: membership in
Lambda_0, Lambda_+ or U_Lambda is a question about the valuation, answered by
the predicates on the class.

Coefficients are plain Python complex numbers. They are compared with a
tolerance, but arithmetic never rounds anything to zero; only exactly-zero
coefficients are dropped.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Iterable, Mapping, Union

from .errors import DomainError, IllConditioned

INF = math.inf

Rational = Union[int, Fraction, str]
Cutoff = Union[Fraction, float]  # float only ever holds INF


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not an exponent")
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, (tuple, list)) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    raise TypeError(f"exponents must be exact rationals, got {x!r}")


def as_cutoff(x) -> Cutoff:
    if x is None or x == INF or x == "inf":
        return INF
    return as_fraction(x)


@dataclass(frozen=True)
class RingConfig:
    """Truncation, tolerance and the cyclic order ``n``.

    ``zeta`` is the primitive ``2n``-th root of unity ``e^{2 pi i / 2n}``.
    """

    cutoff: Fraction = Fraction(2)
    tol: float = 1e-9
    n: int = 3

    def __post_init__(self):
        object.__setattr__(self, "cutoff", as_fraction(self.cutoff))
        if self.cutoff <= 0:
            raise ValueError("cutoff must be positive")
        if not 0 <= self.tol < 1:
            raise ValueError("tol must lie in [0, 1)")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("n must be a positive integer")

    @property
    def order(self) -> int:
        return 2 * self.n

    @property
    def zeta(self) -> complex:
        return cmath.exp(1j * math.pi / self.n)

    def zeta_pow(self, k: int) -> complex:
        """``zeta**k`` evaluated from the reduced exponent, so no drift accumulates."""
        k %= 2 * self.n
        return cmath.exp(1j * math.pi * k / self.n)


class NovikovScalar:
    """Immutable truncated series with exact exponents.

    ``terms`` is a tuple of ``(exponent, coefficient)`` pairs sorted by
    exponent, with no exactly-zero coefficient and every exponent below
    ``cutoff``.
    """

    __slots__ = ("terms", "cutoff", "_hash")

    def __init__(self, terms: Iterable | Mapping = (), cutoff=INF):
        cutoff = as_cutoff(cutoff)
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: dict[Fraction, complex] = {}
        for e, c in terms:
            e = as_fraction(e)
            if e >= cutoff:
                continue
            acc[e] = acc.get(e, 0j) + complex(c)
        object.__setattr__(
            self,
            "terms",
            tuple((e, acc[e]) for e in sorted(acc) if acc[e] != 0),
        )
        object.__setattr__(self, "cutoff", cutoff)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("NovikovScalar is immutable")

    @classmethod
    def _raw(cls, terms: tuple, cutoff) -> "NovikovScalar":
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "cutoff", cutoff)
        object.__setattr__(obj, "_hash", None)
        return obj

    # -- constructors ---------------------------------------------------
    @classmethod
    def const(cls, c: complex, cutoff=INF) -> "NovikovScalar":
        return cls([(0, c)], cutoff)

    @classmethod
    def monomial(cls, c: complex, e: Rational, cutoff=INF) -> "NovikovScalar":
        return cls([(e, c)], cutoff)

    @classmethod
    def zero(cls, cutoff=INF) -> "NovikovScalar":
        return cls((), cutoff)

    @classmethod
    def one(cls, cutoff=INF) -> "NovikovScalar":
        return cls.const(1, cutoff)

    @classmethod
    def coerce(cls, x) -> "NovikovScalar":
        if isinstance(x, NovikovScalar):
            return x
        if isinstance(x, Number):
            return cls.const(complex(x))
        raise TypeError(f"cannot coerce {x!r} to NovikovScalar")

    # -- inspection -----------------------------------------------------
    @property
    def val(self):
        return self.terms[0][0] if self.terms else INF

    @property
    def leading_coefficient(self) -> complex:
        return self.terms[0][1] if self.terms else 0j

    def is_zero(self) -> bool:
        return not self.terms

    def in_lambda0(self) -> bool:
        return self.val >= 0

    def in_lambda_plus(self) -> bool:
        return self.val > 0

    def in_unit_group(self) -> bool:
        """Membership in U_Lambda = C^x + Lambda_+ (the domain of log)."""
        return bool(self.terms) and self.val == 0

    def coefficient(self, e: Rational) -> complex:
        e = as_fraction(e)
        for ee, c in self.terms:
            if ee == e:
                return c
        return 0j

    def exponents(self) -> tuple:
        return tuple(e for e, _ in self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    # -- truncation -----------------------------------------------------
    def truncate(self, cutoff) -> "NovikovScalar":
        cutoff = min(self.cutoff, as_cutoff(cutoff))
        if cutoff == self.cutoff:
            return self
        return NovikovScalar._raw(
            tuple(t for t in self.terms if t[0] < cutoff), cutoff
        )

    def with_cutoff(self, cutoff) -> "NovikovScalar":
        """Reinterpret the stored terms at a new cutoff.

        Raising the cutoff asserts that the stored terms are exact up to it;
        callers use this only for data they know to be exact.
        """
        cutoff = as_cutoff(cutoff)
        return NovikovScalar._raw(
            tuple(t for t in self.terms if t[0] < cutoff), cutoff
        )

    def shift(self, e: Rational) -> "NovikovScalar":
        """Multiply by the exact monomial ``T^e``; the cutoff moves along."""
        e = as_fraction(e)
        return NovikovScalar._raw(
            tuple((x + e, c) for x, c in self.terms), self.cutoff + e
        )

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Number):
            other = NovikovScalar.const(other)
        if not isinstance(other, NovikovScalar):
            return NotImplemented
        return NovikovScalar(
            self.terms + other.terms, min(self.cutoff, other.cutoff)
        )

    __radd__ = __add__

    def __neg__(self):
        return NovikovScalar._raw(
            tuple((e, -c) for e, c in self.terms), self.cutoff
        )

    def __sub__(self, other):
        if isinstance(other, Number):
            other = NovikovScalar.const(other)
        if not isinstance(other, NovikovScalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: complex) -> "NovikovScalar":
        c = complex(c)
        if c == 0:
            return NovikovScalar._raw((), self.cutoff)
        return NovikovScalar._raw(
            tuple((e, x * c) for e, x in self.terms), self.cutoff
        )

    def __mul__(self, other):
        if isinstance(other, Number):
            return self.scale(other)
        if not isinstance(other, NovikovScalar):
            return NotImplemented
        return nv_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            return self.scale(1 / complex(other))
        if isinstance(other, NovikovScalar):
            return nv_mul(self, nv_inv(other))
        return NotImplemented

    def __pow__(self, p: int):
        if int(p) != p:
            raise TypeError("only integer powers")
        p = int(p)
        if p < 0:
            return nv_inv(self) ** (-p)
        result = NovikovScalar.one(self.cutoff)
        base = self
        while p:
            if p & 1:
                result = nv_mul(result, base)
            p >>= 1
            if p:
                base = nv_mul(base, base)
        return result

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        # exact structural equality; use nv_eq for tolerance comparisons
        if isinstance(other, Number):
            other = NovikovScalar.const(other, self.cutoff)
        if not isinstance(other, NovikovScalar):
            return NotImplemented
        return self.terms == other.terms and self.cutoff == other.cutoff

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.terms, self.cutoff)))
        return self._hash

    def __repr__(self):
        return f"NovikovScalar({self}, cutoff={_fmt_q(self.cutoff)})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            coef = _fmt_c(c)
            if e == 0:
                parts.append(coef)
            else:
                mono = "T" if e == 1 else f"T^({e})"
                parts.append(mono if coef == "1" else f"{coef}*{mono}")
        return " + ".join(parts)

    # -- JSON -----------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "terms": [
                [e.numerator, e.denominator, c.real, c.imag] for e, c in self.terms
            ],
            "cutoff": "inf"
            if self.cutoff == INF
            else [self.cutoff.numerator, self.cutoff.denominator],
        }

    @classmethod
    def from_json(cls, obj) -> "NovikovScalar":
        if isinstance(obj, (int, float)):
            return cls.const(obj)
        terms = [
            (Fraction(int(t[0]), int(t[1])), complex(t[2], t[3] if len(t) > 3 else 0))
            for t in obj.get("terms", [])
        ]
        return cls(terms, as_cutoff(obj.get("cutoff", "inf")))


def _fmt_q(q) -> str:
    return "inf" if q == INF else str(q)


def _fmt_c(c: complex) -> str:
    if c.imag == 0:
        r = c.real
        return str(int(r)) if r == int(r) else repr(r)
    return repr(c)


T = NovikovScalar.monomial(1, 1)


# -- ring operations ---------------------------------------------------------


def nv_val(a: NovikovScalar):
    """Leading exponent of ``a``; ``INF`` for zero."""
    return a.val


def nv_mul(a: NovikovScalar, b: NovikovScalar) -> NovikovScalar:
    cutoff = min(a.cutoff, b.cutoff)
    acc: dict[Fraction, complex] = {}
    for e1, c1 in a.terms:
        if e1 + (b.terms[0][0] if b.terms else 0) >= cutoff:
            break
        for e2, c2 in b.terms:
            e = e1 + e2
            if e >= cutoff:
                break
            acc[e] = acc.get(e, 0j) + c1 * c2
    return NovikovScalar._raw(
        tuple((e, acc[e]) for e in sorted(acc) if acc[e] != 0), cutoff
    )


def _unit_split(a: NovikovScalar):
    """Write ``a = c T^v (1 + r)`` with ``val(r) > 0``; return ``(c, v, r)``.

    ``r`` is given relative to ``T^v``, so its cutoff is ``a.cutoff - v``.
    """
    v, c = a.terms[0]
    r = NovikovScalar._raw(
        tuple((e - v, x / c) for e, x in a.terms[1:]), a.cutoff - v
    )
    return c, v, r


def _geometric(r: NovikovScalar, cutoff) -> NovikovScalar:
    """``1/(1+r)`` modulo ``T^cutoff`` for ``val(r) > 0``."""
    total = NovikovScalar.one(cutoff)
    if r.is_zero():
        return total
    if cutoff == INF:
        raise DomainError("inverting a non-monomial requires a finite cutoff")
    neg_r = (-r).with_cutoff(cutoff)
    power = total
    while True:
        power = nv_mul(power, neg_r)
        if power.is_zero():
            return total
        total = total + power


def nv_inv(a: NovikovScalar, tol: float = 1e-9) -> NovikovScalar:
    """Inverse of ``a`` such that ``a * nv_inv(a) == 1`` below the product cutoff.

    Computed as the inverse leading monomial times a geometric series in the
    relative remainder. For ``val(a) < 0`` the result carries the larger
    cutoff ``cutoff - val(a)`` so that the product still reaches ``cutoff``.
    """
    if a.is_zero():
        raise ZeroDivisionError("Novikov scalar has no terms")
    c, v, r = _unit_split(a)
    if abs(c) <= tol:
        raise IllConditioned(f"leading coefficient {c!r} is below tol={tol}")
    cutoff = a.cutoff if v >= 0 else a.cutoff - v
    series = _geometric(r.with_cutoff(cutoff + v), cutoff + v)
    return series.scale(1 / c).shift(-v).truncate(cutoff).with_cutoff(cutoff)


def nv_exp(a: NovikovScalar) -> NovikovScalar:
    """``exp(a)`` for ``val(a) >= 0``: ``e^{a_0}`` times the truncated series."""
    if a.terms and a.terms[0][0] < 0:
        raise DomainError("exp is undefined for negative exponents")
    c0 = a.coefficient(0)
    pos = NovikovScalar._raw(tuple(t for t in a.terms if t[0] > 0), a.cutoff)
    lead = cmath.exp(c0)
    total = NovikovScalar.const(lead, a.cutoff)
    if pos.is_zero():
        return total
    if a.cutoff == INF:
        raise DomainError("exp of a non-constant series requires a finite cutoff")
    term = NovikovScalar.const(lead, a.cutoff)
    k = 0
    while True:
        k += 1
        term = nv_mul(term, pos).scale(1 / k)
        if term.is_zero():
            return total
        total = total + term


def nv_deviation(a: NovikovScalar, b: NovikovScalar, cutoff=INF) -> float:
    """Largest coefficient difference below ``min(a.cutoff, b.cutoff, cutoff)``."""
    bound = min(a.cutoff, b.cutoff, as_cutoff(cutoff))
    diff: dict[Fraction, complex] = {}
    for e, c in a.terms:
        if e < bound:
            diff[e] = diff.get(e, 0j) + c
    for e, c in b.terms:
        if e < bound:
            diff[e] = diff.get(e, 0j) - c
    return max((abs(d) for d in diff.values()), default=0.0)


def nv_eq(a: NovikovScalar, b: NovikovScalar, cfg: RingConfig) -> bool:
    return nv_deviation(a, b, cfg.cutoff) <= cfg.tol


def exponent_mismatch(a: NovikovScalar, b: NovikovScalar, cutoff=INF, tol=0.0):
    """Exponents present in one operand but not the other, below the common cutoff.

    Coefficients of magnitude ``<= tol`` count as absent, so float residue from
    cancellation does not register as a spurious exponent.
    """
    bound = min(a.cutoff, b.cutoff, as_cutoff(cutoff))
    ea = {e for e, c in a.terms if e < bound and abs(c) > tol}
    eb = {e for e, c in b.terms if e < bound and abs(c) > tol}
    return sorted(ea ^ eb)


def unit_power(r: NovikovScalar, p: int, cutoff) -> NovikovScalar:
    """``(1 + r)^p`` modulo ``T^cutoff`` for ``val(r) > 0`` and any integer ``p``."""
    if cutoff <= 0:
        return NovikovScalar.zero(cutoff)
    r = r.truncate(cutoff)
    base = NovikovScalar([(0, 1)] + list(r.terms), r.cutoff)
    if p < 0:
        base = _geometric(r, r.cutoff)
        p = -p
    result = NovikovScalar.one(base.cutoff)
    while p:
        if p & 1:
            result = nv_mul(result, base)
        p >>= 1
        if p:
            base = nv_mul(base, base)
    return result


def torus_monomial(ys, exps, cutoff) -> NovikovScalar:
    """``prod y_i^{p_i}`` modulo ``T^cutoff``.

    Works at relative precision: each ``y_i`` is split as ``c T^v (1 + r)``,
    the unit parts are multiplied modulo ``T^{cutoff - sum p_i v_i}`` and the
    leading monomial is applied last. This keeps truncation correct when some
    factors have negative valuation.
    """
    cutoff = as_cutoff(cutoff)
    lead = 1 + 0j
    shift = Fraction(0)
    units = []
    for y, p in zip(ys, exps):
        p = int(p)
        if p == 0:
            continue
        if y.is_zero():
            if p < 0:
                raise ZeroDivisionError("negative power of a zero coordinate")
            return NovikovScalar.zero(cutoff)
        c, v, r = _unit_split(y)
        lead *= c**p
        shift += p * v
        units.append((r, p))
    rel = cutoff - shift
    if rel <= 0:
        return NovikovScalar.zero(cutoff)
    acc = NovikovScalar.one(rel)
    for r, p in units:
        acc = nv_mul(acc, unit_power(r, p, rel))
    return acc.scale(lead).shift(shift)
