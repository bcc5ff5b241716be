"""Seeded generators of random degree-valid test data.

Every generator takes a :class:`random.Random` instance, so a suite run is
fully determined by its seed.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from .fukcat import (CategoryData, HolonomyCharacter, LagrangianLabel,
                     MorphismComponent, PolygonClass)
from .graded import UNIT, GradedBasis, GradedVector, MultilinearTable
from .novikov import NovikovScalar, RingConfig
from .potential import DiskClass, FiberAlgebra, MCPoint
from .wallcross import IsotopyReparam, PseudoIsotopy


def random_complex(rng: random.Random, lo: float = 0.5, hi: float = 2.0) -> complex:
    import cmath
    return cmath.rect(rng.uniform(lo, hi), rng.uniform(-3.14159, 3.14159))


def random_scalar(rng: random.Random, cutoff=2, min_exp=0, max_terms: int = 4,
                  den: int = 6, span: int = 2, tail: tuple[float, float] = (0.5, 2.0)) -> NovikovScalar:
    """A nonzero series with exponents in ``[min_exp, min_exp + span)`` on a ``1/den`` grid.

    The leading coefficient has modulus in ``[0.5, 2]``; the others have
    modulus in ``tail``.
    """
    min_exp = Fraction(min_exp)
    k = rng.randint(1, max_terms)
    exps = {min_exp + Fraction(rng.randrange(1, span * den), den) for _ in range(k - 1)}
    terms = {e: random_complex(rng, *tail) for e in sorted(exps)}
    terms[min_exp] = random_complex(rng)
    return NovikovScalar(terms, cutoff)


def _coefficient(rng: random.Random) -> NovikovScalar:
    """A table coefficient in ``Lambda_0``: one or two terms, small exponents."""
    terms = {Fraction(0): random_complex(rng)}
    if rng.random() < 0.4:
        terms[Fraction(rng.randint(1, 4), 4)] = random_complex(rng)
    return NovikovScalar(terms)


# -- categories --------------------------------------------------------------

def random_category(rng: random.Random, n: int, max_arity: int = 4, max_components: int = 6,
                    max_half_dim: int = 3, max_classes: int = 5) -> CategoryData:
    """A degree-valid rank-one category with s-consistent component pairs."""
    order = 2 * n
    h = rng.randint(1, max_half_dim)
    n_obj = rng.randint(1, 3)
    objects, el = {}, {}
    for i in range(n_obj):
        oriented = rng.random() < 0.5
        rank = rng.randint(0, 2)
        lab = LagrangianLabel(f"L{i}", rank, oriented, 2 * h)
        chi = HolonomyCharacter.from_exponents([rng.randrange(order) for _ in range(rank)], order)
        step = 2 if oriented else 1
        el_exps = [step * rng.randrange(order // step) for _ in range(rank)]
        objects[lab.name] = (lab, chi)
        el[lab.name] = HolonomyCharacter.from_exponents(el_exps, order)
    comps = {}
    names = list(objects)
    for j in range(rng.randint(1, max(1, max_components // 2))):
        src = names[0] if j == 0 else rng.choice(names)
        tgt = names[0] if j == 0 else rng.choice(names)
        dim_c = rng.randint(0, h)
        elements = [(f"x{j}_{d}_{t}", d) for d in range(dim_c + 1) for t in range(rng.randint(1, 2))]
        basis = GradedBasis(tuple(elements))
        s_a = rng.randrange(order)
        s_b = (dim_c - h - s_a) % order
        a, b = f"C{j}a", f"C{j}b"
        comps[a] = MorphismComponent(a, src, tgt, dim_c, basis, s_a, b)
        comps[b] = MorphismComponent(b, tgt, src, dim_c, basis, s_b, a)
    classes = []
    for ci in range(rng.randint(1, max_classes)):
        made = _random_class(rng, f"b{ci}", comps, h, max_arity)
        if made is not None:
            classes.append(made)
    if not classes:  # the loop pair on L0 always admits an arity-0 class
        classes.append(_random_class(rng, "b0", comps, h, 0, force_loop=True))
    return CategoryData(n, objects, el, comps, tuple(classes))


def _random_class(rng, label, comps, h, max_arity, force_loop=False):
    by_source: dict[str, list] = {}
    for c in comps.values():
        by_source.setdefault(c.source, []).append(c)
    for _ in range(20):
        k = 0 if force_loop else rng.randint(0, max_arity)
        start = "L0" if force_loop else rng.choice(sorted(by_source))
        chain, at = [], start
        for _ in range(k):
            if at not in by_source:
                break
            c = rng.choice(by_source[at])
            chain.append(c)
            at = c.target
        if len(chain) != k:
            continue
        closing = [c for c in by_source.get(at, []) if c.target == start]
        if not closing:
            continue
        c0 = rng.choice(closing)
        out_basis = comps[c0.reverse].basis
        d0 = c0.dim_c - h
        key = tuple(rng.choice(c.basis.names) for c in chain)
        out = rng.choice(out_basis.names)
        sum_in = sum(c.basis.degree(x) for c, x in zip(chain, key))
        shift = out_basis.degree(out) - sum_in
        maslov = d0 + 2 - k - shift
        entries = {key: GradedVector(out_basis, {out: _coefficient(rng)})}
        for _ in range(rng.randint(0, 3)):
            key = tuple(rng.choice(c.basis.names) for c in chain)
            target = shift + sum(c.basis.degree(x) for c, x in zip(chain, key))
            choices = out_basis.of_degree(target)
            if choices and key not in entries:
                entries[key] = GradedVector(out_basis, {rng.choice(choices): _coefficient(rng)})
        cls = PolygonClass(label, k, Fraction(rng.randint(0, 6), rng.randint(1, 4)), maslov,
                           tuple(c.id for c in chain) + (c0.id,))
        table = MultilinearTable(k, entries, tuple(c.basis for c in chain), out_basis)
        return cls, table
    return None


def perturb_output_degree(cat: CategoryData) -> tuple[CategoryData, str]:
    """Raise the output degree of one class's table by one, keeping everything else.

    Returns the (non-strict) perturbed category and the label of the class
    that was changed. Raises ValueError if no table can be raised (every
    output already sits in the top degree of its basis).
    """
    for idx, (cls, table) in enumerate(cat.classes):
        if not table.entries:
            continue
        ob = table.out_basis
        up = {}
        for key, vec in table.entries.items():
            d = table.output_degree(key)
            higher = ob.of_degree(d + 1)
            if not higher:
                break
            up[key] = GradedVector(ob, {higher[0]: sum(vec.coords.values(), NovikovScalar.zero())})
        else:
            if any(v.is_zero() for v in up.values()):
                continue
            new = MultilinearTable(table.arity, up, table.in_bases, ob)
            tables = [t for _, t in cat.classes]
            tables[idx] = new
            return cat.with_tables(tables, strict=False), cls.label
    raise ValueError("no table output can be raised by one degree")


# -- fiber algebras and pseudo-isotopies ---------------------------------------

def _random_boundary(rng, rank):
    while True:
        b = [rng.randint(-1, 1) for _ in range(rank)]
        if any(b):
            return b


def _divisor_close(tables: dict, label: str, boundary, basis: GradedBasis):
    """Add ``t_{k+1}(e_j, x) = <boundary, e_j> t_k(x)`` for every stored entry."""
    for (lab, k), t in sorted(tables.items()):
        if lab != label:
            continue
        extra = dict(tables[(lab, k + 1)].entries) if (lab, k + 1) in tables else {}
        for key, out in t.entries.items():
            if any(basis.degree(x) == 1 for x in key):
                continue
            for j, bj in enumerate(boundary, start=1):
                if bj:
                    extra[(basis.generator(j),) + key] = out * complex(bj)
        if extra:
            tables[(lab, k + 1)] = MultilinearTable.on_basis(basis, k + 1, extra)


def _entries(rng, basis, degrees, out_fn, count):
    entries = {}
    for _ in range(count):
        key = tuple(rng.choice(basis.of_degree(d)) for d in degrees)
        entries[key] = out_fn()
    return entries


def random_fiber_algebra(rng: random.Random, cfg: RingConfig, rank: int | None = None,
                         max_classes: int = 4, max_arity: int = 3) -> FiberAlgebra:
    """Unit-valued tables (so every point is weak MC), consistent with some gamma.

    Boundaries are random; each Maslov index is chosen in the residue class
    ``2 <boundary, h> (mod 2n)`` for a hidden ``h``, so a character with
    ``gamma(boundary) = zeta^maslov`` exists. Inputs have odd degree > 1 and
    the data is closed under single degree-1 insertions.
    """
    rank = rank or rng.randint(2, 5)
    basis = GradedBasis.torus(rank)
    odd = [d for d in range(3, rank + 1, 2)]
    h = [rng.randrange(cfg.n) for _ in range(rank)]
    unit = lambda: GradedVector(basis, {UNIT: _coefficient(rng)})
    classes, tables = [], {}
    for ci in range(rng.randint(1, max_classes)):
        for _ in range(50):
            b = _random_boundary(rng, rank)
            mu0 = (2 * sum(x * y for x, y in zip(b, h))) % cfg.order
            shapes = _unit_shapes(mu0, cfg.order, odd, max_arity)
            if shapes:
                break
        else:
            continue
        mu, degree_lists = rng.choice(shapes)
        label = f"D{ci}"
        classes.append(DiskClass(label, Fraction(rng.randint(2, 9), 6), mu, b))
        for degs in degree_lists:
            k = len(degs)
            old = dict(tables[(label, k)].entries) if (label, k) in tables else {}
            old.update(_entries(rng, basis, degs, unit, rng.randint(1, 2)))
            tables[(label, k)] = MultilinearTable.on_basis(basis, k, old)
        _divisor_close(tables, label, b, basis)
    if not classes:
        return random_fiber_algebra(rng, cfg, rank, max_classes, max_arity)
    return FiberAlgebra(rank, tuple(classes), tables, basis)


def _unit_shapes(mu0, order, odd, max_arity):
    """``(maslov, [degree tuples])`` with unit output: ``sum(d - 1) = maslov - 2``."""
    out = []
    for mu in range(mu0, mu0 + 3 * order + 1, order):
        if mu < 2:
            continue
        target = mu - 2
        found = [degs for k in range(max_arity + 1)
                 for degs in product(odd, repeat=k) if sum(d - 1 for d in degs) == target]
        if found:
            out.append((mu, found[:3]))
    return out


def random_isotopy(rng: random.Random, cfg: RingConfig, rank: int | None = None,
                   max_classes: int = 3) -> tuple[PseudoIsotopy, IsotopyReparam]:
    """Pseudo-isotopy tables with odd outputs plus a random reparametrisation."""
    rank = rank or rng.randint(2, 5)
    basis = GradedBasis.torus(rank)
    odd_in = [d for d in range(3, rank + 1, 2)]
    odd_out = [d for d in range(1, rank + 1, 2)]
    h = [rng.randrange(cfg.n) for _ in range(rank)]
    classes, tables = [], {}
    for ci in range(rng.randint(1, max_classes)):
        for _ in range(50):
            b = _random_boundary(rng, rank)
            mu0 = (2 * sum(x * y for x, y in zip(b, h))) % cfg.order
            shapes = []
            for mu in range(mu0 - 3 * cfg.order, mu0 + 3 * cfg.order + 1, cfg.order):
                for k in range(3):
                    for degs in product(odd_in, repeat=k):
                        o = sum(degs) + 1 - k - mu
                        if o in odd_out:
                            shapes.append((mu, degs, o))
            if shapes:
                break
        else:
            continue
        mu, degs, o = rng.choice(shapes)
        label = f"B{ci}"
        classes.append(DiskClass(label, Fraction(rng.randint(6, 12), 6), mu, b))

        def out_vec():
            names = rng.sample(basis.of_degree(o), min(2, len(basis.of_degree(o))))
            return GradedVector(basis, {x: _coefficient(rng) for x in names})

        tables[(label, len(degs))] = MultilinearTable.on_basis(
            basis, len(degs), _entries(rng, basis, degs, out_vec, rng.randint(1, 2)))
        _divisor_close(tables, label, b, basis)
    if not classes:
        return random_isotopy(rng, cfg, rank, max_classes)
    return PseudoIsotopy(rank, tuple(classes), tables, basis), random_reparam(rng, rank)


def random_unimodular(rng: random.Random, rank: int, steps: int = 4):
    m = [[int(i == j) for j in range(rank)] for i in range(rank)]
    if rank < 2:
        return [[rng.choice((1, -1))]] if rank else m
    for _ in range(steps):
        i, j = rng.sample(range(rank), 2)
        s = rng.choice((1, -1))
        for r in range(rank):
            m[r][j] += s * m[r][i]
    if rng.random() < 0.3:
        i = rng.randrange(rank)
        for r in range(rank):
            m[r][i] = -m[r][i]
    return m


def random_reparam(rng: random.Random, rank: int) -> IsotopyReparam:
    v = tuple(Fraction(rng.randint(-4, 4), 12) for _ in range(rank))
    return IsotopyReparam(v, tuple(tuple(r) for r in random_unimodular(rng, rank)))


def random_point(rng: random.Random, rank: int, cutoff=2, val_bound=Fraction(1, 6),
                 with_b_high: bool = True) -> MCPoint:
    """``y_i = c T^v (1 + higher terms)`` with ``|v| < val_bound``; small ``b_high``.

    Tail coefficients stay below half the leading one: the chart maps raise
    coordinates to negative powers, whose series coefficients grow like
    ``(tail / lead)^(cutoff / step)``, and a ratio above one would let float
    error swamp the tolerance at larger cutoffs.
    """
    den = 36
    top = int(val_bound * den) - 1
    y = []
    for _ in range(rank):
        v = Fraction(rng.randint(-top, top), den)
        lead = random_complex(rng)
        terms = {v: lead}
        for _ in range(rng.randint(0, 2)):
            terms[v + Fraction(rng.randint(1, 12), 6)] = random_complex(rng, 0.1, 0.5) * abs(lead)
        y.append(NovikovScalar(terms))
    basis = GradedBasis.torus(rank)
    coords = {}
    if with_b_high:
        for name in basis.names:
            d = basis.degree(name)
            if d > 1 and d % 2 and rng.random() < 0.7:
                coords[name] = NovikovScalar.monomial(random_complex(rng), Fraction(rng.randint(1, 8), 8))
    return MCPoint(tuple(y), GradedVector(basis, coords))
