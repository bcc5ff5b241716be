import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclic_fukaya.errors import CharacterMismatch, OutsideDomain
from cyclic_fukaya.fukcat import HolonomyCharacter
from cyclic_fukaya.graded import GradedBasis, GradedVector
from cyclic_fukaya.jsonio import isotopy_from_json, isotopy_to_json, load_builtin
from cyclic_fukaya.novikov import NovikovScalar, RingConfig, nv_deviation, nv_eq
from cyclic_fukaya.potential import MCPoint, check_divisor_axiom, compute_gamma
from cyclic_fukaya.randomdata import random_isotopy, random_point, random_reparam
from cyclic_fukaya.wallcross import (IsotopyReparam, PseudoIsotopy, check_commute, eval_f, f_star,
                                     gluing, psi_reparam, pushforward_b, transport_character)

CFG = RingConfig(n=3, cutoff=3)
B2 = GradedBasis.torus(2)
GAMMA = HolonomyCharacter.from_exponents([2, 2], 6)


def basic():
    return isotopy_from_json(load_builtin("wallcross-basic"))


def mono(e, c=1):
    return NovikovScalar.monomial(c, Q(e))


def e1_minus_e2(coeff):
    return GradedVector(B2, {"e1": coeff, "e2": coeff.scale(-1)})


# -- f ---------------------------------------------------------------------------------

def test_empty_isotopy_gives_zero():
    F = PseudoIsotopy(2, (), {})
    assert eval_f(F, MCPoint.at([1, 1]), CFG, implicit_identity=False).is_zero()


def test_single_class_at_one():
    F, _ = basic()
    got = eval_f(F, MCPoint.at([1, 1]), CFG)
    assert got.deviation(e1_minus_e2(mono(1))) == 0


def test_single_class_monomial_transform():
    F, _ = basic()
    got = eval_f(F, MCPoint.at([1, mono(Q(-1, 2))]), CFG)
    assert got.deviation(e1_minus_e2(mono(Q(3, 2)))) == 0
    assert got["e1"].exponents() == (Q(3, 2),)


def test_implicit_identity_adds_b_high():
    b = GradedVector.element(GradedBasis.torus(2), "e12", mono(1))  # even degree is not allowed
    with pytest.raises(ValueError):
        MCPoint.at([1, 1], b)
    b3 = GradedVector.element(GradedBasis.torus(3), "e123", mono(Q(1, 2)))
    F3 = PseudoIsotopy(3, (), {})
    pt = MCPoint.at([1, 1, 1], b3)
    assert eval_f(F3, pt, CFG).deviation(b3) == 0
    assert eval_f(F3, pt, CFG, implicit_identity=False).is_zero()


# -- F_* ---------------------------------------------------------------------------------

def test_zero_isotopy_is_identity_with_implicit_identity():
    b3 = GradedVector.element(GradedBasis.torus(3), "e123", mono(Q(1, 2)))
    pt = MCPoint.at([mono(Q(1, 12)), 2, 1j], b3)
    F3 = PseudoIsotopy(3, (), {})
    assert f_star(F3, pt, None, CFG).deviation(pt) < 1e-12
    # without F_{1,0} = id the higher part is dropped
    dropped = f_star(F3, pt, None, CFG, implicit_identity=False)
    assert dropped.b_high.is_zero() and dropped.y == pt.y


def test_f_star_exponentiates():
    F, _ = basic()
    got = f_star(F, MCPoint.at([1, 1]), GAMMA, CFG)
    want = [NovikovScalar({0: 1, 1: 1, 2: 0.5}, 3), NovikovScalar({0: 1, 1: -1, 2: 0.5}, 3)]
    assert all(nv_eq(a, b, CFG) for a, b in zip(got.y, want))
    assert got.b_high.is_zero()


def test_f_star_outside_domain():
    F, _ = basic()
    with pytest.raises(OutsideDomain):
        f_star(F, MCPoint.at([mono(-1), 1]), GAMMA, CFG)


# -- psi -----------------------------------------------------------------------------

def test_psi_shift():
    r = IsotopyReparam((Q(1, 3), 0), ((1, 0), (0, 1)))
    y = [NovikovScalar({0: 2, 1: 1}), mono(Q(1, 2))]
    got = psi_reparam(r, MCPoint.at(y), CFG)
    assert nv_eq(got.y[0], y[0].shift(Q(-1, 3)), CFG)
    assert nv_eq(got.y[1], y[1], CFG)


def test_psi_identity():
    rng = random.Random(1)
    pt = random_point(rng, 3)
    assert psi_reparam(IsotopyReparam.identity(3), pt, CFG).deviation(pt, CFG.cutoff) < 1e-12


def test_psi_lattice_action():
    pt = MCPoint.at([mono(1), mono(2)])
    # y'_i = prod_j y_j^{(M^-1)_{ji}}: M = [[1,1],[0,1]] gives (y1, y2/y1)
    got = psi_reparam(IsotopyReparam((0, 0), ((1, 1), (0, 1))), pt, CFG)
    assert got.valuations() == (1, 1)
    # the inverse shear gives (y1, y1 y2), valuations (1, 3): needs cutoff above 3
    shear = IsotopyReparam((0, 0), ((1, -1), (0, 1)))
    got = psi_reparam(shear, pt, RingConfig(n=3, cutoff=4))
    assert got.valuations() == (1, 3)
    with pytest.raises(OutsideDomain):
        psi_reparam(shear, pt, CFG)


def test_psi_keeps_monomials_invariant():
    r = IsotopyReparam((0, 0), ((2, 1), (1, 1)))
    pt = MCPoint.at([mono(Q(1, 6), 2), mono(Q(-1, 12), 1j)])
    moved = psi_reparam(r, pt, CFG)
    x = (1, -2)
    mx = tuple(sum(r.M[i][j] * x[j] for j in range(2)) for i in range(2))
    lhs = NovikovScalar.one()
    for yi, e in zip(pt.y, x):
        lhs = lhs * (yi ** e)
    rhs = NovikovScalar.one()
    for yi, e in zip(moved.y, mx):
        rhs = rhs * (yi ** e)
    assert nv_deviation(lhs, rhs, CFG.cutoff) < 1e-12


def test_pushforward_top_degree_is_determinant():
    b = GradedVector.element(B2, "e12", mono(1))
    got = pushforward_b(b, [[0, 1], [1, 0]])
    assert got.deviation(GradedVector.element(B2, "e12", mono(1, -1))) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_psi_inverse(seed):
    rng = random.Random(seed)
    rank = rng.randint(2, 5)
    r = random_reparam(rng, rank)
    pt = random_point(rng, rank)
    back = psi_reparam(r.inverse(), psi_reparam(r, pt, CFG), CFG)
    assert back.deviation(pt, CFG.cutoff - 1) < 1e-9


def test_transport_character():
    r = IsotopyReparam((0, 0), ((1, 1), (0, 1)))
    g = HolonomyCharacter.from_exponents([1, 4], 6)
    gp = transport_character(g, r)
    for x in [(1, 0), (0, 1), (2, -3)]:
        mx = (x[0] + x[1], x[1])
        assert abs(gp(mx) - g(x)) < 1e-12


# -- gluing and commutation -----------------------------------------------------------

def test_gluing_zero_and_trivial_is_identity():
    pt = random_point(random.Random(5), 2)
    assert gluing(PseudoIsotopy(2, (), {}), IsotopyReparam.identity(2), pt, None, CFG).deviation(pt) < 1e-12


def test_gluing_composite():
    F, r = basic()
    got = gluing(F, r, MCPoint.at([1, 1]), GAMMA, CFG)
    want1 = NovikovScalar({Q(-1, 3): 1, Q(2, 3): 1, Q(5, 3): 0.5})
    want2 = NovikovScalar({0: 1, 1: -1, 2: 0.5})
    assert nv_deviation(got.y[0], want1, got.y[0].cutoff) < 1e-12
    assert got.y[0].cutoff >= Q(5, 2)
    assert nv_eq(got.y[1], want2, CFG)
    assert got.b_high.is_zero()


def test_commute_basic():
    F, r = basic()
    rep = check_commute(F, r, MCPoint.at([1, 1]), GAMMA, None, CFG)
    assert rep.passed and len(rep.cases) == 4


def test_commute_zero_isotopy():
    rng = random.Random(9)
    r = random_reparam(rng, 3)
    rep = check_commute(PseudoIsotopy(3, (), {}), r, random_point(rng, 3),
                        HolonomyCharacter.from_exponents([2, 0, 4], 6), None, CFG)
    assert rep.passed


def test_commute_f_intertwines_by_hand():
    # gamma(boundary) = omega * omega^-1 = 1, so g(tau y) = g(y); f has degree 1: zeta^(1-1) = 1
    F, r = basic()
    rep = check_commute(F, r, MCPoint.at([mono(Q(1, 12), 2), 1j]), GAMMA, None, CFG)
    assert rep.passed


def test_wrong_gamma_raises():
    F, r = basic()
    with pytest.raises(CharacterMismatch):
        check_commute(F, r, MCPoint.at([1, 1]), HolonomyCharacter.from_exponents([1, 0], 6), None, CFG)


def test_wrong_gamma_prime_raises():
    F, r = basic()
    with pytest.raises(CharacterMismatch):
        check_commute(F, r, MCPoint.at([1, 1]), GAMMA,
                      HolonomyCharacter.from_exponents([2, 4], 6), CFG)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_random_isotopies_commute(seed):
    rng = random.Random(seed)
    cfg = RingConfig(n=rng.choice([1, 2, 3, 5]))
    F, r = random_isotopy(rng, cfg)
    g = compute_gamma(F.classes, cfg) if F.classes else HolonomyCharacter.trivial(F.rank)
    pt = random_point(rng, F.rank)
    assert check_commute(F, r, pt, g, None, cfg).passed
    assert check_divisor_axiom(F, "F", cfg).passed


def test_isotopy_json_roundtrip():
    F, r = basic()
    F2, r2 = isotopy_from_json(isotopy_to_json(F, r))
    assert F2.classes == F.classes and r2 == r
    assert r2.v == (Q(1, 3), 0)
