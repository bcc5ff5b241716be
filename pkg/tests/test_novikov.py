import cmath
import math
from fractions import Fraction as Q

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cyclic_fukaya.errors import DomainError, IllConditioned
from cyclic_fukaya.novikov import (INF, NovikovScalar, RingConfig, T, exponent_mismatch,
                                   nv_deviation, nv_eq, nv_exp, nv_inv, nv_mul, nv_val,
                                   torus_monomial)

CFG = RingConfig()


def mono(c, e, cutoff=INF):
    return NovikovScalar.monomial(c, Q(e), cutoff)


# -- strategies ---------------------------------------------------------------

coeffs = st.complex_numbers(min_magnitude=0.5, max_magnitude=2, allow_nan=False, allow_infinity=False)
exps = st.fractions(min_value=0, max_value=2, max_denominator=6)


@st.composite
def lambda0(draw, cutoff=Q(2)):
    terms = draw(st.dictionaries(exps, coeffs, min_size=1, max_size=4))
    return NovikovScalar(terms, cutoff)


@st.composite
def nonzero(draw, cutoff=Q(2)):
    lead = draw(st.fractions(min_value=-1, max_value=1, max_denominator=6))
    terms = draw(st.dictionaries(exps.map(lambda e: e + lead + Q(1, 6)), coeffs, max_size=3))
    terms[lead] = draw(coeffs)
    return NovikovScalar(terms, cutoff)


# -- construction -------------------------------------------------------------

def test_canonical_form_sorts_and_drops_exact_zeros():
    a = NovikovScalar({Q(1): 2, Q(1, 2): 1, Q(3, 2): 0})
    assert a.terms == ((Q(1, 2), 1 + 0j), (Q(1), 2 + 0j))


def test_terms_at_or_beyond_cutoff_are_dropped():
    a = NovikovScalar({Q(0): 1, Q(2): 5, Q(3): 1}, Q(2))
    assert a.exponents() == (Q(0),)


def test_json_roundtrip():
    a = NovikovScalar({Q(-1, 3): 1 - 2j, Q(5, 4): 0.25}, Q(7, 2))
    b = NovikovScalar.from_json(a.to_json())
    assert a == b
    assert a.to_json() == {"terms": [[-1, 3, 1.0, -2.0], [5, 4, 0.25, 0.0]], "cutoff": [7, 2]}
    assert NovikovScalar.from_json(NovikovScalar.one().to_json()).cutoff == INF


def test_ring_config_zeta_is_primitive_2n_th_root():
    for n in (1, 2, 3, 5):
        cfg = RingConfig(n=n)
        assert abs(cfg.zeta ** (2 * n) - 1) < 1e-12
        assert all(abs(cfg.zeta**k - 1) > 1e-6 for k in range(1, 2 * n))


@pytest.mark.parametrize("kw", [{"tol": 1.0}, {"n": 0}, {"cutoff": 0}])
def test_ring_config_rejects_bad_values(kw):
    with pytest.raises(ValueError):
        RingConfig(**kw)


# -- val ------------------------------------------------------------------------

def test_val_of_zero_is_infinite():
    assert nv_val(NovikovScalar.zero()) == INF


def test_val_is_leading_exponent():
    assert nv_val(mono(1, Q(1, 2)) + mono(2, 1)) == Q(1, 2)


@settings(max_examples=50, deadline=None)
@given(nonzero(), nonzero())
def test_val_is_additive_on_products(a, b):
    assume(nv_val(a) + nv_val(b) < CFG.cutoff)
    assert nv_val(nv_mul(a, b)) == nv_val(a) + nv_val(b)


# -- mul ----------------------------------------------------------------------

def test_single_term_product():
    assert nv_mul(mono(1, Q(1, 2)), mono(2, Q(1, 3))) == mono(2, Q(5, 6))


def test_difference_of_squares():
    assert nv_mul(1 + T, 1 - T) == 1 - T**2


def test_cube_truncated_at_cutoff_one():
    a = NovikovScalar({0: 1, Q(1, 3): 1}, 1)
    want = NovikovScalar({0: 1, Q(1, 3): 3, Q(2, 3): 3}, 1)
    assert nv_deviation(a**3, want) == 0
    assert (a**3).cutoff == 1


def test_product_cutoff_is_min_of_operands():
    assert nv_mul(NovikovScalar.one(3), NovikovScalar.one(Q(5, 2))).cutoff == Q(5, 2)


@settings(max_examples=100, deadline=None)
@given(lambda0(), lambda0(), lambda0())
def test_ring_laws_modulo_cutoff(a, b, c):
    assert nv_eq(nv_mul(nv_mul(a, b), c), nv_mul(a, nv_mul(b, c)), CFG)
    assert nv_eq(nv_mul(a, b + c), nv_mul(a, b) + nv_mul(a, c), CFG)
    assert nv_eq(nv_mul(a, b), nv_mul(b, a), CFG)


# -- inv ------------------------------------------------------------------------

def test_monomial_inverse():
    assert nv_inv(mono(2, Q(1, 2))) == mono(0.5, Q(-1, 2))


def test_geometric_series_inverse():
    inv = nv_inv(NovikovScalar({0: 1, 1: -1}, 3))
    assert nv_deviation(inv, NovikovScalar({0: 1, 1: 1, 2: 1}, 3)) == 0


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        nv_inv(NovikovScalar.zero(2))


def test_inverse_ill_conditioned():
    with pytest.raises(IllConditioned):
        nv_inv(NovikovScalar({0: 1e-12, 1: 1}, 2), tol=1e-9)


def test_inverse_of_non_monomial_needs_a_cutoff():
    with pytest.raises(DomainError):
        nv_inv(1 + T)


small = st.complex_numbers(min_magnitude=0.05, max_magnitude=0.25, allow_nan=False, allow_infinity=False)


@st.composite
def well_conditioned(draw, cutoff=Q(2)):
    """Tail coefficients at most half the leading one, so the inverse series stays small."""
    lead = draw(st.fractions(min_value=-1, max_value=1, max_denominator=6))
    terms = draw(st.dictionaries(exps.map(lambda e: e + lead + Q(1, 6)), small, max_size=3))
    terms[lead] = draw(coeffs)
    return NovikovScalar(terms, cutoff)


@settings(max_examples=100, deadline=None)
@given(well_conditioned())
def test_inverse_law(a):
    one = NovikovScalar.one(CFG.cutoff)
    assert nv_eq(nv_mul(a, nv_inv(a)), one, CFG)


def test_inverse_of_negative_valuation_carries_raised_cutoff():
    a = NovikovScalar({Q(-1, 2): 1, 0: 1}, 2)
    inv = nv_inv(a)
    assert inv.cutoff == Q(5, 2)
    assert nv_mul(a, inv).cutoff == 2
    assert nv_eq(nv_mul(a, inv), NovikovScalar.one(2), CFG)


# -- exp ----------------------------------------------------------------------------

def test_exp_of_zero():
    assert nv_exp(NovikovScalar.zero(2)) == NovikovScalar.one(2)


def test_exp_euler():
    assert nv_eq(nv_exp(NovikovScalar.const(1j * math.pi)), NovikovScalar.const(-1), CFG)


def test_exp_series():
    got = nv_exp(NovikovScalar.monomial(1, 1, Q(5, 2)))
    assert nv_deviation(got, NovikovScalar({0: 1, 1: 1, 2: 0.5}, Q(5, 2))) < 1e-15
    assert got.exponents() == (0, 1, 2)


def test_exp_rejects_negative_exponent():
    with pytest.raises(DomainError):
        nv_exp(NovikovScalar.monomial(1, -1, 2))


@settings(max_examples=100, deadline=None)
@given(lambda0(), lambda0())
def test_exp_is_additive(a, b):
    a, b = a.scale(0.5), b.scale(0.5)
    assert nv_eq(nv_exp(a + b), nv_mul(nv_exp(a), nv_exp(b)), CFG)


def test_exp_lands_in_unit_group():
    assert nv_exp(NovikovScalar({0: 0.3, Q(1, 2): 1}, 2)).in_unit_group()


# -- equality -------------------------------------------------------------------------

def test_eq_examples():
    assert nv_eq(1 + T, 1 + T, CFG)
    assert nv_eq(NovikovScalar.one(), NovikovScalar({0: 1, 1: 1e-12}), CFG)
    assert nv_eq(NovikovScalar.one(), NovikovScalar({0: 1, CFG.cutoff + 1: 1}), CFG)
    assert not nv_eq(NovikovScalar.one(), 1 + T, CFG)


def test_exponent_mismatch_ignores_tolerance_residue():
    a = NovikovScalar({0: 1, 1: 1e-14})
    assert exponent_mismatch(a, NovikovScalar.one(), tol=1e-9) == []
    assert exponent_mismatch(a, NovikovScalar.one()) == [1]


# -- torus monomials ---------------------------------------------------------------

def test_torus_monomial_with_negative_valuation_keeps_precision():
    y1 = NovikovScalar({Q(-1, 2): 1, 0: 1}, 2)  # T^-1/2 (1 + T^1/2)
    got = torus_monomial([y1], [2], 2)
    want = NovikovScalar({-1: 1, Q(-1, 2): 2, 0: 1}, 2)
    assert nv_deviation(got, want) == 0


def test_torus_monomial_negative_power():
    y = NovikovScalar({0: 1, 1: 1}, 3)
    got = torus_monomial([y], [-1], 3)
    assert nv_deviation(got, NovikovScalar({0: 1, 1: -1, 2: 1}, 3)) == 0


def test_str_format():
    assert str(NovikovScalar({Q(1, 3): 3})) == "3*T^(1/3)"
    assert cmath.isclose(NovikovScalar.const(2j).leading_coefficient, 2j)
