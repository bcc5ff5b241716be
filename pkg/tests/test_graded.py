import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclic_fukaya.errors import ArityMismatch
from cyclic_fukaya.graded import (UNIT, GradedBasis, GradedVector, MultilinearTable, ml_apply,
                                  split_pr1, twist_apply, twist_by_order)
from cyclic_fukaya.novikov import NovikovScalar, RingConfig

B2 = GradedBasis.torus(2)
B3 = GradedBasis.torus(3)


def test_torus_basis_shape():
    for l in range(5):
        b = GradedBasis.torus(l)
        assert len(b) == 2**l
        assert b.degree(UNIT) == 0
    assert B3.names == ("1", "e1", "e2", "e3", "e12", "e13", "e23", "e123")
    assert B3.subset("e13") == (1, 3)
    assert GradedBasis.torus(10).name_of((1, 10)) == "e1_10"


def test_basis_rejects_duplicate_names():
    with pytest.raises(ValueError):
        GradedBasis((("a", 0), ("a", 1)))


def test_basis_json_roundtrip():
    b = GradedBasis((("p", 0), ("q", 3)))
    assert GradedBasis.from_json(b.to_json()) == b
    assert GradedBasis.from_json(B3.to_json()) == B3


def test_vector_rejects_foreign_name():
    with pytest.raises(KeyError):
        GradedVector(B2, {"e3": 1})


def test_arity_zero_table():
    t = MultilinearTable.on_basis(B2, 0, {(): GradedVector.element(B2, UNIT, 5)})
    assert ml_apply(t, []).deviation(GradedVector.element(B2, UNIT, 5)) == 0


def test_wedge_like_table():
    e = lambda n: GradedVector.element(B2, n)
    t = MultilinearTable.on_basis(B2, 2, {("e1", "e2"): e("e12"), ("e2", "e1"): e("e12") * -1})
    assert ml_apply(t, [e("e1"), e("e2")]).deviation(e("e12")) == 0
    assert ml_apply(t, [e("e1"), e("e1")]).is_zero()
    assert t.degree == 0


def test_arity_mismatch():
    t = MultilinearTable.on_basis(B2, 1, {("e1",): GradedVector.element(B2, UNIT)})
    with pytest.raises(ArityMismatch):
        ml_apply(t, [])


def test_table_requires_uniform_degree_shift():
    e = lambda n: GradedVector.element(B2, n)
    with pytest.raises(ValueError):
        MultilinearTable.on_basis(B2, 1, {("e1",): e(UNIT), ("e2",): e("e1")})


def test_table_json_roundtrip():
    e = lambda n: GradedVector.element(B2, n)
    t = MultilinearTable.on_basis(B2, 1, {("e1",): e(UNIT), ("e2",): e(UNIT) * 2})
    back = MultilinearTable.from_json(t.to_json(), (B2,), B2)
    assert back.entries.keys() == t.entries.keys()
    assert all(back.entries[k].deviation(t.entries[k]) == 0 for k in t.entries)


@settings(max_examples=30, deadline=None)
@given(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
       st.sampled_from(B2.names))
def test_linearity(c, name):
    t = MultilinearTable.on_basis(B2, 1, {(n,): GradedVector.element(B2, UNIT, i + 1)
                                          for i, n in enumerate(B2.of_degree(1))})
    x = GradedVector.element(B2, name)
    assert ml_apply(t, [x * c]).deviation(ml_apply(t, [x]) * c) < 1e-9


# -- twist -----------------------------------------------------------------------

def test_twist_leaves_degree_zero():
    v = GradedVector.element(B2, UNIT, 3)
    assert twist_apply(v, cmath.exp(1j * math.pi / 3)).deviation(v) < 1e-15


def test_twist_n2_degree2():
    v = GradedVector.element(B2, "e12")
    assert twist_apply(v, 1j).deviation(v * -1) < 1e-15


def test_twist_n3_top_degree_of_t3():
    v = GradedVector.element(B3, "e123")
    assert twist_apply(v, cmath.exp(1j * math.pi / 3)).deviation(v * -1) < 1e-12
    assert twist_by_order(v, RingConfig(n=3)).deviation(v * -1) < 1e-15


@st.composite
def vectors(draw, basis=B3):
    names = draw(st.lists(st.sampled_from(basis.names), max_size=5, unique=True))
    cs = draw(st.lists(st.complex_numbers(min_magnitude=0.1, max_magnitude=3, allow_nan=False,
                                          allow_infinity=False), min_size=len(names), max_size=len(names)))
    return GradedVector(basis, dict(zip(names, cs)))


@settings(max_examples=50, deadline=None)
@given(vectors(), st.integers(1, 6))
def test_double_twist_is_degreewise_power(v, n):
    zeta = cmath.exp(1j * math.pi / n)
    twice = twist_apply(twist_apply(v, zeta), zeta)
    want = v.map_coords(lambda name, c: c.scale(zeta ** (-2 * B3.degree(name))))
    assert twice.deviation(want) < 1e-9


@settings(max_examples=50, deadline=None)
@given(vectors(), st.integers(1, 6))
def test_split_sums_and_commutes_with_twist(v, n):
    zeta = cmath.exp(1j * math.pi / n)
    p1, rest = split_pr1(v)
    assert (p1 + rest).deviation(v) == 0
    tp1, trest = split_pr1(twist_apply(v, zeta))
    assert tp1.deviation(twist_apply(p1, zeta)) < 1e-12
    assert trest.deviation(twist_apply(rest, zeta)) < 1e-12


def test_split_examples():
    e = lambda n: GradedVector.element(B3, n)
    p1, rest = split_pr1(e("e1") + e("e12"))
    assert p1.deviation(e("e1")) == 0 and rest.deviation(e("e12")) == 0
    p1, rest = split_pr1(GradedVector.zero(B3))
    assert p1.is_zero() and rest.is_zero()
    p1, rest = split_pr1(e(UNIT) + e("e2") + e("e123"))
    assert p1.deviation(e("e2")) == 0
    assert rest.deviation(e(UNIT) + e("e123")) == 0


def test_vector_json_roundtrip():
    v = GradedVector(B3, {"e1": NovikovScalar({0: 1, 1: 2j}), "e123": 3})
    assert GradedVector.from_json(B3, v.to_json()).deviation(v) == 0
