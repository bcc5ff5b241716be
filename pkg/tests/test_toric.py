from fractions import Fraction as Q

import pytest

from cyclic_fukaya.errors import BoundaryPoint, Inconsistent
from cyclic_fukaya.graded import UNIT
from cyclic_fukaya.jsonio import load_builtin, polytope_from_json
from cyclic_fukaya.novikov import NovikovScalar, RingConfig, nv_deviation
from cyclic_fukaya.potential import MCPoint, compute_gamma, weak_mc_check
from cyclic_fukaya.toric import Polytope, cho_oh_classes

CP2 = Polytope(((1, 0), (0, 1), (-1, -1)), (0, 0, -1), (Q(1, 3), Q(1, 3)))
SQUARE = Polytope(((1, 0), (0, 1), (-1, 0), (0, -1)), (0, 0, -1, -1), (Q(1, 2), Q(1, 2)))


def test_cp2_classes():
    alg = cho_oh_classes(CP2)
    assert [c.energy for c in alg.classes] == [Q(1, 3)] * 3
    assert [c.maslov for c in alg.classes] == [2, 2, 2]
    assert [c.boundary for c in alg.classes] == [(1, 0), (0, 1), (-1, -1)]
    w = weak_mc_check(alg, MCPoint.at([1, 1]), RingConfig(n=3)).W
    assert w.exponents() == (Q(1, 3),)
    assert abs(w.leading_coefficient - 3) < 1e-12


def test_square_classes():
    alg = cho_oh_classes(SQUARE)
    assert [c.energy for c in alg.classes] == [Q(1, 2)] * 4
    w = weak_mc_check(alg, MCPoint.at([1, 1]), RingConfig(n=2)).W
    assert nv_deviation(w, NovikovScalar({Q(1, 2): 4})) < 1e-12


def test_off_centre_point():
    alg = cho_oh_classes(CP2.at((Q(1, 6), Q(1, 2))))
    assert [c.energy for c in alg.classes] == [Q(1, 6), Q(1, 2), Q(1, 3)]


def test_point_on_facet():
    with pytest.raises(BoundaryPoint):
        cho_oh_classes(CP2.at((0, Q(1, 2))))


def test_cp2_not_divisible_by_two():
    with pytest.raises(Inconsistent):
        compute_gamma(cho_oh_classes(CP2).classes, RingConfig(n=2))


def test_square_divisible_by_two():
    g = compute_gamma(cho_oh_classes(SQUARE).classes, RingConfig(n=2))
    assert g.exponents == (2, 2)


def test_builtin_polytopes_match():
    assert polytope_from_json(load_builtin("cp2-toric")) == CP2
    assert polytope_from_json(load_builtin("p1xp1-toric")) == SQUARE
    assert Polytope.from_json(CP2.to_json()) == CP2


def test_tables_output_unit_only():
    alg = cho_oh_classes(CP2)
    for t in alg.tables.values():
        assert [set(v.coords) for v in t.entries.values()] == [{UNIT}]
