import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from rigidquot.toric import (
    Cone,
    Fan,
    LatticeData,
    TorusDivisor,
    cartier_data,
    cone_multiplicity,
    coordinate_divisor,
    det,
    exceptional_divisor_structure,
    is_globally_generated,
    polyhedra_equal_bruteforce,
    polyhedra_equal_on_lattice,
    resolution_fan,
    solve,
    support_cover,
    unit,
    verify_resolution,
)


def test_solver_and_determinant():
    cols = [(Fraction(2), Fraction(0)), (Fraction(1), Fraction(3))]
    x = solve(cols, (Fraction(5), Fraction(6)))
    assert x == (Fraction(3, 2), Fraction(2))
    assert solve([(1, 2), (2, 4)], (1, 1)) is None
    assert det([[1, 2], [3, 4]]) == -2


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_determinant_is_multiplicative_against_transpose(rows):
    cols = [list(c) for c in zip(*rows)]
    assert det(rows) == det(cols)


def test_fan_sizes():
    fan = resolution_fan(LatticeData(3, 3, 2))
    assert set(fan.rays) == {
        unit(3, 0), unit(3, 1), unit(3, 2),
        (Fraction(1, 3), Fraction(1, 3), Fraction(2, 3)),
        (Fraction(2, 3), Fraction(2, 3), Fraction(1, 3)),
    }
    assert len(fan.maximal_cones) == 5
    fan = resolution_fan(LatticeData(3, 2, 1))
    assert len(fan.rays) == 4 and len(fan.maximal_cones) == 3
    assert len(resolution_fan(LatticeData(4, 6, 5)).maximal_cones) == 16
    assert Fan.from_json(fan.to_json()) == fan


def test_multiplicities():
    orthant = Cone(tuple(unit(4, i) for i in range(4)))
    assert cone_multiplicity(orthant, LatticeData(4, 6, 5)) == 6
    assert cone_multiplicity(orthant, LatticeData(4, 1, 0)) == 1
    L = LatticeData(5, 4, 3)
    assert all(cone_multiplicity(c, L) == 1 for c in resolution_fan(L).cones())


def test_polyhedra_equal_example():
    assert polyhedra_equal_on_lattice(1, LatticeData(3, 3, 2), 15).holds


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 4), st.integers(2, 6), st.data())
def test_polyhedra_reduction_matches_box(n, ell, data):
    a = data.draw(st.integers(1, ell - 1))
    i = data.draw(st.integers(1, n))
    bound = data.draw(st.integers(1, 3 if n == 4 else 5))
    L = LatticeData(n, ell, a)
    fast = polyhedra_equal_on_lattice(i, L, bound)
    slow = polyhedra_equal_bruteforce(i, L, bound)
    assert fast.holds == slow.holds
    if fast.witness is not None:
        x = fast.witness
        assert L.dual_contains(x) and max(map(abs, x)) <= bound


def test_cartier_data_of_first_and_last_divisor():
    for n, ell in [(3, 3), (4, 4), (5, 6), (4, 3)]:
        L = LatticeData(n, ell, ell - 1)
        fan = resolution_fan(L)
        m = cartier_data(fan, coordinate_divisor(fan, L, 1), L)
        expected = tuple(Fraction(x) for x in [-1] + [0] * (n - 2) + [ell - 1])
        assert m[fan.maximal_cones[fan.label_index(f"sigma_{n}")]] == expected
        for k in range(ell - 1):
            assert all(x == 0 for x in m[fan.maximal_cones[fan.label_index(f"sigma_1^({k})")]])
        assert is_globally_generated(fan, coordinate_divisor(fan, L, 1), L)
        assert is_globally_generated(fan, coordinate_divisor(fan, L, n), L)
        zero = cartier_data(fan, TorusDivisor.of({}), L)
        assert all(all(x == 0 for x in v) for v in zero.values())


def test_not_globally_generated_on_projective_line():
    L = LatticeData(1, 1, 0)
    fan = Fan(((Fraction(1),), (Fraction(-1),)), ((0,), (1,)))
    assert not is_globally_generated(fan, TorusDivisor.of({0: -2}), L)
    assert is_globally_generated(fan, TorusDivisor.of({0: 1}), L)


def test_exceptional_structures():
    for n, ell in [(3, 3), (4, 4), (4, 6)]:
        L = LatticeData(n, ell, ell - 1)
        assert str(exceptional_divisor_structure(ell - 1, L)) == "ProjectiveSpace"
        assert str(exceptional_divisor_structure(1, L)) == f"Bundle({ell - 1})"
    s = exceptional_divisor_structure(2, LatticeData(4, 4, 3))
    assert str(s) == "Bundle(2)" and s.mu is not None and s.lam is not None


@pytest.mark.parametrize("L,B", [(LatticeData(3, 3, 2), 15), (LatticeData(6, 6, 5), 12), (LatticeData(3, 2, 1), 15)])
def test_verify_resolution(L, B):
    report = verify_resolution(L, B)
    assert report.passed, report.to_json()


def test_rejects_unsupported_weights():
    with pytest.raises(ValueError):
        resolution_fan(LatticeData(3, 5, 2))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(3, 3, 2), (4, 4, 3), (3, 2, 1), (4, 3, 1), (5, 6, 5)]),
       st.lists(st.integers(0, 9), min_size=5, max_size=5))
def test_fan_covers_orthant(params, coords):
    n, ell, a = params
    p = tuple(Fraction(c) for c in coords[:n])
    assume(any(p))
    fan = resolution_fan(LatticeData(n, ell, a))
    [(_, hits, interior)] = support_cover(fan, [p])
    assert hits >= 1
    if interior:
        assert hits == 1


def test_cover_grid():
    fan = resolution_fan(LatticeData(3, 4, 3))
    grid = [tuple(Fraction(x) for x in v) for v in itertools.product(range(4), repeat=3) if any(v)]
    assert all(h >= 1 for _, h, _ in support_cover(fan, grid))
    assert support_cover(fan, [(Fraction(-1), Fraction(0), Fraction(0))])[0][1] == 0
