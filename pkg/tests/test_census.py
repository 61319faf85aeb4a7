import itertools

import pytest
from hypothesis import given, strategies as st

from rigidquot.census import (
    CensusTable,
    SingularityType,
    fixed_point_count,
    is_canonical_type,
    is_free_on_curve,
    singularity_census,
    singularity_census_by_orbits,
    special_points,
    tuple_stabilizer,
)
from rigidquot.classification import classify, xmin_tuple
from rigidquot.triples import make_triple


def z6(G, *ks):
    return make_triple(G, *(G.rotation(k) for k in ks))


def test_special_points(Z6, G21):
    assert len(special_points(Z6, z6(Z6, 3, 2, 1))) == 6
    s, t = G21.rotation(1), G21.element_of((1, 3))
    S = make_triple(G21, s, G21.mul(s, s, t), G21.power(t, 6))
    pts = special_points(G21, S)
    assert len(pts) == 17
    assert fixed_point_count(G21, t, S)[0] == 3


def test_fixed_points_of_half_turn(Z6):
    # the order-two element fixes the three points over the first branch point
    # and the point over the order-six branch point
    count, pts = fixed_point_count(Z6, Z6.rotation(3), z6(Z6, 3, 2, 1))
    assert count == 4
    assert sorted(p.branch_index for p in pts) == [1, 1, 1, 3]


def test_stabilizer_orders_match_branching(G20):
    c = classify(G20, 2)
    for S in c.rigid_tuples[0].triples:
        for p in special_points(G20, S):
            _, order = tuple_stabilizer(G20, [S], [p])
            assert order == S.type[p.branch_index - 1]


def test_xmin_stabilizer(Z6):
    T = xmin_tuple(2)
    pE = [p for p in special_points(Z6, T.elliptic_triples[0]) if p.branch_index == 3][0]
    pC = [p for p in special_points(Z6, T.curve_triple) if p.branch_index == 2][0]
    g, order = tuple_stabilizer(Z6, T.triples, [pE, pC])
    assert order == 6 and Z6.element_order(g) == 6
    assert tuple_stabilizer(Z6, T.triples, [pE, None]) == (Z6.identity, 1)


def test_A_acts_freely_for_exceptional_shape(Z6, G18):
    T = xmin_tuple(2)
    assert is_free_on_curve(Z6, [Z6.identity], T.curve_triple)
    c = classify(G18, 2, curve_shape=None)
    A = [g for g in G18 if G18.in_A(g)]
    from rigidquot.triples import ShapeTag, triple_shape

    exc = [T for T in c.rigid_tuples if triple_shape(G18, T.curve_triple).tag == ShapeTag.EXC366]
    assert exc
    for T in exc:
        assert is_free_on_curve(G18, A, T.curve_triple)
    general = [T for T in c.rigid_tuples if triple_shape(G18, T.curve_triple).tag == ShapeTag.GENERAL][0]
    c3 = general.curve_triple[2] if G18.in_A(general.curve_triple[2]) else next(g for g in general.curve_triple if G18.in_A(g))
    assert not is_free_on_curve(G18, [c3], general.curve_triple)


def test_types():
    t = SingularityType.parse("1/3(2,2)")
    assert str(t) == "1/3(1,1)"
    assert SingularityType.normalized(4, [3, 1]) == SingularityType(4, (1, 3))
    assert not is_canonical_type(SingularityType.parse("1/3(1,1)"))
    assert is_canonical_type(SingularityType.parse("1/3(1,1,1)"))
    for d in (2, 3, 4, 6):
        for n in range(d, d + 3):
            assert is_canonical_type(SingularityType(d, (1,) * n))


@given(st.sampled_from([2, 3, 4, 5, 6, 7, 8]), st.lists(st.integers(1, 50), min_size=2, max_size=5))
def test_normalization_is_idempotent(ell, ws):
    ws = [w for w in ws if w % ell] or [1]
    t = SingularityType.normalized(ell, ws)
    assert SingularityType.normalized(ell, t.weights) == t
    assert SingularityType.parse(str(t)) == t


def test_xmin_tables():
    # counts derived pointwise: 2(4^{n-1}-1)/3, 3^{n-1}-1, 3^{n-1}, 2
    for n in (2, 3, 4):
        got = singularity_census(xmin_tuple.__globals__["cyclic_six"](), xmin_tuple(n)).as_dict()
        ones = ",".join(["1"] * (n - 1))
        assert got == {
            f"1/2({ones},1)": 2 * (4 ** (n - 1) - 1) // 3,
            f"1/3({ones},1)": 3 ** (n - 1) - 1,
            f"1/3({ones},2)": 3 ** (n - 1),
            f"1/6({ones},1)": 2,
        }


@pytest.mark.parametrize("d", [3, 4, 6])
@pytest.mark.parametrize("n", [2, 3])
def test_census_matches_orbit_oracle(d, n):
    from rigidquot.classification import minimal_group

    G = minimal_group(d)
    for T in classify(G, n, curve_shape=None).rigid_tuples:
        assert singularity_census(G, T) == singularity_census_by_orbits(G, T)
        assert singularity_census(G, T).total > 0


def test_census_is_invariant_under_conjugation(G21, G20):
    from rigidquot.triples import conjugate_tuple

    for G in (G21, G20):
        for T in classify(G, 3).rigid_tuples:
            a = singularity_census(G, T).as_dict()
            b = singularity_census(G, conjugate_tuple(G, T)).as_dict()
            assert sorted(a.values()) == sorted(b.values())


def test_table_serialization(G20):
    T = classify(G20, 3).representatives()[0]
    table = singularity_census(G20, T)
    assert table.as_dict() == {"1/2(1,1,1)": 12, "1/4(1,1,1)": 4, "1/4(1,1,3)": 4}
    assert CensusTable.from_json(table.to_json()) == table
    assert table.to_csv().splitlines()[0] == "type,count"
