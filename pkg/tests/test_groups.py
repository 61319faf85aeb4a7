import itertools

import pytest
from hypothesis import given, settings, strategies as st

from rigidquot.errors import NonInvariantSubgroupError
from rigidquot.groups import (
    AbelianSubgroup,
    TwistAction,
    admissible_groups,
    all_subgroups,
    are_isomorphic,
    automorphism_group,
    enumerate_invariant_subgroups,
    exceptional_groups,
    is_exceptional,
    make_group,
    quotient_group,
)


def st_t(G):
    s = G.rotation(1)
    t = G.element_of(G.A.generators[0])
    return s, t


def test_g21_relation(G21):
    s, t = st_t(G21)
    assert G21.order == 21
    assert G21.element_order(t) == 7
    assert G21.element_order(s) == 3
    assert G21.conjugate(s, t) == G21.power(t, 4)


def test_g18_relation(G18):
    s, t = st_t(G18)
    assert G18.conjugate(s, t) == G18.power(t, 2)
    for a in G18.A.elements():
        assert G18.element_order(G18.element_of(a, 1)) == 6


def test_trivial_A_is_cyclic():
    G = make_group(1, 3, [(0, 0)])
    assert G.order == 3
    assert G.element_order(G.rotation(1)) == 3


def test_non_invariant_rejected():
    with pytest.raises(NonInvariantSubgroupError):
        make_group(7, 3, [(1, 0)])


def test_twist_orders():
    for d in (3, 4, 6):
        assert TwistAction(d).order_mod(101) == d
    assert TwistAction(4).apply((1, 0), 5) == (0, 1)


def test_inverse_and_identity(G20):
    e = G20.identity
    for x in G20:
        assert G20.mul(x, G20.inverse(x)) == e
    assert G20.element_order(e) == 1


def test_multiplication_is_associative(G21):
    els = G21.elements
    for x, y, z in itertools.islice(itertools.product(els, repeat=3), 0, None, 7):
        assert G21.mul(G21.mul(x, y), z) == G21.mul(x, G21.mul(y, z))


def test_element_order_equals_image_order_outside_A(small_groups):
    for G in small_groups:
        for x in G:
            if not G.in_A(x):
                assert G.element_order(x) == G.d // __import__("math").gcd(G.d, x.k)


def test_invariant_subgroups_mod_7():
    subs = enumerate_invariant_subgroups(7, 3, 49)
    gens = sorted(tuple(map(tuple, s.to_json())) for s in subs)
    expected = sorted(
        tuple(map(tuple, AbelianSubgroup.generated(7, g).to_json()))
        for g in ([(0, 0)], [(1, 3)], [(1, 5)], [(1, 0), (0, 1)])
    )
    assert gens == expected


def _span(n, gens):
    out = {(0, 0)}
    frontier = list(out)
    while frontier:
        v = frontier.pop()
        for g in gens:
            w = ((v[0] + g[0]) % n, (v[1] + g[1]) % n)
            if w not in out:
                out.add(w)
                frontier.append(w)
    return frozenset(out)


def test_invariant_subgroups_bruteforce():
    # every subgroup of Z_n^2 is generated by two elements
    for n, d in [(5, 4), (7, 3), (6, 6), (4, 4), (9, 3), (2, 4)]:
        twist = TwistAction(d)
        vecs = list(itertools.product(range(n), repeat=2))
        slow = set()
        for u, v in itertools.combinations_with_replacement(vecs, 2):
            H = _span(n, [u, v])
            if all(twist.apply(h, n) in H for h in H):
                slow.add(H)
        fast = {frozenset(s.elements()) for s in enumerate_invariant_subgroups(n, d)}
        assert fast == slow
        assert len(all_subgroups(n)) == len({_span(n, [u, v]) for u, v in itertools.combinations_with_replacement(vecs, 2)})


def test_order_five_d4_has_two_cyclic():
    cyclic = [s for s in enumerate_invariant_subgroups(5, 4, 25) if s.order == 5]
    assert len(cyclic) == 2
    assert enumerate_invariant_subgroups(1, 4) == [AbelianSubgroup.trivial(1)]


def test_automorphism_counts(G21, G18):
    assert len(automorphism_group(G21)) == 42
    assert len(automorphism_group(make_group(1, 3, [(0, 0)]))) == 2
    auts = automorphism_group(G18)
    perms = {a.perm for a in auts}
    assert tuple(range(G18.order)) in perms
    for a, b in itertools.product(auts, repeat=2):
        assert tuple(a.perm[i] for i in b.perm) in perms
    assert automorphism_group(G18) == auts


def test_quotients(G21, G20):
    Q, proj = quotient_group(G20, G20.A)
    assert Q.order == 4
    for x, y in itertools.product(G20.elements, repeat=2):
        assert proj(G20.mul(x, y)) == Q.mul(proj(x), proj(y))
    Q, proj = quotient_group(G21, AbelianSubgroup.trivial(G21.n))
    assert Q.order == 21 and are_isomorphic(Q, G21)


def test_quotient_by_subgroup_of_A():
    G = make_group(9, 3, [(3, 0), (0, 3)])
    sub = AbelianSubgroup.generated(9, [(3, 6)])
    assert sub.is_invariant(3)
    Q, proj = quotient_group(G, sub)
    assert Q.order == G.order // 3
    for x, y in itertools.product(G.elements, repeat=2):
        assert proj(G.mul(x, y)) == Q.mul(proj(x), proj(y))


def test_exceptional():
    assert sorted(G.order for G in exceptional_groups()) == [8, 9, 16, 27]
    assert is_exceptional(make_group(3, 3, [(1, 0), (0, 1)]))
    assert not is_exceptional(make_group(7, 3, [(1, 3)]))
    assert not is_exceptional(make_group(5, 4, [(1, 2)]))


def test_json_roundtrip(small_groups):
    from rigidquot.groups import Group

    for G in small_groups:
        assert Group.from_json(G.to_json()) == G


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(admissible_groups(30)), st.data())
def test_group_axioms(G, data):
    idx = st.integers(0, G.order - 1)
    x, y, z = (G.elements[data.draw(idx)] for _ in range(3))
    assert G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z))
    assert G.mul(x, G.identity) == x
    assert G.mul(G.inverse(x), x) == G.identity
    assert G.power(x, G.element_order(x)) == G.identity
    assert G.order == G.abelian_order * G.d
