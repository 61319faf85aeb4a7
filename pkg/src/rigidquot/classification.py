"""Rigid action tuples over a fixed group and their isomorphism classes.

Rigidity only depends on the braid orbit of each factor, so tuples are
built from braid-orbit representatives: multisets of n-1 elliptic orbits
times one curve orbit.  The classes are then taken up to Aut(G).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .characters import is_rigid_action
from .groups import Group, make_group
from .triples import (
    ELLIPTIC_SIGNATURES,
    ActionTuple,
    TupleClassifier,
    _enumerate_indices,
    braid_orbits_of,
    conjugate_tuple,
    ShapeTag,
    hurwitz_genus,
    make_triple,
    triple_from_indices,
    triple_shape,
)
from .errors import InvalidGenusError


def minimal_group(d: int) -> Group:
    """The smallest group with a genus >= 2 triple having an entry in A, for twist order d."""
    return {
        3: lambda: make_group(7, 3, [(1, 3)]),
        4: lambda: make_group(5, 4, [(1, 2)]),
        6: lambda: make_group(3, 6, [(1, 1)]),
    }[d]()


def cyclic_six() -> Group:
    """Z_6 = A x| Z_6 with A trivial."""
    return make_group(1, 6, [(0, 0)])


@lru_cache(maxsize=None)
def elliptic_orbit_labels(G: Group) -> tuple[tuple[int, int, int], ...]:
    sig = ELLIPTIC_SIGNATURES[G.d]
    braids = braid_orbits_of(G)
    labels = set()
    for perm in set(itertools.permutations(sig)):
        for t in _enumerate_indices(G, perm):
            labels.add(braids.label(t))
    return tuple(sorted(labels))


def default_curve_shape(G: Group) -> ShapeTag:
    """GENERAL (an entry in A) for nontrivial A; for A trivial only the [3,6,6] shape can occur."""
    return ShapeTag.GENERAL if G.abelian_order > 1 else ShapeTag.EXC366


@lru_cache(maxsize=None)
def curve_orbit_labels(
    G: Group, shape: ShapeTag | None = None, min_genus: int = 2
) -> tuple[tuple[int, int, int], ...]:
    """Braid orbits of genus >= min_genus triples, optionally of one shape (shape is braid invariant)."""
    braids = braid_orbits_of(G)
    labels = set()
    for t in _enumerate_indices(G):
        types = tuple(G.order_index(i) for i in t)
        try:
            if hurwitz_genus(G.order, types) < min_genus:
                continue
        except InvalidGenusError:
            continue
        labels.add(braids.label(t))
    if shape is not None:
        labels = {t for t in labels if triple_shape(G, triple_from_indices(G, t)).tag == shape}
    return tuple(sorted(labels))


@dataclass(frozen=True)
class Classification:
    group: Group
    n: int
    rigid_tuples: tuple[ActionTuple, ...]
    class_keys: tuple[tuple, ...]
    class_members: tuple[tuple[ActionTuple, ...], ...]
    conjugation: tuple[int | None, ...]

    @property
    def class_count(self) -> int:
        return len(self.class_keys)

    def representatives(self) -> list[ActionTuple]:
        return [m[0] for m in self.class_members]

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "order": self.group.order,
            "n": self.n,
            "rigid_tuples": len(self.rigid_tuples),
            "classes": [
                {"index": i, "representative": m[0].to_json(), "rigid_tuples": len(m)}
                for i, m in enumerate(self.class_members)
            ],
            "conjugation": list(self.conjugation),
        }


_DEFAULT = object()


def rigid_tuples(G: Group, n: int, sign: int = 1, curve_shape=_DEFAULT) -> list[ActionTuple]:
    """Rigid tuples built from braid-orbit representatives, elliptic factors taken as multisets.

    ``curve_shape`` restricts the curve triple (None allows every shape); by
    default it is ``default_curve_shape(G)``.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    shape = default_curve_shape(G) if curve_shape is _DEFAULT else curve_shape
    E = [triple_from_indices(G, t) for t in elliptic_orbit_labels(G)]
    C = [triple_from_indices(G, t) for t in curve_orbit_labels(G, shape)]
    out = []
    for combo in itertools.combinations_with_replacement(E, n - 1):
        for S in C:
            T = ActionTuple(tuple(combo), S)
            if is_rigid_action(G, T, sign).rigid:
                out.append(T)
    return out


def classify(G: Group, n: int, sign: int = 1, curve_shape=_DEFAULT) -> Classification:
    """Rigid tuples for E^{n-1} x C over G, their classes, and the pairing by complex conjugation."""
    tuples = rigid_tuples(G, n, sign, curve_shape)
    clf = TupleClassifier(G)
    blocks: dict[tuple, list[ActionTuple]] = {}
    for T in tuples:
        blocks.setdefault(clf.key(T), []).append(T)
    keys = tuple(sorted(blocks))
    position = {k: i for i, k in enumerate(keys)}
    conj = tuple(position.get(clf.key(conjugate_tuple(G, blocks[k][0]))) for k in keys)
    return Classification(G, n, tuple(tuples), keys, tuple(tuple(blocks[k]) for k in keys), conj)


def xmin_tuple(n: int) -> ActionTuple:
    """The rigid Z_6 action on E^{n-1} x C' (C' of genus 2) with elliptic triple [3,2,1] and curve triple [4,1,1]."""
    G = cyclic_six()
    e = [G.rotation(k) for k in range(6)]
    S_E = make_triple(G, e[3], e[2], e[1])
    S_C = make_triple(G, e[4], e[1], e[1])
    return ActionTuple((S_E,) * (n - 1), S_C)


def representative_tuple(G: Group, n: int) -> ActionTuple:
    """First class representative of ``classify(G, n)``."""
    return classify(G, n).representatives()[0]
