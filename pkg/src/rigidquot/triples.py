"""Generating triples, Hurwitz moves, and orbit bookkeeping.

Internally a triple is a tuple of three element indices of ``G.elements``.
Since ``G.elements`` is sorted, comparing index triples is the same as
comparing element triples lexicographically (A-vector first, then the
Z_d part), which is what canonical representatives are chosen by.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidGenusError, ShapeError
from .groups import Automorphism, Group, GroupElement, automorphism_group

IndexTriple = tuple[int, int, int]

ELLIPTIC_SIGNATURES: dict[int, tuple[int, int, int]] = {3: (3, 3, 3), 4: (2, 4, 4), 6: (2, 3, 6)}


@dataclass(frozen=True, order=True)
class GeneratingTriple:
    g1: GroupElement
    g2: GroupElement
    g3: GroupElement
    type: tuple[int, int, int] = field(compare=False, default=(0, 0, 0))

    def __iter__(self):
        return iter((self.g1, self.g2, self.g3))

    def __getitem__(self, i: int) -> GroupElement:
        return (self.g1, self.g2, self.g3)[i]

    def __str__(self) -> str:
        return "[" + ", ".join(str(g) for g in self) + "]"

    def to_json(self) -> list[list[int]]:
        return [encode_element(g) for g in self]


def encode_element(g: GroupElement) -> list[int]:
    return [g.a[0], g.a[1], g.k]


def decode_element(G: Group, data: Sequence[int]) -> GroupElement:
    return G.element_of((data[0], data[1]), data[2])


def triple_from_indices(G: Group, t: IndexTriple) -> GeneratingTriple:
    els = [G.elements[i] for i in t]
    return GeneratingTriple(*els, type=tuple(G._orders[i] for i in t))


def triple_indices(G: Group, S: GeneratingTriple) -> IndexTriple:
    return (G.index(S.g1), G.index(S.g2), G.index(S.g3))


def make_triple(G: Group, g1: GroupElement, g2: GroupElement, g3: GroupElement | None = None) -> GeneratingTriple:
    """Build and validate a generating triple; ``g3`` defaults to ``(g1 g2)^-1``."""
    if g3 is None:
        g3 = G.inverse(G.mul(g1, g2))
    if G.mul(g1, g2, g3) != G.identity:
        raise ValueError("entries do not multiply to the identity")
    if G.identity in (g1, g2, g3):
        raise ValueError("entries must be nontrivial")
    if not G.generates((g1, g2, g3)):
        raise ValueError("entries do not generate the group")
    return GeneratingTriple(g1, g2, g3, type=(G.element_order(g1), G.element_order(g2), G.element_order(g3)))


def triple_from_json(G: Group, data) -> GeneratingTriple:
    return make_triple(G, *(decode_element(G, x) for x in data))


def enumerate_generating_triples(G: Group, type_filter: Sequence[int] | None = None) -> list[GeneratingTriple]:
    """All generating triples of G (optionally of a given ordered type), in lex order."""
    return [triple_from_indices(G, t) for t in _enumerate_indices(G, type_filter)]


def _enumerate_indices(G: Group, type_filter: Sequence[int] | None = None) -> list[IndexTriple]:
    orders = G._orders
    e = G.identity_index
    want = tuple(type_filter) if type_filter is not None else None
    out = []
    for i in range(G.order):
        if i == e or (want and orders[i] != want[0]):
            continue
        for j in range(G.order):
            if j == e or (want and orders[j] != want[1]):
                continue
            k = G.inv_index(G.mul_index(i, j))
            if k == e or (want and orders[k] != want[2]):
                continue
            if len(G.subgroup_indices((i, j))) == G.order:
                out.append((i, j, k))
    return out


def hurwitz_genus(group_order: int, type: Sequence[int]) -> int:
    """Genus of a Galois triangle cover with ``group_order`` sheets and branching ``type``."""
    if len(type) != 3 or any(m < 2 for m in type):
        raise InvalidGenusError(f"branching orders must be >= 2, got {list(type)}")
    chi = Fraction(group_order) * (1 - sum(Fraction(1, m) for m in type))
    two_g = chi + 2
    if two_g.denominator != 1 or two_g.numerator % 2 or two_g < 0:
        raise InvalidGenusError(f"order {group_order} is incompatible with type {list(type)}")
    return two_g.numerator // 2


# moves ---------------------------------------------------------------------


def _sigma1(G: Group, t: IndexTriple) -> IndexTriple:
    a, b, c = t
    return (G.mul_index(G.mul_index(a, b), G.inv_index(a)), a, c)


def _sigma2(G: Group, t: IndexTriple) -> IndexTriple:
    a, b, c = t
    return (a, G.mul_index(G.mul_index(b, c), G.inv_index(b)), b)


def _iota(G: Group, t: IndexTriple) -> IndexTriple:
    a, _, c = t
    return (G.inv_index(a), G.mul_index(a, c), G.inv_index(c))


def _apply_aut(alpha: Automorphism, t: IndexTriple) -> IndexTriple:
    p = alpha.perm
    return (p[t[0]], p[t[1]], p[t[2]])


def braid_move(G: Group, S: GeneratingTriple, j: int) -> GeneratingTriple:
    """sigma_1: [g1 g2 g1^-1, g1, g3]; sigma_2: [g1, g2 g3 g2^-1, g2]."""
    if j not in (1, 2):
        raise ValueError("braid generator index must be 1 or 2")
    move = _sigma1 if j == 1 else _sigma2
    return triple_from_indices(G, move(G, triple_indices(G, S)))


def conjugate_triple(G: Group, S: GeneratingTriple) -> GeneratingTriple:
    """The triple [g1^-1, g1 g3, g3^-1] of the complex-conjugate cover."""
    return triple_from_indices(G, _iota(G, triple_indices(G, S)))


def apply_automorphism(G: Group, alpha: Automorphism, S: GeneratingTriple) -> GeneratingTriple:
    return triple_from_indices(G, _apply_aut(alpha, triple_indices(G, S)))


# orbits --------------------------------------------------------------------


class BraidOrbits:
    """Lazy cache of B_3-orbits of index triples, each named by its lex-least member."""

    def __init__(self, G: Group):
        self.G = G
        self._label: dict[IndexTriple, IndexTriple] = {}
        self._size: dict[IndexTriple, int] = {}

    def label(self, t: IndexTriple) -> IndexTriple:
        found = self._label.get(t)
        if found is not None:
            return found
        seen = {t}
        queue = deque([t])
        while queue:
            x = queue.popleft()
            for y in (_sigma1(self.G, x), _sigma2(self.G, x)):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        lab = min(seen)
        for x in seen:
            self._label[x] = lab
        self._size[lab] = len(seen)
        return lab

    def size(self, label: IndexTriple) -> int:
        return self._size[label]


_BRAID_CACHE: dict[Group, BraidOrbits] = {}


def braid_orbits_of(G: Group) -> BraidOrbits:
    cache = _BRAID_CACHE.get(G)
    if cache is None:
        cache = _BRAID_CACHE[G] = BraidOrbits(G)
    return cache


@dataclass(frozen=True)
class Orbit:
    representative: GeneratingTriple
    members: tuple[GeneratingTriple, ...]
    closure_size: int

    @property
    def size(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {"representative": self.representative.to_json(), "size": self.size}


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx


def orbit_decomposition(
    G: Group, triples: Iterable[GeneratingTriple], with_automorphisms: bool = True
) -> list[Orbit]:
    """Partition ``triples`` into (Aut(G) x B_3)-orbits, or B_3-orbits only.

    Orbits are closed inside the set of all generating triples, so two input
    triples can share an orbit through intermediate triples that are not in
    the input.  ``closure_size`` is the size of that full orbit.
    """
    braids = braid_orbits_of(G)
    idx = sorted({triple_indices(G, S) for S in triples})
    labels = {t: braids.label(t) for t in idx}
    uf = _UnionFind()
    closure: dict[IndexTriple, int] = {}
    if with_automorphisms:
        auts = automorphism_group(G)
        pending = deque(sorted(set(labels.values())))
        done: set[IndexTriple] = set()
        while pending:
            lab = pending.popleft()
            if lab in done:
                continue
            done.add(lab)
            for alpha in auts:
                other = braids.label(_apply_aut(alpha, lab))
                uf.union(lab, other)
                if other not in done:
                    pending.append(other)
        for lab in done:
            root = uf.find(lab)
            closure[root] = closure.get(root, 0) + braids.size(lab)
    else:
        for lab in set(labels.values()):
            closure[uf.find(lab)] = braids.size(lab)
    blocks: dict[IndexTriple, list[IndexTriple]] = {}
    for t in idx:
        blocks.setdefault(uf.find(labels[t]), []).append(t)
    orbits = []
    for root, members in blocks.items():
        members.sort()
        orbits.append(
            Orbit(
                representative=triple_from_indices(G, members[0]),
                members=tuple(triple_from_indices(G, t) for t in members),
                closure_size=closure[root],
            )
        )
    orbits.sort(key=lambda o: o.representative)
    return orbits


# action tuples -------------------------------------------------------------


@dataclass(frozen=True)
class ActionTuple:
    """n-1 elliptic triples plus one curve triple, all over the same group."""

    elliptic_triples: tuple[GeneratingTriple, ...]
    curve_triple: GeneratingTriple

    @property
    def n(self) -> int:
        return len(self.elliptic_triples) + 1

    @property
    def triples(self) -> tuple[GeneratingTriple, ...]:
        return self.elliptic_triples + (self.curve_triple,)

    def to_json(self) -> dict:
        return {
            "elliptic_triples": [S.to_json() for S in self.elliptic_triples],
            "curve_triple": self.curve_triple.to_json(),
        }

    @classmethod
    def from_json(cls, G: Group, data: dict) -> "ActionTuple":
        return cls(
            tuple(triple_from_json(G, S) for S in data["elliptic_triples"]),
            triple_from_json(G, data["curve_triple"]),
        )


def validate_action_tuple(G: Group, T: ActionTuple) -> list[str]:
    """Problems with ``T`` as a diagonal action on E^{n-1} x C (empty when valid)."""
    problems = []
    sig = sorted(ELLIPTIC_SIGNATURES[G.d])
    for i, S in enumerate(T.elliptic_triples):
        if sorted(S.type) != sig:
            problems.append(f"elliptic factor {i + 1} has type {list(S.type)}, expected a permutation of {sig}")
    try:
        genus = hurwitz_genus(G.order, T.curve_triple.type)
    except InvalidGenusError as exc:
        problems.append(str(exc))
    else:
        if genus < 2:
            problems.append(f"curve factor has genus {genus} < 2")
    if not T.elliptic_triples:
        problems.append("need at least one elliptic factor")
    return problems


def conjugate_tuple(G: Group, T: ActionTuple) -> ActionTuple:
    return ActionTuple(tuple(conjugate_triple(G, S) for S in T.elliptic_triples), conjugate_triple(G, T.curve_triple))


@dataclass(frozen=True)
class TupleClass:
    key: tuple
    members: tuple[ActionTuple, ...]

    @property
    def representative(self) -> ActionTuple:
        return self.members[0]


@dataclass(frozen=True)
class TupleClassReport:
    classes: tuple[TupleClass, ...]
    conjugation: tuple[int | None, ...]

    def to_json(self) -> dict:
        return {
            "classes": [
                {"representative": c.representative.to_json(), "size": len(c.members)} for c in self.classes
            ],
            "conjugation": list(self.conjugation),
        }


class TupleClassifier:
    """Canonical keys for action tuples under Aut(G) x B_3^n x (permutations of elliptic factors)."""

    def __init__(self, G: Group):
        self.G = G
        self.braids = braid_orbits_of(G)
        self.auts = automorphism_group(G)

    def key_of_labels(self, elliptic: Sequence[IndexTriple], curve: IndexTriple) -> tuple:
        best = None
        for alpha in self.auts:
            cand = (
                tuple(sorted(self.braids.label(_apply_aut(alpha, t)) for t in elliptic)),
                self.braids.label(_apply_aut(alpha, curve)),
            )
            if best is None or cand < best:
                best = cand
        return best

    def key(self, T: ActionTuple) -> tuple:
        G = self.G
        return self.key_of_labels(
            [self.braids.label(triple_indices(G, S)) for S in T.elliptic_triples],
            self.braids.label(triple_indices(G, T.curve_triple)),
        )


def tuple_classes(G: Group, tuples: Iterable[ActionTuple]) -> TupleClassReport:
    """Isomorphism classes of action tuples plus the class each one goes to under componentwise conjugation.

    ``conjugation[i]`` is the index of the class containing the conjugate of
    class ``i``, or None when that class is not among the inputs.
    """
    clf = TupleClassifier(G)
    blocks: dict[tuple, list[ActionTuple]] = {}
    for T in tuples:
        blocks.setdefault(clf.key(T), []).append(T)
    keys = sorted(blocks)
    classes = tuple(
        TupleClass(k, tuple(sorted(blocks[k], key=lambda T: (T.elliptic_triples, T.curve_triple)))) for k in keys
    )
    position = {k: i for i, k in enumerate(keys)}
    conj = tuple(position.get(clf.key(conjugate_tuple(G, c.representative))) for c in classes)
    return TupleClassReport(classes, conj)


# shapes --------------------------------------------------------------------


class ShapeTag(enum.Enum):
    GENERAL = "GENERAL"
    EXC366 = "EXC366"


@dataclass(frozen=True)
class TripleShape:
    """Shape of a curve triple; ``rotated`` is the cyclic rotation of the input realising it."""

    tag: ShapeTag
    rotation: int
    rotated: GeneratingTriple


def rotate_triple(S: GeneratingTriple, r: int) -> GeneratingTriple:
    """Cyclic rotation by ``r`` places to the left; it is a braid move (sigma_1 sigma_2 inverted)."""
    g = list(S)
    t = list(S.type)
    r %= 3
    return GeneratingTriple(*(g[r:] + g[:r]), type=tuple(t[r:] + t[:r]))


def triple_shape(G: Group, S: GeneratingTriple) -> TripleShape:
    """GENERAL when exactly one entry lies in A (rotated to the end), EXC366 when none does.

    Anything else contradicts the shape classification for generating
    triples of A x| Z_d and raises ShapeError.
    """
    inside = [i for i, g in enumerate(S) if G.in_A(g)]
    if len(inside) == 1:
        r = (inside[0] + 1) % 3
        rot = rotate_triple(S, r)
        if rot.type[0] != G.d or rot.type[1] != G.d:
            raise ShapeError(f"entries outside A should have order {G.d}, triple has type {list(rot.type)}")
        return TripleShape(ShapeTag.GENERAL, r, rot)
    if not inside:
        if G.d != 6 or sorted(S.type) != [3, 6, 6]:
            raise ShapeError(f"no entry in A, but d={G.d} and type {list(S.type)} is not a permutation of [3,6,6]")
        r = S.type.index(3)
        return TripleShape(ShapeTag.EXC366, r, rotate_triple(S, r))
    raise ShapeError("two entries in A force the third into A, so the triple cannot generate")


def curve_types(G: Group, min_genus: int = 2) -> list[tuple[int, int, int]]:
    """Ordered types [d, d, l] with l | exponent of A and Hurwitz genus >= min_genus."""
    orders = sorted({G.element_order(g) for g in G if G.in_A(g) and g != G.identity})
    out = []
    for ell in orders:
        try:
            if hurwitz_genus(G.order, (G.d, G.d, ell)) >= min_genus:
                out.append((G.d, G.d, ell))
        except InvalidGenusError:
            continue
    return out


def all_types(G: Group) -> list[tuple[int, int, int]]:
    orders = sorted({G.element_order(g) for g in G} - {1})
    return list(itertools.product(orders, repeat=3))
