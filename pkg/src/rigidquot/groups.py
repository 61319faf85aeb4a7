"""Semidirect products A x|_phi Z_d with A a twist-invariant subgroup of Z_n^2.

Elements are pairs ``(a, k)`` with ``a`` a vector mod ``n`` and ``k`` a residue
mod ``d``; the product is ``(a, k)(b, l) = (a + phi^k(b), k + l)``.  A group
may also carry a kernel ``K <= A`` (twist-invariant), in which case ``a`` is
stored as the canonical representative of ``a + K``: this is how quotients
``A/K x| Z_d`` are realised without leaving the family.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import CapacityError, NonInvariantSubgroupError

Vector = tuple[int, int]

TWIST_MATRICES: dict[int, tuple[tuple[int, int], tuple[int, int]]] = {
    3: ((0, -1), (1, -1)),  # (a, b) -> (-b, a - b)
    4: ((0, -1), (1, 0)),  # (a, b) -> (-b, a)
    6: ((0, -1), (1, 1)),  # (a, b) -> (-b, a + b)
}

DEFAULT_AUTOMORPHISM_BOUND = 512


def _mat_vec(m, v: Vector, n: int) -> Vector:
    return ((m[0][0] * v[0] + m[0][1] * v[1]) % n, (m[1][0] * v[0] + m[1][1] * v[1]) % n)


def _mat_mul(m1, m2):
    return tuple(
        tuple(sum(m1[i][t] * m2[t][j] for t in range(2)) for j in range(2)) for i in range(2)
    )


@dataclass(frozen=True)
class TwistAction:
    d: int

    def __post_init__(self):
        if self.d not in TWIST_MATRICES:
            raise ValueError(f"twist order must be 3, 4 or 6, got {self.d}")

    @property
    def matrix(self):
        return TWIST_MATRICES[self.d]

    def power(self, k: int):
        m = ((1, 0), (0, 1))
        for _ in range(k % self.d):
            m = _mat_mul(self.matrix, m)
        return m

    def apply(self, v: Vector, n: int, k: int = 1) -> Vector:
        return _mat_vec(self.power(k), v, n)

    def order_mod(self, n: int) -> int:
        """Order of the twist matrix acting on Z_n^2."""
        ident = ((1 % n, 0), (0, 1 % n))
        m = self.matrix
        for k in range(1, self.d + 1):
            if tuple(tuple(x % n for x in row) for row in m) == ident:
                return k
            m = _mat_mul(self.matrix, m)
        raise AssertionError("twist matrix has order dividing d")


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def _hermite(rows: Iterable[Vector]) -> tuple[int, int, int]:
    """Hermite form ``((a, b), (0, c))`` of the lattice spanned by ``rows``.

    The lattice must have full rank; ``0 <= b < c``.
    """
    p, q = 0, 0
    tail: list[int] = []
    for x, y in rows:
        if x == 0:
            tail.append(y)
            continue
        if p == 0:
            p, q = x, y
            continue
        g, u, v = _egcd(p, x)
        tail.append((p // g) * y - (x // g) * q)
        p, q = g, u * q + v * y
    c = 0
    for y in tail:
        c = math.gcd(c, y)
    if p < 0:
        p, q = -p, -q
    if p == 0 or c == 0:
        raise ValueError("lattice is not of full rank")
    return p, q % c, c


@dataclass(frozen=True, order=True)
class AbelianSubgroup:
    """Subgroup ``L / nZ^2`` of Z_n^2 with ``L`` in Hermite form ``((a, b), (0, c))``."""

    n: int
    a: int
    b: int
    c: int

    @classmethod
    def generated(cls, n: int, gens: Iterable[Vector]) -> "AbelianSubgroup":
        rows = [(int(x) % n, int(y) % n) for x, y in gens]
        a, b, c = _hermite(rows + [(n, 0), (0, n)])
        return cls(n, a, b, c)

    @classmethod
    def trivial(cls, n: int) -> "AbelianSubgroup":
        return cls(n, n, 0, n)

    @classmethod
    def full(cls, n: int) -> "AbelianSubgroup":
        return cls(n, 1, 0, 1)

    @property
    def order(self) -> int:
        return self.n * self.n // (self.a * self.c)

    @property
    def canonical_form(self) -> tuple[Vector, Vector]:
        return ((self.a % self.n, self.b % self.n), (0, self.c % self.n))

    @property
    def generators(self) -> tuple[Vector, ...]:
        return tuple(v for v in self.canonical_form if v != (0, 0))

    def sort_key(self):
        return (self.order, self.canonical_form)

    def __contains__(self, v: Vector) -> bool:
        x, y = v[0] % self.n, v[1] % self.n
        if x % self.a:
            return False
        return (y - (x // self.a) * self.b) % self.c == 0

    def elements(self) -> list[Vector]:
        n = self.n
        return sorted(
            {((i * self.a) % n, (i * self.b + j * self.c) % n) for i in range(n // self.a) for j in range(n // self.c)}
        )

    def reduce(self, v: Vector) -> Vector:
        """Canonical representative of the coset ``v + self`` in Z_n^2."""
        x, y = v
        q = x // self.a
        return (x - q * self.a, (y - q * self.b) % self.c)

    def contains_subgroup(self, other: "AbelianSubgroup") -> bool:
        return other.n == self.n and all(g in self for g in other.generators)

    def is_invariant(self, d: int) -> bool:
        twist = TwistAction(d)
        return all(twist.apply(g, self.n) in self for g in self.generators)

    def exponent(self) -> int:
        e = 1
        for v in self.generators:
            e = math.lcm(e, _vector_order(v, self.n))
        return e

    def is_cyclic(self) -> bool:
        return self.exponent() == self.order

    def to_json(self) -> list[list[int]]:
        return [list(v) for v in self.canonical_form]


def _vector_order(v: Vector, n: int) -> int:
    return n // math.gcd(n, v[0], v[1])


class GroupElement(NamedTuple):
    a: Vector
    k: int

    def __str__(self) -> str:
        return f"({self.a[0]},{self.a[1]}|{self.k})"


class Group:
    """The group ``A/K x|_{phi_d} Z_d``; ``K`` is trivial unless this is a quotient."""

    def __init__(self, n: int, d: int, A: AbelianSubgroup, kernel: AbelianSubgroup | None = None):
        self.n = n
        self.d = d
        self.twist = TwistAction(d)
        self.A = A
        self.kernel = kernel if kernel is not None else AbelianSubgroup.trivial(n)
        if not A.is_invariant(d):
            raise NonInvariantSubgroupError(f"subgroup generated by {list(A.generators)} is not phi_{d}-invariant")
        if not self.kernel.is_invariant(d) or not A.contains_subgroup(self.kernel):
            raise NonInvariantSubgroupError("kernel must be an invariant subgroup of A")
        self._twists = [self.twist.power(k) for k in range(d)]
        vectors = sorted({self.kernel.reduce(v) for v in A.elements()})
        self.elements: tuple[GroupElement, ...] = tuple(
            GroupElement(v, k) for v in vectors for k in range(d)
        )
        self._index = {x: i for i, x in enumerate(self.elements)}
        self.identity = GroupElement((0, 0), 0)
        m = len(self.elements)
        table = [[0] * m for _ in range(m)]
        for i, (a, k) in enumerate(self.elements):
            row = table[i]
            for j, (b, l) in enumerate(self.elements):
                tb = _mat_vec(self._twists[k], b, n)
                v = self.kernel.reduce(((a[0] + tb[0]) % n, (a[1] + tb[1]) % n))
                row[j] = self._index[GroupElement(v, (k + l) % d)]
        self._mul = table
        e = self._index[self.identity]
        self._inv = [row.index(e) for row in table]
        self._e = e

    # identity and structure ------------------------------------------------
    def key(self):
        return (self.n, self.d, self.A, self.kernel)

    def __eq__(self, other):
        return isinstance(other, Group) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        extra = f", kernel={list(self.kernel.generators)}" if self.kernel.order > 1 else ""
        return f"Group(n={self.n}, d={self.d}, A={list(self.A.generators)}{extra}, order={self.order})"

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def abelian_order(self) -> int:
        return self.A.order // self.kernel.order

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.elements)

    # index level -----------------------------------------------------------
    def index(self, x: GroupElement) -> int:
        return self._index[x]

    def element(self, i: int) -> GroupElement:
        return self.elements[i]

    def mul_index(self, i: int, j: int) -> int:
        return self._mul[i][j]

    def inv_index(self, i: int) -> int:
        return self._inv[i]

    @property
    def identity_index(self) -> int:
        return self._e

    # element level ---------------------------------------------------------
    def element_of(self, a: Vector, k: int = 0) -> GroupElement:
        """Normalise a raw pair into an element of this group."""
        v = (a[0] % self.n, a[1] % self.n)
        if v not in self.A:
            raise ValueError(f"{v} is not in A")
        x = GroupElement(self.kernel.reduce(v), k % self.d)
        return x

    def rotation(self, k: int = 1) -> GroupElement:
        """The element ``(0, k)``; ``rotation(u)`` for a unit ``u`` is a choice of ``s``."""
        return GroupElement((0, 0), k % self.d)

    def unit_residues(self) -> list[int]:
        return [u for u in range(1, self.d) if math.gcd(u, self.d) == 1]

    def compose(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return self.elements[self._mul[self._index[x]][self._index[y]]]

    def mul(self, *xs: GroupElement) -> GroupElement:
        r = self._e
        for x in xs:
            r = self._mul[r][self._index[x]]
        return self.elements[r]

    def inverse(self, x: GroupElement) -> GroupElement:
        return self.elements[self._inv[self._index[x]]]

    def power(self, x: GroupElement, m: int) -> GroupElement:
        i = self._index[x]
        if m < 0:
            i, m = self._inv[i], -m
        r = self._e
        for _ in range(m):
            r = self._mul[r][i]
        return self.elements[r]

    def conjugate(self, x: GroupElement, y: GroupElement) -> GroupElement:
        """``x y x^-1``."""
        return self.mul(x, y, self.inverse(x))

    def order_index(self, i: int) -> int:
        m, r = 1, i
        while r != self._e:
            r = self._mul[r][i]
            m += 1
        return m

    def element_order(self, x: GroupElement) -> int:
        return self._orders[self._index[x]]

    @cached_property
    def _orders(self) -> list[int]:
        return [self.order_index(i) for i in range(self.order)]

    def in_A(self, x: GroupElement) -> bool:
        return x.k == 0

    def subgroup_indices(self, gens: Iterable[int]) -> frozenset[int]:
        gens = list(gens)
        seen = {self._e}
        queue = deque([self._e])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self._mul[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def generated_subgroup(self, gens: Iterable[GroupElement]) -> frozenset[GroupElement]:
        idx = self.subgroup_indices(self._index[g] for g in gens)
        return frozenset(self.elements[i] for i in idx)

    def generates(self, gens: Iterable[GroupElement]) -> bool:
        return len(self.subgroup_indices(self._index[g] for g in gens)) == self.order

    @cached_property
    def generating_set(self) -> tuple[GroupElement, ...]:
        """A small generating set, found greedily from ``(0, 1)`` and the generators of A."""
        candidates = [self.rotation(1)] + [self.element_of(v) for v in self.A.generators]
        for size in range(1, 3):
            for combo in itertools.combinations(self.elements, size):
                if self.generates(combo):
                    return combo
            if size == 1 and self.order > 64:
                break
        for size in range(1, len(candidates) + 1):
            for combo in itertools.combinations(candidates, size):
                if self.generates(combo):
                    return combo
        raise AssertionError("group not generated by (0,1) and A")

    # serialisation ---------------------------------------------------------
    def to_json(self) -> dict:
        out = {"n": self.n, "d": self.d, "A_gens": [list(v) for v in self.A.generators]}
        if self.kernel.order > 1:
            out["kernel_gens"] = [list(v) for v in self.kernel.generators]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Group":
        n = data["n"]
        A = AbelianSubgroup.generated(n, [tuple(v) for v in data["A_gens"]])
        kernel = None
        if data.get("kernel_gens"):
            kernel = AbelianSubgroup.generated(n, [tuple(v) for v in data["kernel_gens"]])
        return cls(n, data["d"], A, kernel)


def make_group(n: int, d: int, gens: Sequence[Vector]) -> Group:
    """``A x|_{phi_d} Z_d`` with A the subgroup of Z_n^2 generated by ``gens``.

    Raises NonInvariantSubgroupError when the generated subgroup is not
    stable under phi_d.
    """
    if not gens:
        raise ValueError("need at least one generator (use (0, 0) for trivial A)")
    A = AbelianSubgroup.generated(n, gens)
    return Group(n, d, A)


def compose(G: Group, x: GroupElement, y: GroupElement) -> GroupElement:
    return G.compose(x, y)


def element_order(G: Group, g: GroupElement) -> int:
    return G.element_order(g)


def all_subgroups(n: int) -> list[AbelianSubgroup]:
    out = []
    for a in range(1, n + 1):
        if n % a:
            continue
        for c in range(1, n + 1):
            if n % c:
                continue
            for b in range(c):
                if ((n // a) * b) % c == 0:
                    out.append(AbelianSubgroup(n, a, b, c))
    return out


def enumerate_invariant_subgroups(n: int, d: int, max_order: int | None = None) -> list[AbelianSubgroup]:
    """All phi_d-invariant subgroups of Z_n^2 of order at most ``max_order``."""
    if n < 1:
        raise ValueError("modulus must be positive")
    found = [
        A for A in all_subgroups(n) if (max_order is None or A.order <= max_order) and A.is_invariant(d)
    ]
    return sorted(found, key=AbelianSubgroup.sort_key)


def admissible_groups(max_order: int, ds: Sequence[int] = (3, 4, 6)) -> list[Group]:
    """Every ``A x| Z_d`` of order <= max_order, with ``A`` in its minimal ambient Z_n^2 (n = exp A).

    Distinct subgroups can still give isomorphic groups; no deduplication up
    to isomorphism is attempted.
    """
    out = []
    for d in ds:
        for n in range(1, max_order // d + 1):
            for A in enumerate_invariant_subgroups(n, d, max_order // d):
                if A.exponent() == n:
                    out.append(Group(n, d, A))
    return out


# automorphisms -------------------------------------------------------------


@dataclass(frozen=True)
class Automorphism:
    """An automorphism, stored as generator images plus the induced permutation of indices."""

    images: tuple[GroupElement, ...]
    perm: tuple[int, ...]

    def __call__(self, G: Group, x: GroupElement) -> GroupElement:
        return G.elements[self.perm[G.index(x)]]


def _extend_hom(G: Group, H: Group, gens: Sequence[int], images: Sequence[int]) -> list[int] | None:
    """Extend ``gens[i] -> images[i]`` to a homomorphism G -> H (index maps), or None."""
    f = [-1] * G.order
    f[G.identity_index] = H.identity_index
    queue = deque([G.identity_index])
    while queue:
        x = queue.popleft()
        fx = f[x]
        for g, h in zip(gens, images):
            y = G.mul_index(x, g)
            fy = H.mul_index(fx, h)
            if f[y] == -1:
                f[y] = fy
                queue.append(y)
            elif f[y] != fy:
                return None
    return f


def _bijective_homs(G: Group, H: Group, limit: int | None = None) -> list[list[int]]:
    if G.order != H.order:
        return []
    gens = [G.index(g) for g in G.generating_set]
    candidates = [
        [j for j in range(H.order) if H.order_index(j) == G.order_index(g)] for g in gens
    ]
    found = []
    for images in itertools.product(*candidates):
        f = _extend_hom(G, H, gens, images)
        if f is not None and len(set(f)) == H.order:
            found.append(f)
            if limit is not None and len(found) >= limit:
                break
    return found


def automorphism_group(G: Group, bound: int = DEFAULT_AUTOMORPHISM_BOUND) -> list[Automorphism]:
    """All automorphisms of G by brute force over images of ``G.generating_set``."""
    if G.order > bound:
        raise CapacityError(f"|G| = {G.order} exceeds the automorphism bound {bound}")
    cached = _AUT_CACHE.get(G)
    if cached is not None:
        return cached
    gens = [G.index(g) for g in G.generating_set]
    auts = []
    for f in _bijective_homs(G, G):
        auts.append(Automorphism(tuple(G.elements[f[g]] for g in gens), tuple(f)))
    auts.sort(key=lambda a: a.perm)
    _AUT_CACHE[G] = auts
    return auts


_AUT_CACHE: dict[Group, list[Automorphism]] = {}


def are_isomorphic(G: Group, H: Group) -> bool:
    return bool(_bijective_homs(G, H, limit=1))


# quotients -----------------------------------------------------------------


@dataclass(frozen=True)
class Projection:
    source: Group
    target: Group

    def __call__(self, x: GroupElement) -> GroupElement:
        return GroupElement(self.target.kernel.reduce(x.a), x.k)

    def triple(self, S):
        return tuple(self(g) for g in S)


def quotient_group(G: Group, sub: AbelianSubgroup) -> tuple[Group, Projection]:
    """``G / sub`` for an invariant ``sub <= A`` (sub is a subgroup of the ambient Z_n^2)."""
    if sub.n != G.n:
        raise ValueError("subgroup lives in a different ambient Z_n^2")
    if not sub.is_invariant(G.d):
        raise NonInvariantSubgroupError("quotient by a non-invariant subgroup")
    if not G.A.contains_subgroup(sub):
        raise ValueError("subgroup is not contained in A")
    kernel = AbelianSubgroup.generated(G.n, list(sub.generators) + list(G.kernel.generators) + [(0, 0)])
    Q = Group(G.n, G.d, G.A, kernel)
    return Q, Projection(G, Q)


# exceptional groups --------------------------------------------------------


def exceptional_groups() -> list[Group]:
    """Z_3^2, Z_3^2 x|_phi3 Z_3, Z_2 x Z_4 and Z_2^2 x|_phi4 Z_4."""
    return [
        make_group(3, 3, [(1, 2)]),  # phi_3 fixes (1, 2) mod 3
        make_group(3, 3, [(1, 0), (0, 1)]),
        make_group(2, 4, [(1, 1)]),  # phi_4 fixes (1, 1) mod 2
        make_group(2, 4, [(1, 0), (0, 1)]),
    ]


def is_exceptional(G: Group) -> bool:
    for H in exceptional_groups():
        if H.order == G.order and are_isomorphic(H, G):
            return True
    return False
