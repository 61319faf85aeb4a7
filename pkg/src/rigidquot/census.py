"""Special points, stabilizers and the cyclic quotient singularities of (E^{n-1} x C)/G.

A triple S = [g1, g2, g3] describes a curve with a G-action whose points
with nontrivial stabilizer sit in three fibres; the fibre over the i-th
branch point is G / <g_i>, the coset x<g_i> being fixed by x<g_i>x^-1.  The
element x g_i^r x^-1 acts on the tangent line there by zeta_{m_i}^r.
"""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .characters import elliptic_character
from .errors import ContradictionError
from .groups import Group, GroupElement
from .triples import ActionTuple, GeneratingTriple, triple_indices


@dataclass(frozen=True, order=True)
class SpecialPoint:
    """The coset ``x<g_i>`` in the fibre over branch point ``branch_index`` (1-based)."""

    factor_index: int
    branch_index: int
    coset: GroupElement

    def to_json(self) -> dict:
        return {
            "factor_index": self.factor_index,
            "branch_index": self.branch_index,
            "coset": [self.coset.a[0], self.coset.a[1], self.coset.k],
        }


@dataclass(frozen=True, order=True)
class SingularityType:
    """The germ C^n / Z_l with generator diag(zeta_l^{a_1}, ..., zeta_l^{a_n})."""

    ell: int
    weights: tuple[int, ...]

    @classmethod
    def normalized(cls, ell: int, weights: Iterable[int]) -> "SingularityType":
        ws = [w % ell for w in weights]
        if any(w == 0 for w in ws) or ell < 2:
            raise ValueError(f"weights {ws} mod {ell} do not give an isolated cyclic quotient")
        best = min(
            tuple(sorted((u * w) % ell for w in ws)) for u in range(1, ell) if math.gcd(u, ell) == 1
        )
        return cls(ell, best)

    @classmethod
    def parse(cls, text: str) -> "SingularityType":
        m = re.fullmatch(r"\s*1/(\d+)\(([\d,\s]+)\)\s*", text)
        if not m:
            raise ValueError(f"cannot parse singularity type {text!r}")
        return cls.normalized(int(m.group(1)), [int(x) for x in m.group(2).split(",")])

    @property
    def dimension(self) -> int:
        return len(self.weights)

    def __str__(self) -> str:
        return f"1/{self.ell}({','.join(map(str, self.weights))})"

    def is_standard_shape(self) -> bool:
        """True for 1/l(1,...,1) and 1/l(1,...,1,l-1)."""
        ones = (1,) * self.dimension
        return self.weights in (ones, ones[:-1] + (self.ell - 1,), tuple(sorted(ones[:-1] + (self.ell - 1,))))


def is_canonical_type(t: SingularityType) -> bool:
    """Age criterion: every nontrivial power of the generator has age >= 1."""
    for r in range(1, t.ell):
        if sum((r * w) % t.ell for w in t.weights) < t.ell:
            return False
    return True


def _coset(G: Group, x: int, sub: frozenset[int]) -> frozenset[int]:
    return frozenset(G.mul_index(x, h) for h in sub)


@dataclass
class _Fibre:
    """Points of one branch fibre, with stabilizers and tangent weights precomputed."""

    branch_index: int
    m: int
    points: list[int]  # coset representatives (least index)
    stabilizers: list[frozenset[int]]
    # weight[p][h] = r with h = x g^r x^-1, for h in the stabilizer of point p
    rotations: list[dict[int, int]]


def _fibres(G: Group, S: GeneratingTriple) -> list[_Fibre]:
    out = []
    for bi, gi in enumerate(triple_indices(G, S), start=1):
        m = G.order_index(gi)
        powers = [G.identity_index]
        for _ in range(m - 1):
            powers.append(G.mul_index(powers[-1], gi))
        sub = frozenset(powers)
        seen: set[int] = set()
        points, stabs, rots = [], [], []
        for x in range(G.order):
            if x in seen:
                continue
            coset = _coset(G, x, sub)
            seen |= coset
            xinv = G.inv_index(x)
            rot = {G.mul_index(G.mul_index(x, p), xinv): r for r, p in enumerate(powers)}
            points.append(min(coset))
            stabs.append(frozenset(rot))
            rots.append(rot)
        out.append(_Fibre(bi, m, points, stabs, rots))
    return out


def special_points(G: Group, S: GeneratingTriple, factor_index: int = 1) -> list[SpecialPoint]:
    """All points with nontrivial stabilizer on the curve of ``S``: sum of |G|/m_i cosets."""
    return [
        SpecialPoint(factor_index, f.branch_index, G.elements[x]) for f in _fibres(G, S) for x in f.points
    ]


def fixed_point_count(G: Group, g: GroupElement, S: GeneratingTriple) -> tuple[int, list[SpecialPoint]]:
    """Number of points fixed by ``g`` on the curve of ``S``, with the points."""
    if g == G.identity:
        raise ValueError("the identity fixes every point")
    gi = G.index(g)
    pts = [
        SpecialPoint(1, f.branch_index, G.elements[x])
        for f in _fibres(G, S)
        for x, stab in zip(f.points, f.stabilizers)
        if gi in stab
    ]
    return len(pts), pts


def is_free_on_curve(G: Group, H: Iterable[GroupElement], S: GeneratingTriple) -> bool:
    """True iff no nontrivial element of ``H`` has a fixed point on the curve of ``S``."""
    idx = {G.index(h) for h in H} - {G.identity_index}
    return not any(idx & stab for f in _fibres(G, S) for stab in f.stabilizers)


def _cyclic_generator(G: Group, sub: frozenset[int]) -> int:
    for h in sorted(sub):
        if G.order_index(h) == len(sub):
            return h
    raise ContradictionError(f"stabilizer of order {len(sub)} is not cyclic")


def _point_stabilizer(G: Group, S: GeneratingTriple, point: SpecialPoint) -> frozenset[int]:
    x = G.index(point.coset)
    gi = triple_indices(G, S)[point.branch_index - 1]
    xinv = G.inv_index(x)
    return frozenset(G.mul_index(G.mul_index(x, h), xinv) for h in G.subgroup_indices([gi]))


def tuple_stabilizer(
    G: Group, triples: Sequence[GeneratingTriple], points: Sequence[SpecialPoint | None]
) -> tuple[GroupElement, int]:
    """Generator and order of the common stabilizer of one point per factor (None = a free point)."""
    common = frozenset(range(G.order))
    for S, p in zip(triples, points):
        if p is None:
            return G.identity, 1
        common &= _point_stabilizer(G, S, p)
    h = _cyclic_generator(G, common)
    return G.elements[h], len(common)


@dataclass(frozen=True)
class CensusTable:
    rows: tuple[tuple[SingularityType, int], ...]

    def as_dict(self) -> dict[str, int]:
        return {str(t): c for t, c in self.rows}

    @property
    def total(self) -> int:
        return sum(c for _, c in self.rows)

    def to_json(self) -> list[dict]:
        return [{"type": str(t), "count": c} for t, c in self.rows]

    @classmethod
    def from_json(cls, rows: list[dict]) -> "CensusTable":
        return cls(tuple(sorted((SingularityType.parse(r["type"]), r["count"]) for r in rows)))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["type", "count"])
        for t, c in self.rows:
            w.writerow([str(t), c])
        return buf.getvalue()


@dataclass(frozen=True)
class StabilizedTuple:
    points: tuple[int, ...]  # one point index per factor, into that factor's flattened point list
    stabilizer: frozenset[int]
    type: SingularityType


def _stabilized_tuples(G: Group, T: ActionTuple, check_linear_part: bool = True) -> list[StabilizedTuple]:
    triples = T.triples
    per_factor = []
    for S in triples:
        flat = []
        for f in _fibres(G, S):
            for stab, rot in zip(f.stabilizers, f.rotations):
                flat.append((stab, rot, f.m))
        per_factor.append(flat)
    if check_linear_part:
        for S, flat in zip(T.elliptic_triples, per_factor):
            _check_elliptic_weights(G, S, flat)
    full = frozenset(range(G.order))
    found: list[StabilizedTuple] = []

    def descend(j: int, common: frozenset[int], chosen: list[int]):
        if j == len(per_factor):
            h = _cyclic_generator(G, common)
            ell = len(common)
            weights = []
            for jj, p in enumerate(chosen):
                _, rot, m = per_factor[jj][p]
                weights.append(rot[h] * ell // m)
            t = SingularityType.normalized(ell, weights)
            if not t.is_standard_shape() or G.d % ell:
                raise ContradictionError(f"stabilized point has type {t}, not of the two expected shapes")
            found.append(StabilizedTuple(tuple(chosen), common, t))
            return
        for p, (stab, _, _) in enumerate(per_factor[j]):
            nxt = common & stab
            if len(nxt) > 1:
                chosen.append(p)
                descend(j + 1, nxt, chosen)
                chosen.pop()

    descend(0, full, [])
    return found


def _check_elliptic_weights(G: Group, S: GeneratingTriple, flat) -> None:
    """On an elliptic factor each stabilizer element must rotate by the conjugate elliptic character."""
    chi_bar = elliptic_character(G, S).conjugate()
    for stab, rot, m in flat:
        for h, r in rot.items():
            if chi_bar(G.elements[h]).angle * m != r:
                raise ContradictionError("tangent weight on an elliptic factor differs from its linear part")


def singularity_census(G: Group, T: ActionTuple) -> CensusTable:
    """Table of singularity types of the quotient with their numbers of occurrences."""
    counts: dict[SingularityType, int] = {}
    for st in _stabilized_tuples(G, T):
        counts[st.type] = counts.get(st.type, 0) + len(st.stabilizer)
    rows = []
    for t, weighted in sorted(counts.items()):
        if weighted % G.order:
            raise ContradictionError("orbit count is not an integer")
        rows.append((t, weighted // G.order))
    return CensusTable(tuple(rows))


def singularity_census_by_orbits(G: Group, T: ActionTuple) -> CensusTable:
    """Same table, counting G-orbits of stabilized tuples explicitly (slow oracle)."""
    points = []  # per factor: list of (branch index, coset as a set), in the census ordering
    for S in T.triples:
        pts = []
        for bi, gi in enumerate(triple_indices(G, S), start=1):
            sub = G.subgroup_indices([gi])
            seen: set[int] = set()
            for x in range(G.order):
                if x not in seen:
                    coset = _coset(G, x, sub)
                    seen |= coset
                    pts.append((bi, coset))
        points.append(pts)
    lookup = [{pt: p for p, pt in enumerate(pts)} for pts in points]
    remaining = {st.points: st.type for st in _stabilized_tuples(G, T, check_linear_part=False)}
    counts: dict[SingularityType, int] = {}
    while remaining:
        start, t = next(iter(remaining.items()))
        for g in range(G.order):
            image = []
            for j, p in enumerate(start):
                bi, coset = points[j][p]
                image.append(lookup[j][(bi, frozenset(G.mul_index(g, y) for y in coset))])
            remaining.pop(tuple(image), None)
        counts[t] = counts.get(t, 0) + 1
    return CensusTable(tuple(sorted(counts.items())))
