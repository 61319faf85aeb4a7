"""Invariant cyclic subgroups of Z_p^2 and the search for the smallest admissible groups."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .groups import Group, GroupElement, TwistAction, admissible_groups
from .triples import GeneratingTriple, hurwitz_genus, triple_from_indices
from .errors import InvalidGenusError


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def _is_square_mod(x: int, p: int) -> bool:
    """Euler's criterion for an odd prime p (0 counts as a square)."""
    x %= p
    return x == 0 or pow(x, (p - 1) // 2, p) == 1


def invariant_cyclic_exists(p: int, d: int) -> bool:
    """Whether Z_p^2 has a phi_d-invariant subgroup of order p.

    Such a subgroup is an eigenline of the twist matrix mod p, so it exists
    iff the characteristic polynomial has a root: -1 must be a square for
    d = 4, and -3 for d = 3, 6 (with the ramified prime 3 always allowed).
    """
    _require_prime(p)
    TwistAction(d)
    if d == 4:
        return p == 2 or _is_square_mod(-1, p)
    if p == 2:
        return False
    return p == 3 or _is_square_mod(-3, p)


def invariant_cyclic_witnesses(p: int, d: int) -> list[tuple[int, int]]:
    """Generators of every phi_d-invariant cyclic subgroup of order p, by checking all p+1 lines."""
    _require_prime(p)
    twist = TwistAction(d)
    lines = [(1, c) for c in range(p)] + [(0, 1)]
    out = []
    for g in lines:
        x, y = twist.apply(g, p)
        # (x, y) lies on the line through g iff the 2x2 determinant vanishes mod p
        if (g[0] * y - g[1] * x) % p == 0:
            out.append(g)
    return out


def invariant_cyclic_bruteforce(p: int, d: int) -> bool:
    if p > 10_000:
        raise ValueError("brute force is limited to p <= 10^4")
    return bool(invariant_cyclic_witnesses(p, d))


# minimal groups -------------------------------------------------------------


def group_encoding(G: Group) -> str:
    return json.dumps(G.to_json(), sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class Rejection:
    order: int
    group: str | None
    reason: str


@dataclass
class MinimalGroupResult:
    d: int
    max_order: int
    group: Group | None = None
    witness: GeneratingTriple | None = None
    genus: int | None = None
    rejections: list[Rejection] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.group is not None

    def to_json(self) -> dict:
        if self.group is None:
            return {"d": self.d, "max_order": self.max_order, "found": False}
        return {
            "d": self.d,
            "max_order": self.max_order,
            "found": True,
            "order": self.group.order,
            "group": self.group.to_json(),
            "witness": self.witness.to_json(),
            "witness_type": list(self.witness.type),
            "genus": self.genus,
        }


def general_witness(G: Group, min_genus: int = 2) -> tuple[GeneratingTriple | None, str]:
    """Lex-least generating triple [x, y, c] with c in A and genus >= min_genus, else the reason for failure."""
    inside = [i for i, g in enumerate(G.elements) if G.in_A(g) and i != G.identity_index]
    outside = [i for i, g in enumerate(G.elements) if not G.in_A(g)]
    saw_triple = False
    best = None
    for x in outside:
        for c in inside:
            y = G.inv_index(G.mul_index(c, x))  # x y c = 1
            if G.in_A(G.elements[y]) or len(G.subgroup_indices((x, c))) != G.order:
                continue
            saw_triple = True
            t = triple_from_indices(G, (x, y, c))
            try:
                genus = hurwitz_genus(G.order, t.type)
            except InvalidGenusError:
                continue
            if genus >= min_genus and (best is None or (x, y, c) < best):
                best = (x, y, c)
    if best is not None:
        return triple_from_indices(G, best), ""
    return None, ("genus" if saw_triple else "no_generating_triple")


def minimal_group_search(d: int, max_order: int, shuffle_seed: int | None = None) -> MinimalGroupResult:
    """Smallest A x|_{phi_d} Z_d with a genus >= 2 generating triple having an entry in A.

    Candidates of each order are all tested; ties break by the canonical
    JSON encoding.  ``shuffle_seed`` permutes the candidate order (the result
    must not depend on it).
    """
    TwistAction(d)
    result = MinimalGroupResult(d, max_order)
    by_order: dict[int, list[Group]] = {}
    for G in admissible_groups(max_order, (d,)):
        by_order.setdefault(G.order, []).append(G)
    rng = random.Random(shuffle_seed) if shuffle_seed is not None else None
    for order in range(d, max_order + 1, d):
        candidates = by_order.get(order, [])
        if not candidates:
            result.rejections.append(Rejection(order, None, "no_invariant_subgroup"))
            continue
        if rng is not None:
            candidates = candidates[:]
            rng.shuffle(candidates)
        winners = []
        for G in candidates:
            if G.abelian_order == 1:
                result.rejections.append(Rejection(order, group_encoding(G), "no_invariant_subgroup"))
                continue
            witness, reason = general_witness(G)
            if witness is None:
                result.rejections.append(Rejection(order, group_encoding(G), reason))
            else:
                winners.append((group_encoding(G), G, witness))
        if winners:
            _, G, witness = min(winners, key=lambda w: w[0])
            result.group, result.witness = G, witness
            result.genus = hurwitz_genus(G.order, witness.type)
            result.rejections.sort(key=lambda r: (r.order, r.group or "", r.reason))
            return result
    result.rejections.sort(key=lambda r: (r.order, r.group or "", r.reason))
    return result


def genus_lower_bound_fails(d: int, ell: int) -> bool:
    """True when type [d, d, l] cannot have genus >= 2 for any group order (1 - 2/d - 1/l <= 0)."""
    return 1 - Fraction(2, d) - Fraction(1, ell) <= 0


@dataclass(frozen=True)
class Presentation:
    s: GroupElement
    t: GroupElement
    exponent: int


def find_presentation(G: Group, t_order: int, exponent: int) -> Presentation | None:
    """Elements s of order d and t generating A with s t s^-1 = t^exponent, if any."""
    if G.abelian_order != t_order:
        return None
    for s in G.elements:
        if G.element_order(s) != G.d:
            continue
        for t in G.elements:
            if not G.in_A(t) or G.element_order(t) != t_order:
                continue
            if G.conjugate(s, t) == G.power(t, exponent) and G.generates((s, t)):
                return Presentation(s, t, exponent)
    return None


# Relations s^d = t^m = 1, s t s^-1 = t^r of the smallest groups, keyed by d.
MINIMAL_PRESENTATIONS: dict[int, tuple[int, int, int]] = {
    3: (21, 7, 4),
    4: (20, 5, 3),
    6: (18, 3, 2),
}
