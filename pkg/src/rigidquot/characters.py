"""One-dimensional characters trivial on A, the Chevalley-Weil count, and rigidity.

Monodromy convention: the entry g_i of a triple rotates a neighbourhood of
its fixed point by zeta_{m_i}, so a holomorphic 1-form there pulls back under
g_i^-1 with factor zeta_{m_i}^-1.  Hence the character of G on H^0(omega_E)
takes the value zeta_{m_i}^-1 on g_i.  Passing ``sign=-1`` everywhere gives
the opposite convention; class counts and rigidity verdicts do not depend on
it (the tests check this).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ConventionError, ExceptionalGroupError
from .groups import Group, GroupElement, is_exceptional
from .triples import ELLIPTIC_SIGNATURES, ActionTuple, GeneratingTriple, hurwitz_genus


@dataclass(frozen=True, order=True)
class RootOfUnity:
    """The exact root of unity exp(2 pi i k / m), stored reduced with 0 <= k < m."""

    k: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("order must be positive")
        g = math.gcd(self.k, self.m)
        object.__setattr__(self, "k", (self.k // g) % (self.m // g) if self.k else 0)
        object.__setattr__(self, "m", self.m // g if self.k else 1)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        m = math.lcm(self.m, other.m)
        return RootOfUnity(self.k * (m // self.m) + other.k * (m // other.m), m)

    def conjugate(self) -> "RootOfUnity":
        return RootOfUnity(-self.k, self.m)

    @property
    def angle(self) -> Fraction:
        """The fraction k/m in [0, 1)."""
        return Fraction(self.k, self.m)

    @property
    def is_one(self) -> bool:
        return self.k == 0

    def __str__(self) -> str:
        return "1" if self.k == 0 else f"zeta_{self.m}^{self.k}"


@dataclass(frozen=True, order=True)
class OneDimCharacter:
    """The character (a, k) -> zeta_d^(e k) of G / A = Z_d."""

    d: int
    exponent: int = field(default=0)

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % self.d)

    def __call__(self, g: GroupElement) -> RootOfUnity:
        return RootOfUnity(self.exponent * g.k, self.d)

    def __mul__(self, other: "OneDimCharacter") -> "OneDimCharacter":
        if other.d != self.d:
            raise ValueError("characters of different groups")
        return OneDimCharacter(self.d, self.exponent + other.exponent)

    def conjugate(self) -> "OneDimCharacter":
        return OneDimCharacter(self.d, -self.exponent)

    @property
    def is_trivial(self) -> bool:
        return self.exponent == 0

    def to_json(self) -> dict:
        return {"d": self.d, "exponent": self.exponent}


def elliptic_character(G: Group, S: GeneratingTriple, sign: int = 1) -> OneDimCharacter:
    """The character of H^0(omega_E) for the elliptic curve E -> P^1 given by ``S``.

    Solves chi(g_i) = zeta_{m_i}^(-sign) for all three entries; exactly one
    exponent must satisfy all three, otherwise ConventionError.
    """
    if sorted(S.type) != sorted(ELLIPTIC_SIGNATURES[G.d]):
        raise ValueError(f"type {list(S.type)} is not the elliptic signature for d={G.d}")
    d = G.d
    solutions = []
    for e in range(d):
        chi = OneDimCharacter(d, e)
        if all(chi(g) == RootOfUnity(-sign, m) for g, m in zip(S, S.type)):
            solutions.append(e)
    if len(solutions) != 1:
        raise ConventionError(f"elliptic triple {S} gives {len(solutions)} consistent characters")
    return OneDimCharacter(d, solutions[0])


def chevalley_weil_mult(chi: OneDimCharacter, S: GeneratingTriple) -> int:
    """Multiplicity of ``chi`` in H^0(omega_C) for the triangle cover C given by ``S``.

    For a nontrivial one-dimensional chi this is -1 + sum_i angle(chi(g_i)),
    where angle is the fraction in [0, 1).
    """
    if chi.is_trivial:
        raise ValueError("trivial character: the invariant part is the genus of P^1, which is 0")
    total = -1 + sum((chi(g).angle for g in S), Fraction(0))
    if total.denominator != 1 or total < 0:
        raise ConventionError(f"multiplicity {total} of {chi} on {S} is not a non-negative integer")
    return int(total)


@dataclass(frozen=True)
class Violation:
    condition: int
    factor_pair: tuple[int, int]
    detail: str = ""

    def to_json(self) -> dict:
        return {"condition": self.condition, "factor_pair": list(self.factor_pair), "detail": self.detail}


@dataclass(frozen=True)
class RigidityReport:
    rigid: bool
    violations: tuple[Violation, ...] = ()

    def __bool__(self) -> bool:
        return self.rigid

    def to_json(self) -> dict:
        return {"rigid": self.rigid, "violations": [v.to_json() for v in self.violations]}

    @classmethod
    def from_json(cls, data: dict) -> "RigidityReport":
        return cls(
            data["rigid"],
            tuple(Violation(v["condition"], tuple(v["factor_pair"]), v.get("detail", "")) for v in data["violations"]),
        )


def _check_not_exceptional(G: Group) -> None:
    if G.order in (8, 9, 16, 27) and is_exceptional(G):
        raise ExceptionalGroupError(
            f"{G!r} is one of the four exceptional groups, which admit no rigid action of this kind"
        )


def is_rigid_action(G: Group, T: ActionTuple, sign: int = 1) -> RigidityReport:
    """Rigidity of the diagonal action on E_1 x ... x E_{n-1} x C.

    Factor indices in the report are 1-based, with the curve factor as n.
    Condition 1: signatures (elliptic types, curve genus >= 2).  Condition 2:
    the conjugate of each elliptic character does not occur in H^0(omega_C).
    Condition 3: no two elliptic characters multiply to the trivial one.
    """
    _check_not_exceptional(G)
    n = T.n
    violations: list[Violation] = []
    sig = sorted(ELLIPTIC_SIGNATURES[G.d])
    for i, S in enumerate(T.elliptic_triples, start=1):
        if sorted(S.type) != sig:
            violations.append(Violation(1, (i, i), "not an elliptic signature"))
    try:
        genus = hurwitz_genus(G.order, T.curve_triple.type)
    except ValueError:
        genus = -1
    if genus < 2:
        violations.append(Violation(1, (n, n), "curve genus below 2"))
    if violations:
        return RigidityReport(False, tuple(violations))
    chars = [elliptic_character(G, S, sign) for S in T.elliptic_triples]
    for i, chi in enumerate(chars, start=1):
        if chevalley_weil_mult(chi.conjugate(), T.curve_triple) != 0:
            violations.append(Violation(2, (i, n), "elliptic and curve characters pair to an invariant"))
    for i in range(len(chars)):
        for j in range(i + 1, len(chars)):
            if (chars[i] * chars[j]).is_trivial:
                violations.append(Violation(3, (i + 1, j + 1), "elliptic characters are mutually conjugate"))
    return RigidityReport(not violations, tuple(violations))


def invariant_plurigenus(k: int, type: Sequence[int]) -> int:
    """Dimension of G-invariant k-canonical forms of a triangle cover of the given type."""
    if k < 1:
        raise ValueError("k must be positive")
    if any(m < 2 for m in type):
        raise ValueError("branching orders must be >= 2")
    deg = -2 * k + sum((k * (m - 1)) // m for m in type)
    return max(deg + 1, 0)
