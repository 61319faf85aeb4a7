"""Toric resolutions of 1/l(1,...,1) and 1/l(1,...,1,l-1) and their combinatorial checks.

Everything is exact: vectors are tuples of Fractions, and linear systems are
solved by Gaussian elimination over Q.  The lattice is
N = Z^n + Z (1/l)(1,...,1,a); the cone being resolved is the positive orthant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ContradictionError

Vec = tuple[Fraction, ...]


def vec(*xs) -> Vec:
    return tuple(Fraction(x) for x in xs)


def dot(x: Sequence, y: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(x, y)), Fraction(0))


def unit(n: int, i: int) -> Vec:
    """Standard basis vector e_{i+1} of Q^n (0-based ``i``)."""
    return tuple(Fraction(int(j == i)) for j in range(n))


def solve(columns: Sequence[Vec], rhs: Vec) -> Vec | None:
    """Coefficients c with sum c_j columns[j] = rhs, if the columns are independent and a solution exists."""
    rows, cols = len(rhs), len(columns)
    m = [[Fraction(columns[j][i]) for j in range(cols)] + [Fraction(rhs[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            return None
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(m[i][cols] != 0 for i in range(r, rows)):
        return None
    return tuple(m[i][cols] for i in range(cols))


def det(rows: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        out *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return sign * out


@dataclass(frozen=True)
class LatticeData:
    """N = Z^n + Z (1/l)(1,...,1,a); ``ell = 1`` gives Z^n itself."""

    n: int
    ell: int
    a: int

    def __post_init__(self):
        if self.n < 1 or self.ell < 1:
            raise ValueError("need n >= 1 and l >= 1")

    @property
    def glue(self) -> Vec:
        return tuple(Fraction(1, self.ell) for _ in range(self.n - 1)) + (Fraction(self.a % self.ell, self.ell),)

    @property
    def basis(self) -> list[Vec]:
        """A Z-basis of N: the glue vector and e_2, ..., e_n."""
        return [self.glue] + [unit(self.n, i) for i in range(1, self.n)]

    def contains(self, v: Sequence) -> bool:
        v = tuple(Fraction(x) for x in v)
        g = self.glue
        return any(all((x - t * y).denominator == 1 for x, y in zip(v, g)) for t in range(self.ell))

    def dual_contains(self, x: Sequence[int]) -> bool:
        """Membership in N^dual = {x in Z^n : x_1 + ... + x_{n-1} + a x_n = 0 mod l}."""
        if any(Fraction(c).denominator != 1 for c in x):
            return False
        return (sum(x[:-1]) + self.a * x[-1]) % self.ell == 0

    def primitive(self, v: Sequence) -> Vec:
        """The primitive lattice vector of N on the ray through ``v``."""
        v = tuple(Fraction(x) for x in v)
        if all(x == 0 for x in v):
            raise ValueError("zero vector spans no ray")
        # smallest t > 0 with t v in N; t v in N for t = l * lcm of denominators
        den = 1
        for x in v:
            den = den * x.denominator // _gcd(den, x.denominator)
        w = tuple(x * den * self.ell for x in v)
        num = 0
        for x in w:
            num = _gcd(num, int(x))
        w = tuple(x / num for x in w)
        for t in range(1, self.ell + 1):
            cand = tuple(x * Fraction(t, self.ell) for x in w)
            if self.contains(cand):
                return cand
        raise AssertionError("unreachable: l * w always lies in Z^n")

    def to_json(self) -> dict:
        return {"n": self.n, "ell": self.ell, "a": self.a}


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


@dataclass(frozen=True)
class Cone:
    generators: tuple[Vec, ...]

    @property
    def dim(self) -> int:
        return len(self.generators)

    def coefficients(self, v: Sequence) -> Vec | None:
        """Coefficients of ``v`` in the generators (simplicial cones only)."""
        return solve(self.generators, tuple(Fraction(x) for x in v))

    def contains(self, v: Sequence) -> bool:
        c = self.coefficients(v)
        return c is not None and all(x >= 0 for x in c)


def cone_multiplicity(c: Cone, L: LatticeData) -> int:
    """Index in N of the sublattice spanned by the primitive generators of a full-dimensional simplicial cone."""
    if c.dim != L.n:
        raise ValueError(f"cone has {c.dim} generators in dimension {L.n}; need a full-dimensional simplicial cone")
    gens = [L.primitive(u) for u in c.generators]
    index = abs(det(gens)) * L.ell
    if index == 0:
        raise ValueError("generators are linearly dependent: cone is not simplicial")
    if index.denominator != 1:
        raise ContradictionError("lattice index is not an integer")
    return int(index)


@dataclass(frozen=True)
class Fan:
    """Maximal cones as sorted tuples of ray indices; ``labels`` name the listed cones when known."""

    rays: tuple[Vec, ...]
    maximal_cones: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = field(default=(), compare=False)

    def cone(self, idx: int) -> Cone:
        return Cone(tuple(self.rays[r] for r in self.maximal_cones[idx]))

    def cones(self) -> list[Cone]:
        return [self.cone(i) for i in range(len(self.maximal_cones))]

    def label_index(self, label: str) -> int:
        return self.labels.index(label)

    def ray_index(self, v: Sequence) -> int:
        return self.rays.index(tuple(Fraction(x) for x in v))

    def to_json(self) -> dict:
        return {
            "rays": [[str(x) for x in r] for r in self.rays],
            "maximal_cones": [list(c) for c in self.maximal_cones],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Fan":
        return cls(
            tuple(tuple(Fraction(x) for x in r) for r in data["rays"]),
            tuple(tuple(c) for c in data["maximal_cones"]),
        )


def star_subdivision(fan: Fan, v: Vec) -> Fan:
    """Insert the ray through ``v`` into a simplicial fan."""
    rays = list(fan.rays)
    if v in rays:
        return fan
    rays.append(v)
    new = len(rays) - 1
    cones = []
    for cone_idx in fan.maximal_cones:
        coeffs = solve([fan.rays[r] for r in cone_idx], v)
        if coeffs is None or any(x < 0 for x in coeffs):
            cones.append(cone_idx)
            continue
        for pos, x in enumerate(coeffs):
            if x > 0:
                cones.append(tuple(sorted(cone_idx[:pos] + (new,) + cone_idx[pos + 1 :])))
    return Fan(tuple(rays), tuple(sorted(cones)))


def subdivision_ray(L: LatticeData, k: int) -> Vec:
    """v_k = (1/l)(k, ..., k, l-k); v_0 = e_n."""
    return tuple(Fraction(k, L.ell) for _ in range(L.n - 1)) + (Fraction(L.ell - k, L.ell),)


def blowup_ray(L: LatticeData) -> Vec:
    """(1/l)(1, ..., 1), the centre of the single star subdivision for weights 1/l(1,...,1)."""
    return tuple(Fraction(1, L.ell) for _ in range(L.n))


def _is_blowup(L: LatticeData) -> bool:
    return L.a % L.ell == 1


def _expected_cones(L: LatticeData, fan: Fan) -> dict[str, tuple[int, ...]]:
    n, ell = L.n, L.ell
    e = [fan.ray_index(unit(n, i)) for i in range(n)]
    out = {}
    if _is_blowup(L):
        w = fan.ray_index(blowup_ray(L))
        for i in range(n):
            out[f"tau_{i + 1}"] = tuple(sorted(e[:i] + e[i + 1 :] + [w]))
        return out
    v = {k: fan.ray_index(subdivision_ray(L, k)) for k in range(1, ell)}
    for i in range(n - 1):
        out[f"sigma_{i + 1}^(0)"] = tuple(sorted(e[:i] + e[i + 1 :] + [v[1]]))
        for k in range(1, ell - 1):
            out[f"sigma_{i + 1}^({k})"] = tuple(sorted(e[:i] + e[i + 1 : n - 1] + [v[k], v[k + 1]]))
    out[f"sigma_{n}"] = tuple(sorted(e[: n - 1] + [v[ell - 1]]))
    return out


def resolution_fan(L: LatticeData) -> Fan:
    """Star-subdivide the positive orthant at the v_k (a = l-1) or at (1/l)(1,...,1) (a = 1).

    The result is compared against the explicit list of maximal cones; a
    mismatch raises ContradictionError.  Cones get labels ``sigma_i^(k)``,
    ``sigma_n`` or ``tau_i`` (a = 1).
    """
    if L.n < 3 or L.ell < 2:
        raise ValueError("need n >= 3 and l >= 2")
    if L.a % L.ell not in (1, L.ell - 1):
        raise ValueError("weight a must be 1 or l-1")
    fan = Fan(tuple(unit(L.n, i) for i in range(L.n)), (tuple(range(L.n)),))
    centres = [blowup_ray(L)] if _is_blowup(L) else [subdivision_ray(L, k) for k in range(1, L.ell)]
    for v in centres:
        fan = star_subdivision(fan, v)
    expected = _expected_cones(L, fan)
    if sorted(expected.values()) != sorted(fan.maximal_cones):
        raise ContradictionError("star subdivision does not give the listed maximal cones")
    order = sorted(expected, key=lambda lab: expected[lab])
    return Fan(fan.rays, tuple(expected[lab] for lab in order), tuple(order))


# divisors ------------------------------------------------------------------


@dataclass(frozen=True)
class TorusDivisor:
    """D = sum a_rho D_rho, as a map ray index -> coefficient (missing rays have 0)."""

    coefficients: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, coeffs: dict[int, int]) -> "TorusDivisor":
        return cls(tuple(sorted((r, c) for r, c in coeffs.items() if c)))

    def __getitem__(self, ray: int) -> int:
        return dict(self.coefficients).get(ray, 0)


def coordinate_divisor(fan: Fan, L: LatticeData, i: int) -> TorusDivisor:
    """D_i, the divisor of the ray e_i (1-based)."""
    return TorusDivisor.of({fan.ray_index(unit(L.n, i - 1)): 1})


def cartier_data(F: Fan, D: TorusDivisor, L: LatticeData) -> dict[tuple[int, ...], Vec]:
    """m_sigma with <m_sigma, u_rho> = -a_rho on the rays of each (smooth) maximal cone."""
    out = {}
    for idx, cone in zip(F.maximal_cones, F.cones()):
        if cone_multiplicity(cone, L) != 1:
            raise ValueError(f"cone {idx} is not smooth; Cartier data is not defined")
        gens = [L.primitive(u) for u in cone.generators]
        # rows of the system are the generators; solve G m = -a
        cols = [tuple(g[j] for g in gens) for j in range(L.n)]
        m = solve(cols, tuple(Fraction(-D[r]) for r in idx))
        if m is None:
            raise ValueError(f"no unique Cartier data on cone {idx}")
        out[idx] = m
    return out


def in_polyhedron(F: Fan, D: TorusDivisor, L: LatticeData, m: Sequence) -> bool:
    return all(dot(m, L.primitive(u)) >= -D[r] for r, u in enumerate(F.rays))


def is_globally_generated(F: Fan, D: TorusDivisor, L: LatticeData) -> bool:
    """Every m_sigma lies in P_D = {m : <m, u_rho> >= -a_rho for all rays}."""
    return all(in_polyhedron(F, D, L, m) for m in cartier_data(F, D, L).values())


# polyhedra -----------------------------------------------------------------


@dataclass(frozen=True)
class PolyhedraCheck:
    holds: bool
    witness: tuple[int, ...] | None = None


def _new_rays(L: LatticeData) -> list[Vec]:
    if _is_blowup(L):
        return [blowup_ray(L)]
    return [subdivision_ray(L, k) for k in range(1, L.ell)]


def polyhedra_equal_on_lattice(i: int, L: LatticeData, bound: int | None = None) -> PolyhedraCheck:
    """Check P_{D_i} and P_{D_i'} have the same points of N^dual in the box |x_j| <= bound.

    Every constraint involved depends on x only through s = x_1 + ... + x_{n-1}
    and x_n (the new rays have equal first n-1 coordinates), and for a box the
    attainable values of s form an interval.  So the check runs over pairs
    (s, x_n), which is exact and equivalent to the full box enumeration.
    """
    n, ell = L.n, L.ell
    if not 1 <= i <= n:
        raise ValueError("ray index out of range")
    B = 5 * ell if bound is None else bound
    lows = [-1 if j == i - 1 else 0 for j in range(n)]
    s_lo, s_hi = sum(lows[:-1]), (n - 1) * B
    rays = _new_rays(L)
    for xn in range(lows[-1], B + 1):
        for s in range(s_lo, s_hi + 1):
            if (s + L.a * xn) % ell:
                continue
            for v in rays:
                if v[0] * s + v[-1] * xn < 0:
                    return PolyhedraCheck(False, _realise(lows[:-1], B, s) + (xn,))
    return PolyhedraCheck(True)


def _realise(lows: list[int], B: int, s: int) -> tuple[int, ...]:
    x = list(lows)
    rest = s - sum(x)
    for j in range(len(x)):
        step = min(rest, B - x[j])
        x[j] += step
        rest -= step
    return tuple(x)


def polyhedra_equal_bruteforce(i: int, L: LatticeData, bound: int) -> PolyhedraCheck:
    """Literal enumeration of the box; exponential in n, used as an oracle."""
    rays = _new_rays(L)
    for x in itertools.product(range(-bound, bound + 1), repeat=L.n):
        if not L.dual_contains(x):
            continue
        if any(x[j] < (-1 if j == i - 1 else 0) for j in range(L.n)):
            continue
        if any(dot(x, v) < 0 for v in rays):
            return PolyhedraCheck(False, x)
    return PolyhedraCheck(True)


# exceptional divisors ------------------------------------------------------


@dataclass(frozen=True)
class ExceptionalStructure:
    """``kind`` is "ProjectiveSpace" or "Bundle"; ``twist`` is c in P(O + O(c)) for bundles."""

    kind: str
    twist: int | None = None
    mu: int | None = None
    lam: int | None = None

    def __str__(self) -> str:
        return "ProjectiveSpace" if self.kind == "ProjectiveSpace" else f"Bundle({self.twist})"


def _quotient_coordinates(basis: Sequence[Vec], v: Vec) -> Vec:
    c = solve(basis, v)
    if c is None or any(x.denominator != 1 for x in c):
        raise ContradictionError(f"{v} is not an integral combination of the chosen lattice basis")
    return c[:-1]


def _quotient_basis(L: LatticeData, k: int) -> list[Vec]:
    """Basis e_2..e_{n-1}, v_{k-1}, v_k of N (v_0 = e_n); the last vector spans the quotiented ray."""
    n = L.n
    basis = [unit(n, i) for i in range(1, n - 1)] + [subdivision_ray(L, k - 1), subdivision_ray(L, k)]
    if abs(det(basis)) * L.ell != 1:
        raise ContradictionError("chosen vectors are not a basis of N")
    return basis


def _star_cones(fan: Fan, ray: int) -> list[tuple[int, ...]]:
    return [c for c in fan.maximal_cones if ray in c]


def _check_projective_space(images: dict[int, Vec], cones: list[tuple[int, ...]], dim: int) -> None:
    rays = sorted(images)
    if len(rays) != dim + 1:
        raise ContradictionError("projective space needs dim + 1 rays")
    if any(sum(images[r][j] for r in rays) != 0 for j in range(dim)):
        raise ContradictionError("ray images do not sum to zero")
    for subset in itertools.combinations(rays, dim):
        if abs(det([images[r] for r in subset])) != 1:
            raise ContradictionError("some cone of the quotient fan is not unimodular")
    if sorted(tuple(sorted(c)) for c in cones) != sorted(itertools.combinations(rays, dim)):
        raise ContradictionError("quotient cones are not all dim-subsets of the rays")


def exceptional_divisor_structure(k: int, L: LatticeData, fan: Fan | None = None) -> ExceptionalStructure:
    """Identify the toric variety of the k-th exceptional divisor from the quotient fan N / Z v_k.

    For l-1 weights and k < l-1 the quotient fan is matched cone by cone with
    the fan of P(O + O(l-k)) over P^{n-2}, via [e_i] -> u_{i-1},
    [v_{k-1}] -> -e; for k = l-1 (and for the single ray of the a = 1
    branch) with the fan of P^{n-1}.
    """
    F = fan if fan is not None else resolution_fan(L)
    n, ell = L.n, L.ell
    if _is_blowup(L):
        if k != 1:
            raise ValueError("the blowup has a single exceptional divisor")
        basis = [unit(n, i) for i in range(1, n)] + [blowup_ray(L)]
        centre = F.ray_index(blowup_ray(L))
        cones = _star_cones(F, centre)
        images = {r: _quotient_coordinates(basis, F.rays[r]) for c in cones for r in c if r != centre}
        _check_projective_space(images, [tuple(r for r in c if r != centre) for c in cones], n - 1)
        return ExceptionalStructure("ProjectiveSpace")
    if not 1 <= k <= ell - 1:
        raise ValueError("k must be in 1..l-1")
    basis = _quotient_basis(L, k)
    centre = F.ray_index(subdivision_ray(L, k))
    cones = _star_cones(F, centre)
    images = {r: _quotient_coordinates(basis, F.rays[r]) for c in cones for r in c if r != centre}
    faces = [tuple(r for r in c if r != centre) for c in cones]
    if k == ell - 1:
        _check_projective_space(images, faces, n - 1)
        return ExceptionalStructure("ProjectiveSpace")

    # integer relations e_1 = -e_2 - ... - e_{n-1} + (k-l) v_{k-1} + mu v_k, v_{k+1} = -v_{k-1} + lam v_k
    c1 = solve(basis, unit(n, 0))
    c2 = solve(basis, subdivision_ray(L, k + 1))
    if c1 is None or c2 is None or any(x.denominator != 1 for x in c1 + c2):
        raise ContradictionError("integers mu and lambda do not exist")
    if any(x != -1 for x in c1[: n - 2]) or c1[n - 2] != k - ell:
        raise ContradictionError(f"unexpected relation for e_1: {c1}")
    if any(x != 0 for x in c2[: n - 2]) or c2[n - 2] != -1:
        raise ContradictionError(f"unexpected relation for v_(k+1): {c2}")
    mu, lam = int(c1[n - 1]), int(c2[n - 1])

    def phi(c: Vec) -> Vec:
        return tuple(c[: n - 2]) + (-c[n - 2],)

    mapped = {r: phi(img) for r, img in images.items()}
    dim = n - 1
    u = [unit(dim, j) for j in range(dim)]  # u_1..u_{n-2}, e = u_{n-1}
    e = u[dim - 1]
    u0 = tuple(-sum(u[j][t] for j in range(dim - 1)) for t in range(dim))
    base = tuple(x + (ell - k) * y for x, y in zip(u0, e))
    ref_rays = [base] + u[: dim - 1]  # index j <-> u_j with u_0 twisted
    neg_e = tuple(-x for x in e)
    reference = set()
    for i in range(1, n):
        drop = ref_rays[i - 1]
        keep = [r for r in ref_rays if r != drop]
        reference.add(frozenset(keep + [neg_e]))
        reference.add(frozenset(keep + [e]))
    actual = {frozenset(mapped[r] for r in face) for face in faces}
    if actual != reference:
        raise ContradictionError(f"quotient fan of E_{k} is not the expected projective bundle")
    return ExceptionalStructure("Bundle", ell - k, mu, lam)


# verification report -------------------------------------------------------


@dataclass
class ResolutionReport:
    lattice: LatticeData
    bound: int
    unresolved_multiplicity: int = 0
    all_smooth: bool = False
    polyhedra: dict[int, PolyhedraCheck] = field(default_factory=dict)
    globally_generated: dict[int, bool] = field(default_factory=dict)
    exceptional: dict[int, str] = field(default_factory=dict)
    errors: list[str] = field(default_factory=list)

    @property
    def expected_exceptional(self) -> dict[int, str]:
        L = self.lattice
        if _is_blowup(L):
            return {1: "ProjectiveSpace"}
        return {k: ("ProjectiveSpace" if k == L.ell - 1 else f"Bundle({L.ell - k})") for k in range(1, L.ell)}

    @property
    def passed(self) -> bool:
        return (
            not self.errors
            and self.all_smooth
            and self.unresolved_multiplicity == self.lattice.ell
            and all(p.holds for p in self.polyhedra.values())
            and all(self.globally_generated.values())
            and self.exceptional == self.expected_exceptional
        )

    def to_json(self) -> dict:
        return {
            "lattice": self.lattice.to_json(),
            "bound": self.bound,
            "unresolved_multiplicity": self.unresolved_multiplicity,
            "all_smooth": self.all_smooth,
            "polyhedra_equal": {
                str(i): {"holds": p.holds, "witness": list(p.witness) if p.witness else None}
                for i, p in self.polyhedra.items()
            },
            "globally_generated": {str(i): g for i, g in self.globally_generated.items()},
            "exceptional": {str(k): s for k, s in self.exceptional.items()},
            "errors": self.errors,
            "passed": self.passed,
        }


def verify_resolution(L: LatticeData, bound: int | None = None) -> ResolutionReport:
    B = 5 * L.ell if bound is None else bound
    report = ResolutionReport(L, B)
    try:
        fan = resolution_fan(L)
        report.unresolved_multiplicity = cone_multiplicity(Cone(tuple(unit(L.n, i) for i in range(L.n))), L)
        report.all_smooth = all(cone_multiplicity(c, L) == 1 for c in fan.cones())
        for i in range(1, L.n + 1):
            report.polyhedra[i] = polyhedra_equal_on_lattice(i, L, B)
            report.globally_generated[i] = is_globally_generated(fan, coordinate_divisor(fan, L, i), L)
        ks = [1] if _is_blowup(L) else range(1, L.ell)
        for k in ks:
            report.exceptional[k] = str(exceptional_divisor_structure(k, L, fan))
    except ContradictionError as exc:
        report.errors.append(str(exc))
    return report


def support_cover(fan: Fan, points: Iterable[Vec]) -> list[tuple[Vec, int, bool]]:
    """For each point: how many maximal cones contain it, and whether one contains it in its interior."""
    out = []
    cones = fan.cones()
    for p in points:
        hits, interior = 0, False
        for c in cones:
            coeffs = c.coefficients(p)
            if coeffs is not None and all(x >= 0 for x in coeffs):
                hits += 1
                interior = interior or all(x > 0 for x in coeffs)
        out.append((p, hits, interior))
    return out
