"""Acceptance checks, one recorded PASS/FAIL line each.

Run standalone with ``python3 tests/test_acceptance.py`` or through pytest,
which repeats the lines in its terminal summary.
"""

import time
from fractions import Fraction

import pytest

from rigidquot.arithmetic import (
    MINIMAL_PRESENTATIONS,
    find_presentation,
    invariant_cyclic_bruteforce,
    invariant_cyclic_exists,
    is_prime,
)
from rigidquot.census import is_free_on_curve, singularity_census, singularity_census_by_orbits
from rigidquot.characters import OneDimCharacter, chevalley_weil_mult, invariant_plurigenus
from rigidquot.classification import classify, cyclic_six, minimal_group, rigid_tuples, xmin_tuple
from rigidquot.cli import main
from rigidquot.errors import ShapeError
from rigidquot.groups import Group, admissible_groups
from rigidquot.toric import LatticeData, verify_resolution
from rigidquot.triples import (
    ELLIPTIC_SIGNATURES,
    ShapeTag,
    braid_move,
    conjugate_triple,
    enumerate_generating_triples,
    hurwitz_genus,
    triple_shape,
)

from acceptance_log import record


def _ones(n, last=1):
    return ",".join(["1"] * (n - 1) + [str(last)])


def criterion_1():
    import io
    import json
    from contextlib import redirect_stdout

    expected = {3: 21, 4: 20, 6: 18}
    notes = []
    ok = True
    for d, order in expected.items():
        start = time.perf_counter()
        buf = io.StringIO()
        with redirect_stdout(buf):
            code = main(["minimal", "--d", str(d), "--bound", "50"])
        elapsed = time.perf_counter() - start
        data = json.loads(buf.getvalue())
        G = Group.from_json(data["group"])
        _, m, r = MINIMAL_PRESENTATIONS[d]
        pres = find_presentation(G, m, r)
        good = (
            code == 0
            and data["order"] == order
            and pres is not None
            and G.element_order(pres.s) == d
            and G.element_order(pres.t) == m
            and G.conjugate(pres.s, pres.t) == G.power(pres.t, r)
            and G.generates((pres.s, pres.t))
            and elapsed < 60
        )
        ok &= good
        notes.append(f"d={d} order {data['order']} ({elapsed:.1f}s)")
    return ok, "; ".join(notes)


def criterion_2():
    ok, notes = True, []
    for n in (2, 3):
        for d in (6, 3, 4):
            start = time.perf_counter()
            c = classify(minimal_group(d), n)
            elapsed = time.perf_counter() - start
            want = (1, [0]) if d == 6 else (2, [1, 0])
            ok &= (c.class_count, list(c.conjugation)) == want and elapsed < 300
            notes.append(f"d={d},n={n}: {c.class_count} class(es), conj {list(c.conjugation)}")
    return ok, "; ".join(notes)


# the table for the Z_6 quotient exactly as the acceptance text states it
XMIN_STATED = {
    2: {"1/2(1,1)": 2, "1/3(1,1)": 3, "1/3(1,2)": 2, "1/6(1,1)": 2},
    3: {"1/2(1,1,1)": 10, "1/3(1,1,1)": 9, "1/3(1,1,2)": 8, "1/6(1,1,1)": 2},
    4: {"1/2(1,1,1,1)": 42, "1/3(1,1,1,1)": 27, "1/3(1,1,1,2)": 26, "1/6(1,1,1,1)": 2},
}


def criterion_3_xmin():
    G = cyclic_six()
    ok, notes = True, []
    for n, want in XMIN_STATED.items():
        T = xmin_tuple(n)
        got = singularity_census(G, T)
        assert got == singularity_census_by_orbits(G, T)
        if got.as_dict() != want:
            ok = False
            notes.append(f"n={n} got {got.as_dict()}")
    return ok, "Z_6 table " + ("matches" if ok else "differs: " + "; ".join(notes))


def fixed_group_table(d, n):
    if d == 3:
        return {f"1/3({_ones(n)})": 3 ** (n - 1), f"1/3({_ones(n, 2)})": 3 ** (n - 1)}
    if d == 4:
        return {
            f"1/2({_ones(n)})": 2 ** (n - 1) * (2 ** (n - 1) - 1),
            f"1/4({_ones(n)})": 2 ** (n - 1),
            f"1/4({_ones(n, 3)})": 2 ** (n - 1),
        }
    return {
        f"1/2({_ones(n)})": 2 * (4 ** (n - 1) - 1) // 3,
        f"1/3({_ones(n)})": (3 ** (n - 1) - 1) // 2,
        f"1/3({_ones(n, 2)})": (3 ** (n - 1) - 1) // 2,
        f"1/6({_ones(n)})": 1,
        f"1/6({_ones(n, 5)})": 1,
    }


def criterion_3_fixed_groups():
    ok, notes = True, []
    for d in (3, 4, 6):
        G = minimal_group(d)
        for n in (2, 3):
            for T in classify(G, n).representatives():
                got = singularity_census(G, T)
                ok &= got.as_dict() == fixed_group_table(d, n) and got == singularity_census_by_orbits(G, T)
            notes.append(f"d={d},n={n}")
    return ok, "fixed-group tables for " + ", ".join(notes)


def criterion_4():
    groups = admissible_groups(24)
    triples = general = exc = 0
    ok = True
    for G in groups:
        units = [e for e in range(1, G.d) if Fraction(e, G.d).denominator == G.d]
        for S in enumerate_generating_triples(G):
            triples += 1
            mults = {e: chevalley_weil_mult(OneDimCharacter(G.d, e), S) for e in range(1, G.d)}
            ok &= all(isinstance(v, int) and v >= 0 for v in mults.values())
            try:
                tag = triple_shape(G, S).tag
            except ShapeError:
                continue
            if tag == ShapeTag.GENERAL:
                general += 1
                ok &= all(mults[e] == 0 for e in units)
            else:
                exc += 1
                ok &= sorted(mults[e] for e in units) == [0, 1]
    return ok, f"{len(groups)} groups, {triples} triples ({general} GENERAL, {exc} [3,6,6])"


def criterion_5():
    start = time.perf_counter()
    failures, runs = [], 0
    for n in (3, 4, 5, 6):
        for ell in (2, 3, 4, 6):
            for a in sorted({1, ell - 1}):
                runs += 1
                report = verify_resolution(LatticeData(n, ell, a), 5 * ell)
                if not report.passed:
                    failures.append(f"({n},{ell},{a})")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 600
    detail = f"{runs} lattices, {len(failures)} failures ({elapsed:.0f}s)"
    return ok, detail + (" " + ", ".join(failures) if failures else "")


def criterion_6():
    primes = [p for p in range(2, 200) if is_prime(p)]
    ok = all(invariant_cyclic_exists(p, d) == invariant_cyclic_bruteforce(p, d) for p in primes for d in (3, 4, 6))
    return ok, f"{len(primes)} primes x 3 twist orders"


def criterion_7():
    values = {
        (21, (3, 3, 7)): 3,
        (20, (4, 4, 5)): 4,
        (18, (6, 6, 3)): 4,
        (6, (3, 6, 6)): 2,
    }
    ok = all(hurwitz_genus(o, t) == g for (o, t), g in values.items())
    for d, order in ((3, 21), (4, 20), (6, 18)):
        ok &= hurwitz_genus(order, ELLIPTIC_SIGNATURES[d]) == 1
    return ok, "C_3, C_4, C_6, C' and the three elliptic signatures"


def criterion_8():
    types = set()
    for G in admissible_groups(50):
        for S in enumerate_generating_triples(G):
            types.add(tuple(sorted(S.type)))
    ok = invariant_plurigenus(3, (4, 4, 5)) == 1 and all(invariant_plurigenus(1, t) == 0 for t in types)
    return ok, f"k=3 on [4,4,5]; k=1 on {len(types)} types"


def criterion_9():
    checked = 0
    ok = True
    for G in admissible_groups(24):
        for S in enumerate_generating_triples(G):
            checked += 1
            a = braid_move(G, braid_move(G, braid_move(G, S, 1), 2), 1)
            b = braid_move(G, braid_move(G, braid_move(G, S, 2), 1), 2)
            ok &= a == b and conjugate_triple(G, conjugate_triple(G, S)) == S
    tuples = exc = 0
    cases = [(minimal_group(d), n) for d in (3, 4, 6) for n in (2, 3)] + [(cyclic_six(), n) for n in (2, 3)]
    for G, n in cases:
        A = [g for g in G if G.in_A(g)]
        for T in rigid_tuples(G, n, curve_shape=None):
            tuples += 1
            ok &= singularity_census(G, T).total > 0
            if triple_shape(G, T.curve_triple).tag == ShapeTag.EXC366:
                exc += 1
                ok &= is_free_on_curve(G, A, T.curve_triple)
    return ok, f"braid relation and conjugation on {checked} triples; {tuples} rigid tuples singular; {exc} [3,6,6] curves A-free"


CRITERIA = {
    "1": criterion_1,
    "2": criterion_2,
    "3 (fixed groups)": criterion_3_fixed_groups,
    "3 (Z_6 quotient)": criterion_3_xmin,
    "4": criterion_4,
    "5": criterion_5,
    "6": criterion_6,
    "7": criterion_7,
    "8": criterion_8,
    "9": criterion_9,
}

KNOWN_FAILURES = {
    "3 (Z_6 quotient)": "the stated 1/3 rows are exchanged relative to the pointwise count",
}


def _params():
    for name in CRITERIA:
        marks = []
        if name in KNOWN_FAILURES:
            marks.append(pytest.mark.xfail(reason=KNOWN_FAILURES[name], strict=True))
        yield pytest.param(name, id=f"criterion-{name.replace(' ', '-')}", marks=marks)


@pytest.mark.parametrize("name", list(_params()))
def test_criterion(name):
    ok, detail = CRITERIA[name]()
    record(name, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    import sys

    results = []
    for name, check in CRITERIA.items():
        ok, detail = check()
        record(name, ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
