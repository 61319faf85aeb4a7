"""Command-line front end: ``rigidquot <command> [options]``.

Exit codes: 0 success, 1 invalid arguments, 2 internal contradiction,
3 mismatch against the bundled golden fixtures (``reproduce``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Sequence

from .arithmetic import MINIMAL_PRESENTATIONS, find_presentation, minimal_group_search
from .census import singularity_census
from .classification import classify, cyclic_six, minimal_group, xmin_tuple
from .errors import ContradictionError, RigidQuotError
from .groups import Group, admissible_groups, is_exceptional, make_group
from .toric import LatticeData, resolution_fan, verify_resolution
from .triples import ELLIPTIC_SIGNATURES, enumerate_generating_triples, hurwitz_genus, orbit_decomposition

OUTPUT_DIR_ENV = "RIGIDQUOT_OUTPUT_DIR"

EXIT_OK, EXIT_USAGE, EXIT_CONTRADICTION, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    d: int | None = None
    n: int | None = None
    max_group_order: int = 50
    bound: int | None = None
    format: str = "json"
    output: str | None = None

    def __post_init__(self):
        if self.d is not None and self.d not in (3, 4, 6):
            raise UsageError("--d must be 3, 4 or 6")
        if self.n is not None and self.n < 2:
            raise UsageError("--n must be at least 2")
        if self.bound is not None and self.bound < 1:
            raise UsageError("--bound must be positive")
        if self.max_group_order < 1:
            raise UsageError("--max-order must be positive")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _parse_vectors(text: str) -> list[tuple[int, int]]:
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        xs = [int(x) for x in part.split(",")]
        if len(xs) != 2:
            raise UsageError(f"generator {part!r} must be 'a,b'")
        out.append((xs[0], xs[1]))
    if not out:
        raise UsageError("need at least one generator")
    return out


def _group_from_args(args) -> Group:
    if args.d is None:
        raise UsageError("--d is required")
    if args.modulus is not None:
        return make_group(args.modulus, args.d, _parse_vectors(args.gens or "0,0"))
    return minimal_group(args.d)


# commands ------------------------------------------------------------------


def cmd_groups(args, cfg: RunConfig):
    ds = (cfg.d,) if cfg.d else (3, 4, 6)
    rows = []
    for G in admissible_groups(cfg.max_group_order, ds):
        rows.append({"group": G.to_json(), "order": G.order, "exceptional": is_exceptional(G)})
    rows.sort(key=lambda r: (r["order"], json.dumps(r["group"], sort_keys=True)))
    text = "\n".join(f"|G|={r['order']:<4} {json.dumps(r['group'], sort_keys=True)}" for r in rows) + "\n"
    return {"groups": rows}, text, None


def cmd_triples(args, cfg: RunConfig):
    G = _group_from_args(args)
    type_filter = tuple(int(x) for x in args.type.split(",")) if args.type else None
    triples = enumerate_generating_triples(G, type_filter)
    braid = orbit_decomposition(G, triples, with_automorphisms=False)
    full = orbit_decomposition(G, triples)
    data = {
        "group": G.to_json(),
        "type": list(type_filter) if type_filter else None,
        "triples": len(triples),
        "braid_orbits": [o.to_json() for o in braid],
        "orbits": [o.to_json() for o in full],
    }
    text = (
        f"{G!r}: {len(triples)} triples, {len(braid)} braid orbits, "
        f"{len(full)} orbits under Aut(G) x B_3\n"
        + "".join(f"  {o.representative}  size {o.size}\n" for o in full)
    )
    return data, text, None


def cmd_classify(args, cfg: RunConfig):
    G = cyclic_six() if args.xmin else _group_from_args(args)
    kwargs = {"curve_shape": None} if args.all_shapes else {}
    result = classify(G, cfg.n, **kwargs)
    data = result.to_json()
    data["class_count"] = result.class_count
    text = f"{G!r}, n={cfg.n}: {result.class_count} isomorphism class(es); conjugation {list(result.conjugation)}\n"
    return data, text, None


def _census_table(args, cfg: RunConfig):
    if args.xmin:
        G, T = cyclic_six(), xmin_tuple(cfg.n)
    else:
        G = _group_from_args(args)
        reps = classify(G, cfg.n).representatives()
        if not reps:
            raise UsageError(f"{G!r} has no rigid tuples for n={cfg.n}")
        T = reps[0]
    return G, T, singularity_census(G, T)


def cmd_census(args, cfg: RunConfig):
    G, T, table = _census_table(args, cfg)
    data = {"group": G.to_json(), "n": cfg.n, "tuple": T.to_json(), "rows": table.to_json()}
    text = "".join(f"{r['type']}: {r['count']}\n" for r in table.to_json())
    return data, text, table.to_csv()


def cmd_minimal(args, cfg: RunConfig):
    result = minimal_group_search(cfg.d, cfg.max_group_order)
    data = result.to_json()
    if result.found:
        _, m, r = MINIMAL_PRESENTATIONS[cfg.d]
        pres = find_presentation(result.group, m, r)
        data["presentation"] = (
            {"s": list(pres.s.a) + [pres.s.k], "t": list(pres.t.a) + [pres.t.k], "relation": f"s t s^-1 = t^{r}"}
            if pres
            else None
        )
        text = f"d={cfg.d}: order {result.group.order}, {result.group!r}, witness {result.witness}\n"
    else:
        text = f"d={cfg.d}: no group up to order {cfg.max_group_order}\n"
    return data, text, None


def cmd_toric(args, cfg: RunConfig):
    L = LatticeData(args.n, args.ell, args.a)
    report = verify_resolution(L, cfg.bound)
    data = report.to_json()
    data["fan"] = resolution_fan(L).to_json() if not report.errors else None
    text = f"1/{L.ell}(1,...,1,{L.a}) in dimension {L.n}: {'pass' if report.passed else 'FAIL'}\n"
    if not report.passed:
        raise _Failed(data, text, EXIT_CONTRADICTION)
    return data, text, None


class _Failed(Exception):
    def __init__(self, data, text, code):
        super().__init__(text)
        self.data, self.text, self.code = data, text, code


# reproduce -----------------------------------------------------------------


def load_fixtures(path: str | None = None) -> list[dict]:
    if path:
        return json.loads(Path(path).read_text())["fixtures"]
    ref = resources.files("rigidquot") / "fixtures" / "golden.json"
    return json.loads(ref.read_text())["fixtures"]


def compute_fixture(fx: dict):
    kind, p = fx["kind"], fx["params"]
    if kind == "census":
        G = minimal_group(p["d"])
        T = classify(G, p["n"]).representatives()[0]
        return singularity_census(G, T).as_dict()
    if kind == "xmin_census":
        return singularity_census(cyclic_six(), xmin_tuple(p["n"])).as_dict()
    if kind == "classes":
        G = minimal_group(p["d"])
        c = classify(G, p["n"])
        return {"class_count": c.class_count, "conjugation": list(c.conjugation)}
    if kind == "minimal":
        r = minimal_group_search(p["d"], p["bound"])
        return {"order": r.group.order if r.found else None}
    if kind == "genus":
        return hurwitz_genus(p["order"], p["type"])
    if kind == "signature":
        return {"type": list(ELLIPTIC_SIGNATURES[p["d"]]), "genus": hurwitz_genus(p["order"], ELLIPTIC_SIGNATURES[p["d"]])}
    if kind == "toric":
        return verify_resolution(LatticeData(p["n"], p["ell"], p["a"]), p.get("bound")).passed
    raise ValueError(f"unknown fixture kind {kind!r}")


def cmd_reproduce(args, cfg: RunConfig):
    results, mismatches = [], []
    for fx in load_fixtures(args.fixtures):
        actual = compute_fixture(fx)
        ok = actual == fx["expected"]
        results.append({"id": fx["id"], "ok": ok, "expected": fx["expected"], "actual": actual})
        if not ok:
            mismatches.append(results[-1])
    lines = [f"{'ok  ' if r['ok'] else 'DIFF'} {r['id']}" for r in results]
    for m in mismatches:
        lines.append(f"--- {m['id']}\n  expected: {json.dumps(m['expected'], sort_keys=True)}\n  actual:   {json.dumps(m['actual'], sort_keys=True)}")
    data = {"fixtures": results, "mismatches": len(mismatches)}
    text = "\n".join(lines) + "\n"
    if mismatches:
        raise _Failed(data, text, EXIT_MISMATCH)
    return data, text, None


COMMANDS: dict[str, Callable] = {
    "groups": cmd_groups,
    "triples": cmd_triples,
    "classify": cmd_classify,
    "census": cmd_census,
    "minimal": cmd_minimal,
    "toric": cmd_toric,
    "reproduce": cmd_reproduce,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--output", help="write the report here instead of stdout")

    group_opts = _Parser(add_help=False)
    group_opts.add_argument("--d", type=int, help="twist order: 3, 4 or 6 (required unless --xmin)")
    group_opts.add_argument("--modulus", type=int, help="ambient Z_n^2 (default: the smallest group for d)")
    group_opts.add_argument("--gens", help="generators of A as 'a,b;a,b'")

    parser = _Parser(prog="rigidquot", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("groups", parents=[common], help="enumerate admissible groups")
    p.add_argument("--d", type=int)
    p.add_argument("--max-order", type=int, default=24)

    p = sub.add_parser("triples", parents=[common, group_opts], help="generating triples and their orbits")
    p.add_argument("--type", help="ordered type, e.g. 3,3,7")

    p = sub.add_parser("classify", parents=[common, group_opts], help="rigid tuples and isomorphism classes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--xmin", action="store_true", help="use Z_6 (trivial A) instead")
    p.add_argument("--all-shapes", action="store_true", help="allow every curve-triple shape")

    p = sub.add_parser("census", parents=[common, group_opts], help="singularity table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--xmin", action="store_true", help="the Z_6 quotient of E^{n-1} x C'")

    p = sub.add_parser("minimal", parents=[common], help="smallest admissible group")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--bound", type=int, default=50)

    p = sub.add_parser("toric", parents=[common], help="verify the toric resolution")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--bound", type=int)

    p = sub.add_parser("reproduce", parents=[common], help="check all golden fixtures")
    p.add_argument("--fixtures", help="alternative fixture file")
    return parser


def _config(args) -> RunConfig:
    if args.command == "toric" and (args.n < 3 or args.ell < 2 or args.a % args.ell not in (1, args.ell - 1)):
        raise UsageError("toric needs n >= 3, l >= 2 and a in {1, l-1}")
    max_order = getattr(args, "max_order", None) or getattr(args, "bound", None) if args.command in ("groups", "minimal") else 50
    return RunConfig(
        d=getattr(args, "d", None),
        n=getattr(args, "n", None) if args.command in ("classify", "census") else None,
        max_group_order=max_order or 50,
        bound=getattr(args, "bound", None) if args.command == "toric" else None,
        format=args.format,
        output=args.output,
    )


def _render(data, text, csv_text, fmt: str) -> str:
    if fmt == "text":
        return text
    if fmt == "csv":
        if csv_text is None:
            raise UsageError("csv output is only available for census tables")
        return csv_text
    return dumps(data)


def _write(body: str, cfg: RunConfig, command: str) -> None:
    out_dir = os.environ.get(OUTPUT_DIR_ENV)
    target = cfg.output
    if target is None and out_dir:
        target = f"{command}.{cfg.format if cfg.format != 'text' else 'txt'}"
    if target is None:
        sys.stdout.write(body)
        return
    path = Path(target)
    if out_dir and not path.is_absolute():
        path = Path(out_dir) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(body)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config(args)
        try:
            data, text, csv_text = COMMANDS[args.command](args, cfg)
            code = EXIT_OK
        except _Failed as failed:
            data, text, csv_text, code = failed.data, failed.text, None, failed.code
        if code == EXIT_MISMATCH:
            sys.stderr.write(text)
        fmt = "json" if code != EXIT_OK and cfg.format == "csv" else cfg.format
        _write(_render(data, text, csv_text, fmt), cfg, args.command)
        return code
    except UsageError as exc:
        sys.stderr.write(f"rigidquot: error: {exc}\n")
        return EXIT_USAGE
    except ContradictionError as exc:
        sys.stderr.write(f"rigidquot: internal contradiction: {exc}\n")
        return EXIT_CONTRADICTION
    except (RigidQuotError, ValueError) as exc:
        sys.stderr.write(f"rigidquot: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
