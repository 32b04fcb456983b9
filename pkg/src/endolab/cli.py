"""endolab command line.

    endolab enumerate   --monoid pod --n 3
    endolab greens      --monoid podi --n 3 --format table
    endolab congruences --monoid od --n 3 --paranoid
    endolab endos       --monoid od --n 2 --classify
    endolab classify    --monoid pod --n 3 [--input records.json]
    endolab count       --monoid podi --n 3
    endolab verify      --suite all --max-n 3

Exit status: 0 success, 1 a check failed, 2 usage error, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections import Counter

from .constructors import family_census, family_parameters
from .counting import endo_count
from .endo import PRECEDENCE, Endo, NotAnEndomorphism
from .search import (
    DEFAULT_BUDGET_SECONDS,
    SearchBudgetExceeded,
    TheoremViolation,
    classify,
    enumerate_endomorphisms,
)
from .semigroup import (
    BRUTE_CONGRUENCE_MAX,
    InfeasibleError,
    all_congruences_bruteforce,
    enumerate_monoid,
    green,
    is_congruence,
    make_congruence,
)
from .transform import Family, MonoidSpec, format_map
from .verify import Context, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

log = logging.getLogger("endolab")


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--monoid", choices=[f.value for f in Family])
    p.add_argument("--n", type=int)
    p.add_argument("--strategy", choices=["filter", "closure"], default=None)
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.add_argument("--budget-seconds", type=int, default=DEFAULT_BUDGET_SECONDS)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--paranoid", action="store_true",
                   help="check congruences against every element, not only generators")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="endolab", description="Endomorphisms of monoids of monotone maps on a chain.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("enumerate", parents=[common], help="list the elements of a monoid")
    sub.add_parser("greens", parents=[common], help="Green's relations and the J-chain")
    sub.add_parser("congruences", parents=[common], help="the pi_k / rho_k chain")
    p = sub.add_parser("endos", parents=[common], help="all endomorphisms by exhaustive search")
    p.add_argument("--classify", action="store_true", help="attach a family tag to each map")
    p = sub.add_parser("classify", parents=[common], help="family census, or classify given maps")
    p.add_argument("--input", help="JSON file of endomorphism records ('-' for stdin)")
    sub.add_parser("count", parents=[common], help="closed-form endomorphism counts")
    p = sub.add_parser("verify", parents=[common], help="run the reproduction checks")
    p.add_argument("--suite", default="all")
    p.add_argument("--max-n", type=int, default=None)
    return parser


def _spec(args) -> MonoidSpec:
    if args.monoid is None or args.n is None:
        raise UsageError(f"{args.command} needs --monoid and --n")
    return MonoidSpec(args.monoid, args.n)


def _monoid(args):
    return enumerate_monoid(_spec(args), args.strategy)


def _table(headers: list[str], rows: list[list]) -> str:
    cells = [headers] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _emit(args, payload, headers: list[str] | None = None, rows: list[list] | None = None) -> None:
    if args.format == "table" and headers is not None:
        print(_table(headers, rows))
    else:
        print(json.dumps(payload, indent=2))


def _blocks(p) -> list[list[int]]:
    return [list(b) for b in p.blocks]


def cmd_enumerate(args) -> int:
    S = _monoid(args)
    rows = [[i, format_map(s), s.rank, "".join(f"g{k}." for k in S.words[i]).rstrip(".") or "1"]
            for i, s in enumerate(S.elements)]
    _emit(args, S.to_json(), ["id", "element", "rank", "word"], rows)
    return EXIT_OK


def cmd_greens(args) -> int:
    S = _monoid(args)
    a = green(S, "by_ideals")
    b = green(S, "by_characterization")
    agree = (a.r_classes, a.l_classes, a.h_classes, a.j_classes) == (
        b.r_classes, b.l_classes, b.h_classes, b.j_classes
    )
    chain = a.j_chain()
    payload = {
        "spec": {"family": S.family.value, "n": S.n},
        "R": _blocks(a.r_classes),
        "L": _blocks(a.l_classes),
        "H": _blocks(a.h_classes),
        "J": _blocks(a.j_classes),
        "j_chain": chain,
        "characterization_agrees": agree,
    }
    rows = []
    for j in chain:
        members = a.j_classes.blocks[j]
        rank = S.ranks[members[0]]
        n_r = len({a.r_classes.block_of(x) for x in members})
        n_l = len({a.l_classes.block_of(x) for x in members})
        rows.append([j, rank, len(members), n_r, n_l, len(members) // (n_r * n_l)])
    _emit(args, payload, ["J", "rank", "size", "R-classes", "L-classes", "|H|"], rows)
    return EXIT_OK if agree else EXIT_FAIL


def cmd_congruences(args) -> int:
    S = _monoid(args)
    entries = []
    for k in range(S.n + 1):
        if k >= 1:
            entries.append((f"pi_{k}", make_congruence(S, "pi", k)))
        entries.append((f"rho_{k}", make_congruence(S, "rees", k)))
    records = []
    ok = True
    for name, p in entries:
        good = is_congruence(S, p, paranoid=args.paranoid)
        ok &= good
        records.append({"name": name, "classes": len(p), "is_congruence": good, "blocks": _blocks(p)})
    payload = {"spec": {"family": S.family.value, "n": S.n}, "chain": records}
    if len(S) <= BRUTE_CONGRUENCE_MAX:
        payload["all_congruences"] = [_blocks(p) for p in all_congruences_bruteforce(S)]
    rows = [[r["name"], r["classes"], "yes" if r["is_congruence"] else "NO"] for r in records]
    _emit(args, payload, ["congruence", "classes", "compatible"], rows)
    return EXIT_OK if ok else EXIT_FAIL


def _endos(args, S):
    return enumerate_endomorphisms(S, budget_seconds=args.budget_seconds, jobs=args.jobs)


def _is_classifiable(S) -> bool:
    return S.family not in (Family.I1_ONE, Family.I1_TAU)


def cmd_endos(args) -> int:
    S = _monoid(args)
    found = _endos(args, S)
    if args.classify and not _is_classifiable(S):
        raise UsageError("--classify covers the six monoids, not the I_1 monoids")
    records = []
    rows = []
    for phi in found:
        tag = classify(phi) if args.classify else None
        records.append(phi.to_json(tag))
        rows.append([" ".join(map(str, phi.map))] + ([str(tag)] if tag else []))
    payload: dict = {"spec": {"family": S.family.value, "n": S.n}, "count": len(found), "endomorphisms": records}
    if args.classify:
        by_kind = Counter(r["family"] for r in records)
        payload["families"] = {k.value: by_kind[k.value] for k in PRECEDENCE if by_kind[k.value]}
    _emit(args, payload, ["map"] + (["family"] if args.classify else []), rows)
    return EXIT_OK


def _read_records(path: str) -> list:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    data = json.loads(text)
    if isinstance(data, dict):
        data = data.get("endomorphisms", [data])
    return data


def cmd_classify(args) -> int:
    S = _monoid(args)
    if not _is_classifiable(S):
        raise UsageError("classification covers the six monoids, not the I_1 monoids")
    if args.input:
        out = []
        ok = True
        for rec in _read_records(args.input):
            images = rec["map"] if isinstance(rec, dict) else rec
            try:
                phi = Endo(S, images)
                tag = classify(phi)
                out.append(phi.to_json(tag))
            except NotAnEndomorphism as exc:
                ok = False
                out.append({"map": list(images), "error": str(exc)})
        rows = [[" ".join(map(str, r["map"])), r.get("family", r.get("error"))] for r in out]
        _emit(args, {"spec": {"family": S.family.value, "n": S.n}, "records": out}, ["map", "family"], rows)
        return EXIT_OK if ok else EXIT_FAIL
    census = family_census(S)
    params = family_parameters(S)
    found = _endos(args, S)
    searched = Counter(classify(phi).kind for phi in found)
    formula = endo_count(S.spec) if S.n >= 2 else None
    fams = []
    rows = []
    for kind in PRECEDENCE:
        want = formula.per_family.get(kind.value, 0) if formula else None
        fams.append({
            "family": kind.value,
            "search": searched[kind],
            "built_distinct": census.distinct[kind],
            "parameter_tuples": census.raw[kind],
            "formula": want,
            "parameters": [t.params_json(S) for t in params[kind]],
        })
        rows.append([kind.value, searched[kind], census.distinct[kind], census.raw[kind], want])
    same_set = set(census.maps) == {phi.map for phi in found}
    total_ok = formula is None or formula.total == len(found)
    payload = {
        "spec": {"family": S.family.value, "n": S.n},
        "search_total": len(found),
        "formula_total": formula.total if formula else None,
        "search_equals_family_builds": same_set,
        "families": fams,
    }
    rows.append(["total", len(found), census.total, sum(census.raw.values()), formula.total if formula else None])
    _emit(args, payload, ["family", "search", "built", "params", "formula"], rows)
    return EXIT_OK if same_set and total_ok else EXIT_FAIL


def cmd_count(args) -> int:
    report = endo_count(_spec(args))
    rows = [[k, v] for k, v in report.formula_terms.items()]
    _emit(args, report.to_json(), ["term", "value"], rows)
    return EXIT_OK


def cmd_verify(args) -> int:
    ctx = Context(max_n=args.max_n, budget_seconds=args.budget_seconds, jobs=args.jobs, paranoid=args.paranoid)
    result = run_suite(args.suite, ctx)
    rows = [[c.id, c.status, c.description] for c in result.checks]
    rows.append(["", result.overall, "overall"])
    _emit(args, result.to_json(), ["id", "status", "check"], rows)
    if result.overall != "pass":
        return EXIT_FAIL
    return EXIT_BUDGET if result.budget_exceeded else EXIT_OK


COMMANDS = {
    "enumerate": cmd_enumerate,
    "greens": cmd_greens,
    "congruences": cmd_congruences,
    "endos": cmd_endos,
    "classify": cmd_classify,
    "count": cmd_count,
    "verify": cmd_verify,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except SearchBudgetExceeded as exc:
        print(f"endolab: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except TheoremViolation as exc:
        print(f"endolab: classification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, InfeasibleError, ValueError, OSError) as exc:
        print(f"endolab: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
