"""The reproduction checks, one per acceptance item, with exact comparisons only."""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

from .constructors import (
    f_set,
    family_census,
    nonidempotent_group_elements,
    phi_one,
    phi_tau,
)
from .counting import (
    ArithmeticFault,
    centralizer_order,
    delta,
    endo_count,
    golden_power_diff,
    idempotent_count_formula,
    idempotent_total,
    po_idempotents_closed_form,
    property3_count,
    property4_count,
)
from .endo import TagKind
from .search import (
    DEFAULT_BUDGET_SECONDS,
    SearchBudgetExceeded,
    TheoremViolation,
    automorphisms,
    classify,
    enumerate_endomorphisms,
    kernel_of,
    restriction_check,
)
from .semigroup import (
    all_congruences_bruteforce,
    enumerate_monoid,
    green,
    is_congruence,
    make_congruence,
    members_by_filter,
)
from .transform import Family, MonoidSpec, compose, compose_all, make_canonical

log = logging.getLogger(__name__)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped-infeasible"

ALL_FAMILIES = [f.value for f in Family]
M_TYPES = ["od", "podi", "pod"]


@dataclass
class CheckResult:
    id: int
    description: str
    status: str
    details: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"id": self.id, "description": self.description, "status": self.status, "details": self.details}


@dataclass
class VerifySuiteResult:
    suite: str
    checks: list[CheckResult]
    budget_exceeded: bool = False

    @property
    def overall(self) -> str:
        return FAIL if any(c.status == FAIL for c in self.checks) else PASS

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "overall": self.overall,
            "checks": [c.to_json() for c in self.checks],
        }


class Skip(Exception):
    """Nothing in a check fits the requested limits."""


class Context:
    """Shared caches so a monoid or its endomorphisms are computed once per run."""

    def __init__(self, max_n: int | None = None, budget_seconds: float | None = DEFAULT_BUDGET_SECONDS,
                 jobs: int = 1, paranoid: bool = False):
        self.max_n = max_n
        self.budget_seconds = budget_seconds
        self.jobs = jobs
        self.paranoid = paranoid
        self._monoids: dict = {}
        self._endos: dict = {}

    def within(self, cases, out: list[str]):
        """Filter (family, n) pairs by max_n, noting what was dropped."""
        kept = [c for c in cases if self.max_n is None or c[1] <= self.max_n]
        dropped = [c for c in cases if c not in kept]
        if dropped:
            out.append("not run (n > max-n): " + ", ".join(f"{f}_{n}" for f, n in dropped))
        if not kept:
            raise Skip(f"every case exceeds max-n={self.max_n}")
        return kept

    def monoid(self, family: str, n: int):
        key = (family, n)
        if key not in self._monoids:
            self._monoids[key] = enumerate_monoid(MonoidSpec(family, n), "closure")
        return self._monoids[key]

    def endos(self, family: str, n: int):
        key = (family, n)
        if key not in self._endos:
            self._endos[key] = enumerate_endomorphisms(
                self.monoid(family, n), budget_seconds=self.budget_seconds, jobs=self.jobs
            )
        return self._endos[key]


def _cmp(label: str, got, want, out: list[str]) -> bool:
    ok = got == want
    out.append(f"{label}: {got} {'==' if ok else '!='} {want}")
    return ok


def _overlap_note(ctx: Context, fam: str, n: int, out: list[str]) -> None:
    """Explain a count gap by maps that two families both produce."""
    census = family_census(ctx.monoid(fam, n))
    for kind in census.raw:
        lost = census.raw[kind] - census.distinct[kind]
        if lost:
            out.append(f"  {fam}_{n}: {lost} of {census.raw[kind]} {kind.value} maps coincide with earlier families")


def check_m_counts(ctx: Context, out: list[str]) -> bool:
    cases = [("od", 2), ("od", 3), ("od", 4), ("podi", 2), ("podi", 3), ("pod", 2), ("pod", 3)]
    ok = True
    for fam, n in ctx.within(cases, out):
        want = endo_count(MonoidSpec(fam, n)).total
        good = _cmp(f"|End({fam}_{n})| search vs formula", len(ctx.endos(fam, n)), want, out)
        if not good:
            _overlap_note(ctx, fam, n, out)
            if fam == "od":
                out.append("OD_n disagrees: check the Fibonacci indexing F_1 = F_2 = 1")
        ok &= good
    return ok


def check_t_counts(ctx: Context, out: list[str]) -> bool:
    cases = [("o", 2), ("o", 3), ("poi", 2), ("poi", 3), ("po", 2)]
    ok = True
    for fam, n in ctx.within(cases, out):
        want = endo_count(MonoidSpec(fam, n)).total
        good = _cmp(f"|End({fam}_{n})| search vs formula", len(ctx.endos(fam, n)), want, out)
        if not good:
            _overlap_note(ctx, fam, n, out)
        ok &= good
    return ok


def check_classification(ctx: Context, out: list[str]) -> bool:
    cases = [(f, n) for f in M_TYPES for n in (2, 3)] + [("od", 4)]
    ok = True
    for fam, n in ctx.within(cases, out):
        S = ctx.monoid(fam, n)
        endos = ctx.endos(fam, n)
        kinds: Counter = Counter()
        for phi in endos:
            try:
                kinds[classify(phi).kind] += 1
            except TheoremViolation as exc:
                out.append(f"{fam}_{n}: {exc}")
                ok = False
        census = family_census(S)
        ok &= _cmp(f"{fam}_{n} search set == family builds", set(census.maps) == {p.map for p in endos}, True, out)
        if fam != "od":
            ok &= _cmp(f"{fam}_{n} Property 3", kinds[TagKind.GROUP_TO_EMPTY], property3_count(fam, n), out)
        ok &= _cmp(f"{fam}_{n} Property 4", kinds[TagKind.GROUP_TO_RANK_ONE], property4_count(fam, n), out)
    return ok


def check_automorphisms(ctx: Context, out: list[str]) -> bool:
    ok = True
    for fam, n in ctx.within([(f, n) for f in M_TYPES for n in (2, 3)], out):
        S = ctx.monoid(fam, n)
        bij = {p.map for p in ctx.endos(fam, n) if p.is_bijective}
        want = {tuple(range(len(S))), phi_tau(S).map}
        ok &= _cmp(f"Aut({fam}_{n}) == {{id, phi_tau}}", bij == want, True, out)
    cases = [(f, n) for f in ("i1one", "i1tau") for n in (2, 3, 4)]
    for fam, n in ctx.within(cases, out):
        got = len(automorphisms(ctx.monoid(fam, n), budget_seconds=ctx.budget_seconds))
        want = math.factorial(n) if fam == "i1one" else centralizer_order(n)
        ok &= _cmp(f"|Aut({fam}_{n})|", got, want, out)
    return ok


def check_restriction(ctx: Context, out: list[str]) -> bool:
    ok = True
    for fam, n in ctx.within([("podi", 2), ("podi", 3)], out):
        endos = ctx.endos(fam, n)
        good = sum(restriction_check(p) for p in endos)
        ok &= _cmp(f"{fam}_{n} endomorphisms keeping POI inside POI", good, len(endos), out)
    return ok


def check_green(ctx: Context, out: list[str]) -> bool:
    ok = True
    for fam, n in ctx.within([(f, n) for f in ALL_FAMILIES for n in (1, 2, 3, 4)], out):
        S = ctx.monoid(fam, n)
        a, b = green(S, "by_ideals"), green(S, "by_characterization")
        same = (a.r_classes, a.l_classes, a.h_classes, a.j_classes) == (
            b.r_classes, b.l_classes, b.h_classes, b.j_classes
        ) and a.j_chain() == b.j_chain()
        if not same:
            out.append(f"{fam}_{n}: Green data differ")
        ok &= same
    out.append("R, L, H, J and J-chains agree" if ok else "disagreement found")
    return ok


def _chain(S) -> list:
    out = []
    for k in range(1, S.n + 1):
        out += [make_congruence(S, "pi", k), make_congruence(S, "rees", k)]
    return out


def check_congruences(ctx: Context, out: list[str]) -> bool:
    ok = True
    for fam, n in ctx.within([(f, 2) for f in M_TYPES], out):
        S = ctx.monoid(fam, n)
        found = all_congruences_bruteforce(S)
        ok &= _cmp(f"Con({fam}_2) == {{pi_1, rho_1, pi_2, rho_2}}", len(found) == 4 and set(found) == set(_chain(S)), True, out)
    for fam, n in ctx.within([(f, 3) for f in M_TYPES], out):
        S = ctx.monoid(fam, n)
        chain = _chain(S)
        cong = all(is_congruence(S, p, paranoid=ctx.paranoid) for p in chain)
        strict = all(a < b for a, b in zip(chain, chain[1:]))
        ends = len(chain[0]) == len(S) and len(chain[-1]) == 1
        ok &= _cmp(f"{fam}_3 pi_k, rho_k are congruences", cong, True, out)
        ok &= _cmp(f"{fam}_3 {len(chain) - 1} strict inclusions from identity to universal", strict and ends, True, out)
    return ok


def _rank_counts(S, ids) -> Counter:
    return Counter(S.ranks[i] for i in ids)


def check_idempotents(ctx: Context, out: list[str]) -> bool:
    ok = True
    for fam, n in ctx.within([(f, n) for f in ("o", "poi", "po") for n in range(2, 7)], out):
        S = ctx.monoid(fam, n)
        counts = _rank_counts(S, S.idempotents)
        want = {i: idempotent_count_formula(fam, n, i) for i in range(1, n + 1)}
        got = {i: counts[i] for i in range(1, n + 1)}
        ok &= _cmp(f"|E(J_i)| of {fam}_{n}", got, want, out)
    for fam, n in ctx.within([(f, n) for f in M_TYPES for n in range(2, 7)], out):
        M = ctx.monoid(fam, n)
        T = ctx.monoid(Family(fam).core.value, n)
        same = {M.elements[i] for i in M.idempotents} == {T.elements[i] for i in T.idempotents}
        ok &= _cmp(f"E({fam}_{n}) == E(T)", same, True, out)
    return ok


def check_group_elements(ctx: Context, out: list[str]) -> bool:
    ok = True
    cases = [(f, n) for f in ("od", "podi") for n in range(2, 6)] + [("pod", n) for n in range(2, 5)]
    for fam, n in ctx.within(cases, out):
        S = ctx.monoid(fam, n)
        T = ctx.monoid(Family(fam).core.value, n)
        groups = nonidempotent_group_elements(S)
        t_counts = _rank_counts(T, T.idempotents)
        per_rank = {r: len(groups.get(r, [])) for r in range(2, n + 1)}
        ok &= _cmp(f"{fam}_{n} group elements per rank", per_rank, {r: t_counts[r] for r in range(2, n + 1)}, out)
        parity = fsize = True
        for r, hs in groups.items():
            for h in hs:
                s = S.elements[h]
                fixed = [x for x in s.domain if s(x) == x]
                parity &= len(fixed) == r % 2
                fsize &= len(f_set(S, h)) == delta(r, fam)
        ok &= _cmp(f"{fam}_{n} fixed points: one iff rank odd", parity, True, out)
        ok &= _cmp(f"{fam}_{n} |F(h)| == delta(rank h)", fsize, True, out)
    return ok


def check_phi_one(ctx: Context, out: list[str]) -> bool:
    ok = True
    cases = [(f, n) for f in ("poi", "po", "podi", "pod") for n in range(2, 6)]
    for fam, n in ctx.within(cases, out):
        S = ctx.monoid(fam, n)
        phi = phi_one(S)  # certified on construction
        ok &= _cmp(f"ker phi_1 on {fam}_{n} == pi_{n - 1}", kernel_of(phi) == make_congruence(S, "pi", n - 1), True, out)
    return ok


def check_golden(ctx: Context, out: list[str]) -> bool:
    try:
        vals = [golden_power_diff(k) for k in range(1, 65)]
    except ArithmeticFault as exc:
        out.append(str(exc))
        return False
    out.append(f"golden_power_diff(k) integral for k <= 64 (k=64 has {len(str(vals[-1]))} digits)")
    ok = True
    for n in range(2, 11):
        ok &= _cmp(f"|E(PO_{n})| closed form vs rank sum", po_idempotents_closed_form(n), idempotent_total("po", n), out)
    return ok


def x_relations_hold(n: int) -> bool:
    x = [make_canonical("x", n, i) for i in range(n)]
    for i in range(1, n - 1):
        if compose(x[i], x[0]) != compose(x[0], x[i + 1]):
            return False
        if compose_all([x[i + 1], x[i], x[i + 1]]) != compose(x[i + 1], x[i]):
            return False
        if compose(x[i + 1], x[i]).rank != n - 2 or compose(x[0], x[i + 1]).rank != n - 2:
            return False
    return compose_all(x + [x[0]]) == x[0]


def check_generators(ctx: Context, out: list[str]) -> bool:
    ok = True
    for _, n in ctx.within([("poi", n) for n in range(2, 8)], out):
        ok &= _cmp(f"x_i relations, n={n}", x_relations_hold(n), True, out)
    for fam, n in ctx.within([(f, n) for f in ALL_FAMILIES for n in range(1, 6)], out):
        closed = set(ctx.monoid(fam, n).elements)
        if closed != members_by_filter(MonoidSpec(fam, n)):
            out.append(f"{fam}_{n}: closure differs from filter")
            ok = False
    out.append("generator closures equal filtered monoids" if ok else "closure mismatch")
    return ok


CHECKS: list[tuple[int, str, Callable[[Context, list[str]], bool]]] = [
    (1, "End(M) counts for OD, PODI, POD: search vs closed form", check_m_counts),
    (2, "End(T) counts for O, POI, PO: search vs closed form", check_t_counts),
    (3, "every endomorphism of an M-type monoid is classified and rebuilt", check_classification),
    (4, "automorphism groups", check_automorphisms),
    (5, "PODI endomorphisms restrict to POI", check_restriction),
    (6, "Green's relations: ideals vs characterization", check_green),
    (7, "congruence chains", check_congruences),
    (8, "idempotent counts and E(M) = E(T)", check_idempotents),
    (9, "non-idempotent group elements and F(h)", check_group_elements),
    (10, "phi_1 is an endomorphism with kernel pi_(n-1)", check_phi_one),
    (11, "integrality in Z[phi] and |E(PO_n)|", check_golden),
    (12, "x_i relations and generator closures", check_generators),
]

SUITES = {
    "all": [c[0] for c in CHECKS],
    "counts": [1, 2],
    "endos": [3, 4, 5, 10],
    "structure": [6, 7, 8, 9, 12],
    "formulas": [11],
}


def suite_ids(suite: str) -> list[int]:
    if suite in SUITES:
        return SUITES[suite]
    try:
        ids = [int(tok) for tok in suite.split(",")]
    except ValueError:
        raise ValueError(f"unknown suite {suite!r}; use one of {sorted(SUITES)} or ids like 1,4") from None
    valid = {c[0] for c in CHECKS}
    if not set(ids) <= valid:
        raise ValueError(f"check ids must lie in 1..{len(CHECKS)}")
    return ids


def run_check(check_id: int, ctx: Context) -> CheckResult:
    _, desc, fn = next(c for c in CHECKS if c[0] == check_id)
    out: list[str] = []
    try:
        status = PASS if fn(ctx, out) else FAIL
    except Skip as exc:
        status = SKIPPED
        out.append(str(exc))
    except SearchBudgetExceeded as exc:
        status = SKIPPED
        out.append(f"search budget exhausted: {exc}")
    log.info("check %d: %s", check_id, status)
    return CheckResult(check_id, desc, status, out)


def run_suite(suite: str = "all", ctx: Context | None = None) -> VerifySuiteResult:
    ctx = ctx or Context()
    checks = [run_check(i, ctx) for i in suite_ids(suite)]
    hit = any(d.startswith("search budget") for c in checks for d in c.details)
    return VerifySuiteResult(suite, checks, hit)
