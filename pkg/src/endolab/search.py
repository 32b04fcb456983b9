"""Brute-force enumeration and structural classification of endomorphisms.

The search is independent of the classification theorem: it only knows the
multiplication table.  Its pruning rules are all consequences of
multiplicativity:

* an element with index i and period p (x^(i+p) = x^i) can only map to an
  element satisfying the same identity; in particular idempotents go to
  idempotents;
* homomorphisms preserve the quasi-order <=_J, checked against every
  generator already assigned;
* closure under right multiplication by assigned generators.

Automorphism searches also demand injectivity and matching profiles
(principal ideal sizes, Green class sizes, stabiliser counts), which any
bijective homomorphism preserves.

Every map the kernel returns is then certified against the full right
Cayley table before it is accepted.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import _pykernel
from .constructors import (
    InvalidParameters,
    build_family,
    phi_tau,
)
from .endo import Endo, FamilyTag, TagKind
from .semigroup import FiniteSemigroup, Partition, green
from .transform import Family, make_canonical, monotonicity

try:
    from . import _ckernel
except ImportError:  # pragma: no cover - depends on the build
    _ckernel = None

log = logging.getLogger(__name__)

BACKEND = "cython" if _ckernel is not None else "python"
DEFAULT_BUDGET_SECONDS = 15 * 60

SearchBudgetExceeded = _pykernel.SearchBudgetExceeded


class TheoremViolation(RuntimeError):
    """An endomorphism fits none of the families; must never happen."""


def available_backends() -> list[str]:
    return ["cython", "python"] if _ckernel is not None else ["python"]


def _kernel(backend: str | None):
    backend = backend or BACKEND
    if backend == "cython":
        if _ckernel is None:
            raise RuntimeError("compiled kernel not built; install with pip install -e .")
        return _ckernel.search
    if backend == "python":
        return _pykernel.search
    raise ValueError(f"unknown backend {backend!r}")


def _index_period(S: FiniteSemigroup) -> list[tuple[int, int]]:
    tab = S.table
    out = []
    for x in range(len(S)):
        seen = {x: 1}
        p, k = x, 1
        while True:
            p = int(tab[p, x])
            k += 1
            if p in seen:
                out.append((seen[p], k - seen[p]))
                break
            seen[p] = k
    return out


def _power(tab: np.ndarray, x: int, k: int) -> int:
    p = x
    for _ in range(k - 1):
        p = int(tab[p, x])
    return p


def _profiles(S: FiniteSemigroup, ip: list[tuple[int, int]]) -> list[tuple]:
    """Per-element data that every automorphism preserves."""
    tab = S.table
    gd = green(S, "by_ideals")
    sizes = []
    for part in (gd.r_classes, gd.l_classes, gd.j_classes):
        sizes.append([len(part.blocks[k]) for k in part.labels])
    out = []
    for x in range(len(S)):
        out.append((
            ip[x],
            len(set(tab[x].tolist()) | {x}),
            len(set(tab[:, x].tolist()) | {x}),
            sizes[0][x], sizes[1][x], sizes[2][x],
            int(np.count_nonzero(tab[:, x] == x)),
            int(np.count_nonzero(tab[x] == x)),
        ))
    return out


def _search_plan(S: FiniteSemigroup, injective: bool = False):
    tab = S.table
    order = sorted(
        S.generators,
        key=lambda g: (g != S.identity, g != S.tau, -S.ranks[g], g),
    )
    ip = _index_period(S)
    prof = _profiles(S, ip) if injective else None
    candidates = []
    for g in order:
        i, p = ip[g]
        cs = [c for c in range(len(S)) if _power(tab, c, i + p) == _power(tab, c, i)]
        if prof is not None:
            cs = [c for c in cs if prof[c] == prof[g]]
        candidates.append(cs)
    jleq = green(S, "by_ideals").jleq_matrix
    return order, candidates, jleq


def _run(args):
    kernel_name, table, order, candidates, jleq, injective, deadline = args
    return _kernel(kernel_name)(table, order, candidates, jleq, injective, deadline)


def _search(S, injective, budget_seconds, jobs, backend):
    order, candidates, jleq = _search_plan(S, injective)
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    table = np.ascontiguousarray(S.table, dtype=np.int32)
    name = backend or BACKEND
    started = time.monotonic()
    if jobs > 1 and len(candidates[0]) > 1:
        chunks = [candidates[0][k::jobs] for k in range(jobs)]
        tasks = [
            (name, table, order, [chunk] + candidates[1:], jleq, injective, deadline)
            for chunk in chunks
            if chunk
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run, tasks))
        maps = [m for found, _ in parts for m in found]
        nodes = sum(k for _, k in parts)
    else:
        maps, nodes = _kernel(name)(table, order, candidates, jleq, injective, deadline)
    log.info(
        "%s: %d maps, %d nodes, %.2fs (%s)", S.spec, len(maps), nodes,
        time.monotonic() - started, name,
    )
    out = sorted(Endo(S, m) for m in set(maps))
    if len(out) != len(maps):
        raise RuntimeError("search produced the same map twice")
    return out


def enumerate_endomorphisms(
    S: FiniteSemigroup,
    budget_seconds: float | None = DEFAULT_BUDGET_SECONDS,
    jobs: int = 1,
    backend: str | None = None,
) -> list[Endo]:
    """All semigroup endomorphisms of S (the identity need not be fixed), sorted."""
    return _search(S, False, budget_seconds, jobs, backend)


def automorphisms(
    S: FiniteSemigroup,
    budget_seconds: float | None = DEFAULT_BUDGET_SECONDS,
    jobs: int = 1,
    backend: str | None = None,
) -> list[Endo]:
    found = _search(S, True, budget_seconds, jobs, backend)
    return [phi for phi in found if phi.is_bijective]


def kernel_of(phi: Endo) -> Partition:
    return Partition.from_labels(phi.map)


def _recover_sigma(phi: Endo) -> tuple[int, ...]:
    """sigma(i) is the point fixed by the rank-1 partial identity phi(e_i)."""
    S = phi.semigroup
    n = S.n
    sigma = []
    for i in range(1, n + 1):
        image = S.elements[phi(S.index[make_canonical("e", n, i)])]
        pts = image.domain
        if image.rank != 1 or len(pts) != 1 or image.image != pts:
            raise TheoremViolation(f"image of e_{i} is {image}, not a rank-1 partial identity")
        sigma.append(next(iter(pts)))
    return tuple(sigma)


def classify(phi: Endo) -> FamilyTag:
    S = phi.semigroup
    fam = S.family
    if fam in (Family.I1_ONE, Family.I1_TAU):
        raise ValueError("classification covers the six monoids only")
    m = phi.map
    tag = _structural_tag(phi)
    try:
        rebuilt = build_family(S, tag)
    except InvalidParameters as exc:
        raise TheoremViolation(f"{tag} has invalid parameters: {exc}") from exc
    if rebuilt.map != m:
        raise TheoremViolation(f"rebuilding {tag} does not reproduce the map")
    return tag


def _structural_tag(phi: Endo) -> FamilyTag:
    S = phi.semigroup
    m = phi.map
    if all(m[x] == x for x in range(len(m))):
        return FamilyTag(TagKind.IDENTITY)
    if m == phi_tau(S).map:
        return FamilyTag(TagKind.INNER_TAU)
    if len(set(m)) == 1:
        return FamilyTag(TagKind.CONSTANT, f=m[0])
    units = {S.identity} if S.tau is None else {S.identity, S.tau}
    rest = {m[x] for x in range(len(m)) if x not in units}
    if len(rest) == 1:
        (f,) = rest
        e = m[S.identity]
        if S.tau is None or m[S.tau] == e:
            return FamilyTag(TagKind.IDEMPOTENT_PAIR, e=e, f=f)
        h = m[S.tau]
        if f == S.empty:
            return FamilyTag(TagKind.GROUP_TO_EMPTY, h=h)
        return FamilyTag(TagKind.GROUP_TO_RANK_ONE, h=h, f=f)
    if S.family not in (Family.POI, Family.PO, Family.PODI, Family.POD):
        raise TheoremViolation(f"endomorphism of {S.spec} fits no family")
    return FamilyTag(TagKind.PHI_SIGMA, sigma=_recover_sigma(phi))


def restriction_check(phi: Endo) -> bool:
    """Does phi send every order-preserving element to an order-preserving one?"""
    S = phi.semigroup
    if S.family is not Family.PODI:
        raise ValueError(f"restriction check applies to PODI_n, not {S.spec}")
    els = S.elements
    return all(
        monotonicity(els[phi(x)]).preserving
        for x, s in enumerate(els)
        if monotonicity(s).preserving
    )
