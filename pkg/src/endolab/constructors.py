"""Explicit endomorphism families and the census quantities behind the counts."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .endo import PRECEDENCE, Endo, FamilyTag, TagKind
from .semigroup import FiniteSemigroup, InfeasibleError
from .transform import ChainMap, Family, compose, tau

CENTRALIZER_MAX_N = 10
CENSUS_MAX_N = 5


class InvalidParameters(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{self.images} is not a permutation")

    @property
    def n(self) -> int:
        return len(self.images)

    def as_map(self) -> ChainMap:
        return ChainMap(self.n, self.images)

    def inverse(self) -> Permutation:
        out = [0] * self.n
        for i, y in enumerate(self.images, 1):
            out[y - 1] = i
        return Permutation(tuple(out))

    def __str__(self) -> str:
        return "".join(map(str, self.images)) if self.n < 10 else " ".join(map(str, self.images))


def conjugate(s: ChainMap, u: ChainMap, u_inv: ChainMap) -> ChainMap:
    """u^-1 s u."""
    return compose(compose(u_inv, s), u)


def _from_function(S: FiniteSemigroup, fn) -> Endo:
    return Endo(S, tuple(S.index[fn(s)] for s in S.elements))


def phi_tau(S: FiniteSemigroup) -> Endo:
    t = tau(S.n)
    return _from_function(S, lambda s: conjugate(s, t, t))


def phi_one_map(s: ChainMap) -> ChainMap:
    """The four-case endomorphism of POD_n, applied to one element."""
    n = s.n
    ident = ChainMap.identity(n)
    if s == ident or s == tau(n):
        return s
    if s.rank != n - 1:
        return ChainMap.empty(n)
    if s.is_injective:
        # e_i R s L e_j: i is the missing domain point, j the missing image point
        (i,) = set(range(1, n + 1)) - s.domain
        (j,) = set(range(1, n + 1)) - s.image
        return ChainMap.from_dict(n, {i: j})
    # total of rank n-1: its one non-singleton kernel block is {k-1, k}, as for f_k
    (block,) = [b for b in s.kernel() if len(b) > 1]
    k = block[-1]
    (k_s,) = set(range(1, n + 1)) - s.image
    return ChainMap.from_dict(n, {k - 1: k_s, k: k_s})


def phi_one(S: FiniteSemigroup) -> Endo:
    if S.family not in (Family.POI, Family.PO, Family.PODI, Family.POD):
        raise InvalidParameters(f"phi_1 is not defined on {S.spec}")
    return _from_function(S, phi_one_map)


def centralizer_of_tau(n: int) -> list[Permutation]:
    if n > CENTRALIZER_MAX_N:
        raise InfeasibleError(f"iterating S_{n} is infeasible (n > {CENTRALIZER_MAX_N})")
    return [
        Permutation(p)
        for p in itertools.permutations(range(1, n + 1))
        if all(p[n - i] == n + 1 - p[i - 1] for i in range(1, n + 1))
    ]


def centralizer_size(n: int) -> int:
    return math.factorial(n // 2) * 2 ** (n // 2)


def phi_sigma(S: FiniteSemigroup, sigma: Permutation) -> Endo:
    """s -> sigma^-1 (s phi_1) sigma."""
    if S.family not in (Family.POI, Family.PO, Family.PODI, Family.POD):
        raise InvalidParameters(f"phi_sigma is not defined on {S.spec}")
    if sigma.n != S.n:
        raise InvalidParameters("permutation acts on the wrong chain")
    u, u_inv = sigma.as_map(), sigma.inverse().as_map()
    if S.family.is_m_type and conjugate(tau(S.n), u, u_inv) != tau(S.n):
        raise InvalidParameters(f"sigma={sigma} does not commute with tau")
    return _from_function(S, lambda s: conjugate(phi_one_map(s), u, u_inv))


def is_group_element(s: ChainMap) -> bool:
    sq = compose(s, s)
    return sq.kernel() == s.kernel() and sq.image == s.image


def nonidempotent_group_elements(S: FiniteSemigroup) -> dict[int, list[int]]:
    """Non-idempotent h with h^2 idempotent and h H h^2, grouped by rank."""
    if not S.family.is_m_type:
        raise InvalidParameters(f"{S.spec} is not one of OD, PODI, POD")
    out: dict[int, list[int]] = {}
    for i, s in enumerate(S.elements):
        sq = compose(s, s)
        if sq != s and compose(sq, sq) == sq and is_group_element(s):
            out.setdefault(s.rank, []).append(i)
    return out


def _is_nonidempotent_group_element(S: FiniteSemigroup, h: int) -> bool:
    return any(h in hs for hs in nonidempotent_group_elements(S).values())


def f_set(S: FiniteSemigroup, h: int) -> list[int]:
    """Rank-1 idempotents f with hf = fh = f."""
    if not _is_nonidempotent_group_element(S, h):
        raise InvalidParameters(f"{S.elements[h]} is not a non-idempotent group element")
    return [
        f
        for f in S.idempotents
        if S.ranks[f] == 1 and S.mul(h, f) == f and S.mul(f, h) == f
    ]


def _piecewise(S: FiniteSemigroup, e: int, h: int | None, rest: int) -> Endo:
    images = [rest] * len(S)
    images[S.identity] = e
    if S.tau is not None:
        images[S.tau] = e if h is None else h
    return Endo(S, images)


def build_family(S: FiniteSemigroup, tag: FamilyTag) -> Endo:
    kind = tag.kind
    fam = S.family
    if kind is TagKind.IDENTITY:
        return Endo(S, range(len(S)))
    if kind is TagKind.INNER_TAU:
        return phi_tau(S)
    if kind is TagKind.PHI_SIGMA:
        if tag.sigma is None:
            raise InvalidParameters("PhiSigma needs sigma")
        return phi_sigma(S, Permutation(tag.sigma))
    idem = set(S.idempotents)
    if kind is TagKind.CONSTANT:
        if tag.f not in idem:
            raise InvalidParameters("Constant: value is not idempotent")
        return Endo(S, [tag.f] * len(S))
    if kind is TagKind.IDEMPOTENT_PAIR:
        e, f = tag.e, tag.f
        if e not in idem or f not in idem:
            raise InvalidParameters("IdempotentPair: e and f must be idempotents")
        if e == f:
            raise InvalidParameters("IdempotentPair: e must differ from f")
        if not S.mul(e, f) == S.mul(f, e) == f:
            raise InvalidParameters("IdempotentPair: ef = fe = f fails")
        return _piecewise(S, e, None, f)
    if kind in (TagKind.GROUP_TO_EMPTY, TagKind.GROUP_TO_RANK_ONE):
        if not fam.is_m_type:
            raise InvalidParameters(f"{kind.value} needs one of OD, PODI, POD")
        h = tag.h
        if h is None or not _is_nonidempotent_group_element(S, h):
            raise InvalidParameters(f"{kind.value}: h is not a non-idempotent group element")
        if kind is TagKind.GROUP_TO_EMPTY:
            if fam not in (Family.PODI, Family.POD):
                raise InvalidParameters("GroupToEmpty needs PODI or POD")
            f = S.empty
        else:
            f = tag.f
            if f not in f_set(S, h):
                raise InvalidParameters("GroupToRankOne: f is not in F(h)")
        return _piecewise(S, S.mul(h, h), h, f)
    raise InvalidParameters(f"unknown family {kind}")


def family_parameters(S: FiniteSemigroup) -> dict[TagKind, list[FamilyTag]]:
    """Every valid parameter tuple for every family that applies to S."""
    fam = S.family
    if fam in (Family.I1_ONE, Family.I1_TAU):
        raise InvalidParameters("families are defined for the six monoids only")
    out: dict[TagKind, list[FamilyTag]] = {k: [] for k in PRECEDENCE}
    out[TagKind.IDENTITY].append(FamilyTag(TagKind.IDENTITY))
    out[TagKind.INNER_TAU].append(FamilyTag(TagKind.INNER_TAU))
    if fam in (Family.POI, Family.PO):
        perms = [Permutation(p) for p in itertools.permutations(range(1, S.n + 1))]
        out[TagKind.PHI_SIGMA] = [FamilyTag(TagKind.PHI_SIGMA, sigma=p.images) for p in perms]
    elif fam in (Family.PODI, Family.POD):
        out[TagKind.PHI_SIGMA] = [
            FamilyTag(TagKind.PHI_SIGMA, sigma=p.images) for p in centralizer_of_tau(S.n)
        ]
    if fam.is_m_type:
        for hs in nonidempotent_group_elements(S).values():
            for h in hs:
                if fam is not Family.OD:
                    out[TagKind.GROUP_TO_EMPTY].append(FamilyTag(TagKind.GROUP_TO_EMPTY, h=h))
                for f in f_set(S, h):
                    out[TagKind.GROUP_TO_RANK_ONE].append(
                        FamilyTag(TagKind.GROUP_TO_RANK_ONE, h=h, f=f)
                    )
    idem = S.idempotents
    for e in idem:
        for f in idem:
            if e != f and S.mul(e, f) == S.mul(f, e) == f:
                out[TagKind.IDEMPOTENT_PAIR].append(FamilyTag(TagKind.IDEMPOTENT_PAIR, e=e, f=f))
    out[TagKind.CONSTANT] = [FamilyTag(TagKind.CONSTANT, f=f) for f in idem]
    return out


@dataclass
class Census:
    raw: dict[TagKind, int]
    distinct: dict[TagKind, int]
    maps: dict[tuple[int, ...], FamilyTag] = field(repr=False)

    @property
    def total(self) -> int:
        return len(self.maps)


def family_census(S: FiniteSemigroup) -> Census:
    """Build every family member; a map already built under an earlier kind is not recounted."""
    if S.n > CENSUS_MAX_N:
        raise InfeasibleError(f"census enumerates parameters; n={S.n} > {CENSUS_MAX_N}")
    params = family_parameters(S)
    maps: dict[tuple[int, ...], FamilyTag] = {}
    raw = {}
    distinct = {}
    for kind in PRECEDENCE:
        tags = params[kind]
        raw[kind] = len(tags)
        fresh = 0
        for tag in tags:
            phi = build_family(S, tag)
            if phi.map not in maps:
                maps[phi.map] = tag
                fresh += 1
        distinct[kind] = fresh
    return Census(raw, distinct, maps)
