"""Concrete finite monoids of chain maps: enumeration, Green's relations, congruences."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .transform import (
    ChainMap,
    Family,
    MonoidSpec,
    compose,
    format_map,
    is_member,
    make_canonical,
    parse_map,
    tau,
)

FILTER_MAX_N = 7
BRUTE_CONGRUENCE_MAX = 10


class InfeasibleError(ValueError):
    """The requested exhaustive computation is outside its documented bounds."""


class GenerationError(RuntimeError):
    """A declared generating set failed to generate the monoid."""


def _all_maps(n: int) -> Iterator[ChainMap]:
    for images in itertools.product(range(n + 1), repeat=n):
        yield ChainMap(n, images)


def generating_set(spec: MonoidSpec) -> list[ChainMap]:
    n, fam = spec.n, spec.family
    ident = ChainMap.identity(n)
    if n == 1:
        gens = [ident]
        if fam.has_empty:
            gens.append(ChainMap.empty(1))
        return gens
    core = fam.core
    if core is Family.O:
        gens = [ident]
        for k in range(2, n + 1):
            gens += [make_canonical("f", n, k), make_canonical("g", n, k)]
    elif core is Family.POI:
        gens = [ident] + [make_canonical("x", n, i) for i in range(n)]
    elif core is Family.PO:
        gens = [ident] + sorted(_order_preserving_rank(n, n - 1))
    else:
        # I_1^1: (A -> j) = (A -> 1)({1} -> j)
        gens = [ident]
        for size in range(1, n + 1):
            for dom in itertools.combinations(range(1, n + 1), size):
                gens.append(ChainMap.constant(n, 1, dom))
        gens += [ChainMap.from_dict(n, {1: j}) for j in range(2, n + 1)]
    if fam.is_m_type or fam is Family.I1_TAU:
        gens.append(tau(n))
    return gens


def _order_preserving_rank(n: int, rank: int) -> Iterator[ChainMap]:
    """All order-preserving partial maps of the given rank with domain size >= rank."""
    pts = range(1, n + 1)
    for dom_size in range(rank, n + 1):
        for dom in itertools.combinations(pts, dom_size):
            for img in itertools.combinations_with_replacement(pts, dom_size):
                if len(set(img)) == rank:
                    yield ChainMap.from_dict(n, dict(zip(dom, img)))


class FiniteSemigroup:
    """An enumerated monoid with canonically ordered elements.

    ``words[i]`` is a shortest word over generator positions evaluating to
    element ``i``; the identity has the empty word.
    """

    def __init__(
        self,
        spec: MonoidSpec,
        elements: Sequence[ChainMap],
        generators: Sequence[int],
        words: Sequence[tuple[int, ...]],
    ):
        self.spec = spec
        self.elements = tuple(elements)
        self.index = {s: i for i, s in enumerate(self.elements)}
        self.generators = tuple(generators)
        self.words = tuple(words)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"<FiniteSemigroup {self.spec} |S|={len(self)} gens={len(self.generators)}>"

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def family(self) -> Family:
        return self.spec.family

    @cached_property
    def identity(self) -> int:
        return self.index[ChainMap.identity(self.n)]

    @cached_property
    def tau(self) -> int | None:
        return self.index.get(tau(self.n))

    @cached_property
    def empty(self) -> int | None:
        return self.index.get(ChainMap.empty(self.n))

    def id_of(self, s: ChainMap | str) -> int:
        if isinstance(s, str):
            s = parse_map(s, self.n)
        return self.index[s]

    @cached_property
    def _images(self) -> np.ndarray:
        out = np.zeros((len(self), self.n + 1), dtype=np.int64)
        out[:, 1:] = [s.images for s in self.elements]
        return out

    @cached_property
    def table(self) -> np.ndarray:
        """Full multiplication table, ``table[a, b]`` = id of ab."""
        size, n = len(self), self.n
        ext = self._images
        out = np.empty((size, size), dtype=np.int32)
        if (n + 1) ** n < 2**62:
            weights = np.array([(n + 1) ** (n - 1 - i) for i in range(n)], dtype=np.int64)
            codes = ext[:, 1:] @ weights
            for a in range(size):
                prod = ext[:, ext[a, 1:]] @ weights
                ids = np.searchsorted(codes, prod)
                if np.any(ids >= size) or np.any(codes[np.minimum(ids, size - 1)] != prod):
                    raise GenerationError(f"{self.spec} is not closed under composition")
                out[a] = ids
        else:
            for a, s in enumerate(self.elements):
                for b, t in enumerate(self.elements):
                    out[a, b] = self.index[compose(s, t)]
        return out

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def right_cayley(self) -> np.ndarray:
        return self.table[:, list(self.generators)]

    @cached_property
    def ranks(self) -> tuple[int, ...]:
        return tuple(s.rank for s in self.elements)

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.elements) if compose(s, s) == s)

    def evaluate(self, word: Iterable[int]) -> ChainMap:
        out = ChainMap.identity(self.n)
        for p in word:
            out = compose(out, self.elements[self.generators[p]])
        return out

    def to_json(self) -> dict:
        return {
            "spec": {"family": self.family.value, "n": self.n},
            "elements": [format_map(s) for s in self.elements],
            "generators": list(self.generators),
            "right_cayley": [int(x) for x in self.right_cayley.ravel()],
        }


def _closure(spec: MonoidSpec, gens: Sequence[ChainMap]) -> dict[ChainMap, tuple[int, ...]]:
    ident = ChainMap.identity(spec.n)
    words: dict[ChainMap, tuple[int, ...]] = {ident: ()}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        wx = words[x]
        for p, g in enumerate(gens):
            y = compose(x, g)
            if y not in words:
                words[y] = wx + (p,)
                queue.append(y)
    return words


def members_by_filter(spec: MonoidSpec) -> set[ChainMap]:
    """Every partial map of the chain that belongs to the monoid, found by scanning."""
    if spec.n > FILTER_MAX_N:
        raise InfeasibleError(f"filter scans (n+1)^n maps; n={spec.n} > {FILTER_MAX_N}")
    return {s for s in _all_maps(spec.n) if is_member(s, spec)}


def enumerate_monoid(spec: MonoidSpec, strategy: str | None = None) -> FiniteSemigroup:
    """Build the monoid either by filtering all partial maps or by generator closure."""
    if strategy is None:
        strategy = "filter" if spec.n <= 5 else "closure"
    if strategy == "filter" and spec.n > FILTER_MAX_N:
        raise InfeasibleError(f"filter scans (n+1)^n maps; n={spec.n} > {FILTER_MAX_N}")
    gens = generating_set(spec)
    words = _closure(spec, gens)
    if strategy == "filter":
        members = members_by_filter(spec)
        if members != set(words):
            missing = len(members - set(words))
            raise GenerationError(f"generating set of {spec} misses {missing} elements")
    elif strategy != "closure":
        raise ValueError(f"unknown strategy {strategy!r}")
    elements = sorted(words)
    index = {s: i for i, s in enumerate(elements)}
    gen_ids = []
    for g in gens:
        if index[g] not in gen_ids:
            gen_ids.append(index[g])
    if len(gen_ids) != len(gens):
        raise GenerationError("generating set has repeated elements")
    return FiniteSemigroup(spec, elements, gen_ids, [words[s] for s in elements])


# --- partitions -------------------------------------------------------------


@dataclass(frozen=True)
class Partition:
    """A set partition of ``range(size)``; blocks sorted, ordered by least element."""

    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], size: int | None = None) -> Partition:
        bs = tuple(sorted(tuple(sorted(b)) for b in blocks if b))
        seen = [x for b in bs for x in b]
        if len(seen) != len(set(seen)):
            raise ValueError("blocks overlap")
        if size is not None and sorted(seen) != list(range(size)):
            raise ValueError("blocks do not cover the semigroup")
        return cls(bs)

    @classmethod
    def from_labels(cls, labels: Sequence) -> Partition:
        groups: dict = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i)
        return cls.from_blocks(groups.values())

    @classmethod
    def identity(cls, size: int) -> Partition:
        return cls(tuple((i,) for i in range(size)))

    @classmethod
    def universal(cls, size: int) -> Partition:
        return cls((tuple(range(size)),))

    @cached_property
    def size(self) -> int:
        return sum(len(b) for b in self.blocks)

    @cached_property
    def labels(self) -> tuple[int, ...]:
        out = [0] * self.size
        for k, b in enumerate(self.blocks):
            for x in b:
                out[x] = k
        return tuple(out)

    def block_of(self, x: int) -> int:
        return self.labels[x]

    def __le__(self, other: Partition) -> bool:
        """Inclusion of the equivalence relations."""
        lab = other.labels
        return all(len({lab[x] for x in b}) == 1 for b in self.blocks)

    def __lt__(self, other: Partition) -> bool:
        return self <= other and self != other

    def __len__(self) -> int:
        return len(self.blocks)


# --- Green's relations ------------------------------------------------------


@dataclass(frozen=True)
class GreenData:
    r_classes: Partition
    l_classes: Partition
    h_classes: Partition
    j_classes: Partition
    j_order: frozenset[tuple[int, int]]

    def j_leq(self, a: int, b: int) -> bool:
        """Element-level quasi-order a <=_J b."""
        return (self.j_classes.block_of(a), self.j_classes.block_of(b)) in self.j_order

    def j_chain(self) -> list[int]:
        """J-class indices from bottom to top; raises if the order is not total."""
        k = len(self.j_classes)
        below = {j: {i for i in range(k) if (i, j) in self.j_order} for j in range(k)}
        chain = sorted(range(k), key=lambda j: len(below[j]))
        for lo, hi in zip(chain, chain[1:]):
            if (lo, hi) not in self.j_order:
                raise ValueError("J-order is not a chain")
        return chain

    @cached_property
    def jleq_matrix(self) -> np.ndarray:
        lab = np.array(self.j_classes.labels)
        k = len(self.j_classes)
        cls = np.zeros((k, k), dtype=np.uint8)
        for a, b in self.j_order:
            cls[a, b] = 1
        return cls[np.ix_(lab, lab)]


def _bitmask(flags: np.ndarray) -> int:
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


def green(S: FiniteSemigroup, method: str = "by_ideals") -> GreenData:
    if method == "by_ideals":
        return _green_by_ideals(S)
    if method == "by_characterization":
        return _green_by_characterization(S)
    raise ValueError(f"unknown method {method!r}")


def _green_by_ideals(S: FiniteSemigroup) -> GreenData:
    size = len(S)
    tab = S.table
    eye = np.eye(size, dtype=bool)
    right = []
    left = []
    for u in range(size):
        row = np.zeros(size, dtype=bool)
        row[tab[u]] = True
        right.append(_bitmask(row | eye[u]))
        col = np.zeros(size, dtype=bool)
        col[tab[:, u]] = True
        left.append(_bitmask(col | eye[u]))
    two_sided = []
    for u in range(size):
        mask = 0
        lu = left[u]
        for v in range(size):
            if lu >> v & 1:
                mask |= right[v]
        two_sided.append(mask)
    r = Partition.from_labels(right)
    l_ = Partition.from_labels(left)
    h = Partition.from_labels(list(zip(right, left)))
    j = Partition.from_labels(two_sided)
    reps = [b[0] for b in j.blocks]
    order = frozenset(
        (a, b)
        for a, ra in enumerate(reps)
        for b, rb in enumerate(reps)
        if two_sided[rb] >> ra & 1
    )
    return GreenData(r, l_, h, j, order)


def _green_by_characterization(S: FiniteSemigroup) -> GreenData:
    # domain equality pins down R only when maps are injective
    by_domain = S.family in (Family.POI, Family.PODI)
    r_keys = [s.domain if by_domain else s.kernel() for s in S.elements]
    l_keys = [s.image for s in S.elements]
    r = Partition.from_labels(r_keys)
    l_ = Partition.from_labels(l_keys)
    h = Partition.from_labels([(s.kernel(), s.image) for s in S.elements])
    j = Partition.from_labels(S.ranks)
    ranks = [S.ranks[b[0]] for b in j.blocks]
    order = frozenset(
        (a, b) for a, ra in enumerate(ranks) for b, rb in enumerate(ranks) if ra <= rb
    )
    return GreenData(r, l_, h, j, order)


# --- ideals and congruences -------------------------------------------------


def ideal(S: FiniteSemigroup, k: int) -> frozenset[int]:
    if not 0 <= k <= S.n:
        raise ValueError(f"ideal index {k} outside 0..{S.n}")
    return frozenset(i for i, r in enumerate(S.ranks) if r <= k)


def make_congruence(S: FiniteSemigroup, kind: str, k: int) -> Partition:
    """``pi`` (1 <= k <= n) or ``rees`` (0 <= k <= n)."""
    size = len(S)
    if kind == "rees":
        low = ideal(S, k)
        return Partition.from_blocks([sorted(low)] + [[i] for i in range(size) if i not in low])
    if kind == "pi":
        if not 1 <= k <= S.n:
            raise ValueError(f"pi index {k} outside 1..{S.n}")
        low = ideal(S, k - 1)
        h_keys = {}
        for i, s in enumerate(S.elements):
            if s.rank == k:
                h_keys.setdefault((s.kernel(), s.image), []).append(i)
        blocks = [sorted(low)] + list(h_keys.values())
        blocks += [[i] for i, r in enumerate(S.ranks) if r > k]
        return Partition.from_blocks(blocks, size)
    raise ValueError(f"unknown congruence kind {kind!r}")


def is_congruence(S: FiniteSemigroup, p: Partition, paranoid: bool = False) -> bool:
    """Two-sided compatibility; checking generators suffices by induction on words."""
    if p.size != len(S):
        raise ValueError("partition does not cover the semigroup")
    lab = np.asarray(p.labels)
    tab = S.table
    probes = range(len(S)) if paranoid else S.generators
    for x in probes:
        for prod in (tab[:, x], tab[x, :]):
            images = lab[prod]
            for b in p.blocks:
                if len(b) > 1 and np.any(images[list(b)] != images[b[0]]):
                    return False
    return True


def _set_partitions(size: int) -> Iterator[list[int]]:
    """Restricted growth strings of length ``size``."""
    if size == 0:
        yield []
        return
    a = [0] * size
    top = [0] * size

    def rec(i: int) -> Iterator[list[int]]:
        if i == size:
            yield a
            return
        for v in range(top[i - 1] + 2):
            a[i] = v
            top[i] = max(top[i - 1], v)
            yield from rec(i + 1)

    yield from rec(1)


def all_congruences_bruteforce(S: FiniteSemigroup) -> list[Partition]:
    size = len(S)
    if size > BRUTE_CONGRUENCE_MAX:
        raise InfeasibleError(f"|S| = {size} > {BRUTE_CONGRUENCE_MAX}: too many set partitions")
    tab = [list(map(int, row)) for row in S.table]
    gens = S.generators
    found = []
    for labels in _set_partitions(size):
        ok = True
        for g in gens:
            right: dict[int, int] = {}
            left: dict[int, int] = {}
            for x in range(size):
                lx = labels[x]
                for seen, y in ((right, labels[tab[x][g]]), (left, labels[tab[g][x]])):
                    if seen.setdefault(lx, y) != y:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            found.append(Partition.from_labels(list(labels)))
    return sorted(found, key=lambda p: (-len(p), p.blocks))
