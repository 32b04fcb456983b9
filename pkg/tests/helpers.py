"""Shared caches and independent oracles for the test suite."""

from __future__ import annotations

import itertools
from functools import lru_cache

from endolab.search import enumerate_endomorphisms
from endolab.semigroup import enumerate_monoid
from endolab.transform import ChainMap, MonoidSpec, compose

M_TYPES = ("od", "podi", "pod")
T_TYPES = ("o", "poi", "po")
SIX = T_TYPES + M_TYPES
ALL_EIGHT = SIX + ("i1one", "i1tau")


@lru_cache(maxsize=None)
def monoid(family: str, n: int):
    return enumerate_monoid(MonoidSpec(family, n))


@lru_cache(maxsize=None)
def endos(family: str, n: int):
    return tuple(enumerate_endomorphisms(monoid(family, n), budget_seconds=None))


def all_maps(n: int):
    for images in itertools.product(range(n + 1), repeat=n):
        yield ChainMap(n, images)


def naive_endomorphisms(S) -> set[tuple[int, ...]]:
    """Every multiplicative self-map, by backtracking over all elements.

    Shares nothing with the library search except the elements themselves:
    products are recomputed with compose and every pair is checked.
    """
    els = S.elements
    size = len(els)
    index = {s: i for i, s in enumerate(els)}
    prod = [[index[compose(a, b)] for b in els] for a in els]
    img = [-1] * size
    out = set()

    def consistent(k: int) -> bool:
        for a in range(k + 1):
            for b in range(k + 1):
                c = prod[a][b]
                if c <= k and img[c] != prod[img[a]][img[b]]:
                    return False
        return True

    def go(k: int) -> None:
        if k == size:
            out.add(tuple(img))
            return
        for v in range(size):
            img[k] = v
            if consistent(k):
                go(k + 1)
        img[k] = -1

    go(0)
    return out


def principal_ideals(S):
    """(x S^1, S^1 x, S^1 x S^1) for each x, by direct composition."""
    els = S.elements
    index = {s: i for i, s in enumerate(els)}
    right = [frozenset({i} | {index[compose(x, y)] for y in els}) for i, x in enumerate(els)]
    left = [frozenset({i} | {index[compose(y, x)] for y in els}) for i, x in enumerate(els)]
    two = [frozenset().union(*(right[j] for j in left[i])) for i in range(len(els))]
    return right, left, two
