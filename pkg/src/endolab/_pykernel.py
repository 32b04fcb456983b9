"""Pure-Python homomorphism search; the reference the Cython kernel mirrors.

A homomorphism of a finite semigroup is fixed by its values on a generating
set.  Generators are assigned depth first; after each assignment the partial
map is closed under right multiplication by every assigned generator
(``img[s*g] = img[s]*img[g]``), so any clash inside the subsemigroup generated
so far cuts the branch immediately.
"""

from __future__ import annotations

import time

CHECK_EVERY = 4096


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, found: int, nodes: int):
        super().__init__(f"time budget exceeded after {nodes} nodes ({found} maps found)")
        self.found = found
        self.nodes = nodes


def search(table, gens, candidates, jleq, injective=False, deadline=None):
    """Return every consistent total map as a tuple, in DFS order.

    ``table`` is the full N x N multiplication table, ``gens`` the generator
    ids in assignment order, ``candidates[k]`` the admissible images of
    ``gens[k]`` and ``jleq[a][b]`` true when a <=_J b.
    """
    table = [list(map(int, row)) for row in table]
    jleq = [list(map(bool, row)) for row in jleq]
    size = len(table)
    m = len(gens)
    img = [-1] * size
    inv = [-1] * size
    trail: list[int] = []
    assigned: list[int] = []
    results: list[tuple[int, ...]] = []
    nodes = 0

    def define(x: int, v: int) -> bool:
        if injective:
            if inv[v] != -1:
                return False
            inv[v] = x
        img[x] = v
        trail.append(x)
        return True

    def check(s: int, g: int) -> bool:
        p = table[s][g]
        v = table[img[s]][img[g]]
        w = img[p]
        if w == -1:
            return define(p, v)
        return w == v

    def close(start: int, g_new: int) -> bool:
        for i in range(start):
            if not check(trail[i], g_new):
                return False
        i = start
        while i < len(trail):
            t = trail[i]
            for g in assigned:
                if not check(t, g):
                    return False
            i += 1
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            x = trail.pop()
            if injective:
                inv[img[x]] = -1
            img[x] = -1

    def j_ok(g: int, c: int) -> bool:
        for h in assigned:
            d = img[h]
            if jleq[g][h] and not jleq[c][d]:
                return False
            if jleq[h][g] and not jleq[d][c]:
                return False
        return True

    def descend(k: int) -> None:
        nonlocal nodes
        nodes += 1
        if deadline is not None and nodes % CHECK_EVERY == 0 and time.monotonic() > deadline:
            raise SearchBudgetExceeded(len(results), nodes)
        if k == m:
            if -1 in img:
                raise RuntimeError("generators do not reach every element")
            results.append(tuple(img))
            return
        g = gens[k]
        mark = len(trail)
        if img[g] != -1:
            assigned.append(g)
            if close(mark, g):
                descend(k + 1)
            undo(mark)
            assigned.pop()
            return
        for c in candidates[k]:
            if not j_ok(g, c):
                continue
            if define(g, c):
                assigned.append(g)
                if close(mark, g):
                    descend(k + 1)
                assigned.pop()
            undo(mark)

    descend(0)
    return results, nodes
