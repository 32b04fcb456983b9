# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled homomorphism search, line for line the algorithm of _pykernel."""

import time

import numpy as np

from endolab._pykernel import SearchBudgetExceeded

cdef int CHECK_EVERY = 4096


cdef class _Search:
    cdef int[:, ::1] table
    cdef unsigned char[:, ::1] jleq
    cdef int[::1] gens
    cdef int[::1] cand
    cdef int[::1] cand_start
    cdef int[::1] img
    cdef int[::1] inv
    cdef int[::1] trail
    cdef int[::1] assigned
    cdef int ntrail
    cdef int nassigned
    cdef int size
    cdef int m
    cdef bint injective
    cdef object deadline
    cdef list results
    cdef long nodes

    def __init__(self, table, gens, cand, cand_start, jleq, injective, deadline):
        self.table = table
        self.gens = gens
        self.cand = cand
        self.cand_start = cand_start
        self.jleq = jleq
        self.size = table.shape[0]
        self.m = gens.shape[0]
        self.img = np.full(self.size, -1, dtype=np.int32)
        self.inv = np.full(self.size, -1, dtype=np.int32)
        self.trail = np.zeros(self.size, dtype=np.int32)
        self.assigned = np.zeros(self.m, dtype=np.int32)
        self.ntrail = 0
        self.nassigned = 0
        self.injective = injective
        self.deadline = deadline
        self.results = []
        self.nodes = 0

    cdef inline bint define(self, int x, int v):
        if self.injective:
            if self.inv[v] != -1:
                return False
            self.inv[v] = x
        self.img[x] = v
        self.trail[self.ntrail] = x
        self.ntrail += 1
        return True

    cdef inline bint check(self, int s, int g):
        cdef int p = self.table[s, g]
        cdef int v = self.table[self.img[s], self.img[g]]
        cdef int w = self.img[p]
        if w == -1:
            return self.define(p, v)
        return w == v

    cdef bint close(self, int start, int g_new):
        cdef int i, j
        for i in range(start):
            if not self.check(self.trail[i], g_new):
                return False
        i = start
        while i < self.ntrail:
            for j in range(self.nassigned):
                if not self.check(self.trail[i], self.assigned[j]):
                    return False
            i += 1
        return True

    cdef void undo(self, int mark):
        cdef int x
        while self.ntrail > mark:
            self.ntrail -= 1
            x = self.trail[self.ntrail]
            if self.injective:
                self.inv[self.img[x]] = -1
            self.img[x] = -1

    cdef bint j_ok(self, int g, int c):
        cdef int j, h, d
        for j in range(self.nassigned):
            h = self.assigned[j]
            d = self.img[h]
            if self.jleq[g, h] and not self.jleq[c, d]:
                return False
            if self.jleq[h, g] and not self.jleq[d, c]:
                return False
        return True

    cdef descend(self, int k):
        cdef int g, mark, idx, c, x
        self.nodes += 1
        if self.deadline is not None and self.nodes % CHECK_EVERY == 0:
            if time.monotonic() > self.deadline:
                raise SearchBudgetExceeded(len(self.results), self.nodes)
        if k == self.m:
            for x in range(self.size):
                if self.img[x] == -1:
                    raise RuntimeError("generators do not reach every element")
            self.results.append(tuple([self.img[x] for x in range(self.size)]))
            return
        g = self.gens[k]
        mark = self.ntrail
        if self.img[g] != -1:
            self.assigned[self.nassigned] = g
            self.nassigned += 1
            if self.close(mark, g):
                self.descend(k + 1)
            self.undo(mark)
            self.nassigned -= 1
            return
        for idx in range(self.cand_start[k], self.cand_start[k + 1]):
            c = self.cand[idx]
            if not self.j_ok(g, c):
                continue
            if self.define(g, c):
                self.assigned[self.nassigned] = g
                self.nassigned += 1
                if self.close(mark, g):
                    self.descend(k + 1)
                self.nassigned -= 1
            self.undo(mark)


def search(table, gens, candidates, jleq, injective=False, deadline=None):
    table = np.ascontiguousarray(table, dtype=np.int32)
    jleq = np.ascontiguousarray(jleq, dtype=np.uint8)
    gens_arr = np.asarray(gens, dtype=np.int32)
    flat = [c for cs in candidates for c in cs]
    starts = np.zeros(len(candidates) + 1, dtype=np.int32)
    starts[1:] = np.cumsum([len(cs) for cs in candidates])
    cand = np.asarray(flat if flat else [0], dtype=np.int32)
    s = _Search(table, gens_arr, cand, starts, jleq, bool(injective), deadline)
    s.descend(0)
    return s.results, s.nodes
