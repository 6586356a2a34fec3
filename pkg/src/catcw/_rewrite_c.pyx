# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled rewrite kernel.  Same contract as ``_rewrite_py.RuleTable``:
oriented non-growing rules over int words, deterministic leftmost reduction."""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy


cdef class RuleTable:
    cdef int n_rules
    cdef int max_lhs
    cdef int* lhs_flat
    cdef int* rhs_flat
    cdef int* lhs_off   # n_rules + 1 offsets into lhs_flat
    cdef int* rhs_off
    cdef readonly tuple rules

    def __cinit__(self, rules):
        canon = []
        for lhs, rhs in rules:
            lhs = tuple(lhs)
            rhs = tuple(rhs)
            if not lhs:
                raise ValueError("rule with empty left-hand side")
            if len(rhs) > len(lhs):
                raise ValueError("rule grows words; table expects shortlex-oriented rules")
            canon.append((lhs, rhs))
        self.rules = tuple(canon)
        self.n_rules = len(canon)
        cdef int lhs_total = 0
        cdef int rhs_total = 0
        cdef int ml = 0
        for l, r in canon:
            lhs_total += len(l)
            rhs_total += len(r)
            if len(l) > ml:
                ml = len(l)
        self.max_lhs = ml
        self.lhs_flat = <int*> malloc(sizeof(int) * (lhs_total if lhs_total else 1))
        self.rhs_flat = <int*> malloc(sizeof(int) * (rhs_total if rhs_total else 1))
        self.lhs_off = <int*> malloc(sizeof(int) * (self.n_rules + 1))
        self.rhs_off = <int*> malloc(sizeof(int) * (self.n_rules + 1))
        if (self.lhs_flat == NULL or self.rhs_flat == NULL
                or self.lhs_off == NULL or self.rhs_off == NULL):
            raise MemoryError()
        cdef int li = 0, ri = 0, k = 0
        self.lhs_off[0] = 0
        self.rhs_off[0] = 0
        for l, r in canon:
            for v in l:
                self.lhs_flat[li] = v
                li += 1
            for v in r:
                self.rhs_flat[ri] = v
                ri += 1
            k += 1
            self.lhs_off[k] = li
            self.rhs_off[k] = ri

    def __dealloc__(self):
        if self.lhs_flat != NULL:
            free(self.lhs_flat)
        if self.rhs_flat != NULL:
            free(self.rhs_flat)
        if self.lhs_off != NULL:
            free(self.lhs_off)
        if self.rhs_off != NULL:
            free(self.rhs_off)

    def reduce(self, word):
        """Return the normal form of ``word`` under the table's strategy."""
        cdef tuple tw = tuple(word)
        cdef int n = len(tw)
        if self.n_rules == 0 or n == 0:
            return tw
        # rules never grow words, so the input length bounds the buffer
        cdef int* w = <int*> malloc(sizeof(int) * n)
        if w == NULL:
            raise MemoryError()
        cdef int i, j, r, ll, rl, ls, rs, m
        cdef int length = n
        try:
            for i in range(n):
                w[i] = tw[i]
            i = 0
            while i < length:
                m = 0
                for r in range(self.n_rules):
                    ls = self.lhs_off[r]
                    ll = self.lhs_off[r + 1] - ls
                    if i + ll > length:
                        continue
                    m = 1
                    for j in range(ll):
                        if w[i + j] != self.lhs_flat[ls + j]:
                            m = 0
                            break
                    if m:
                        rs = self.rhs_off[r]
                        rl = self.rhs_off[r + 1] - rs
                        for j in range(rl):
                            w[i + j] = self.rhs_flat[rs + j]
                        if rl != ll:
                            for j in range(i + ll, length):
                                w[i + rl + (j - i - ll)] = w[j]
                            length -= ll - rl
                        i = i - self.max_lhs + 1
                        if i < 0:
                            i = 0
                        break
                if not m:
                    i += 1
            return tuple([w[j] for j in range(length)])
        finally:
            free(w)
