# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled cut-vector enumeration kernel.

Hot loop of the exhaustive solver: lexicographic scan over all cut vectors
with per-orientation running bitset intersections and popcount pruning.
Wire-compatible with the pure-Python fallback (simsep._core_py).
"""

import numpy as np


ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef class _Searcher:
    cdef int k, W
    cdef long best_value
    cdef bint found
    cdef u64 best_b
    cdef u64[::1] flat
    cdef long[::1] offs
    cdef long[::1] mcount
    cdef u64[:, :, ::1] s0
    cdef u64[:, :, ::1] s1
    cdef u64[:, ::1] sb
    cdef long[::1] cur_edges
    cdef long[::1] best_edges

    def __init__(self, flat, offs, mcount, k, W, initial_best):
        self.k = k
        self.W = W
        self.best_value = initial_best
        self.found = False
        self.best_b = 0
        self.flat = flat
        self.offs = offs
        self.mcount = mcount
        max_states = 1 << (k - 1) if k > 1 else 1
        self.s0 = np.zeros((k + 1, max_states, W), dtype=np.uint64)
        self.s1 = np.zeros((k + 1, max_states, W), dtype=np.uint64)
        self.sb = np.zeros((k + 1, max_states), dtype=np.uint64)
        self.cur_edges = np.zeros(k, dtype=np.int_)
        self.best_edges = np.zeros(k, dtype=np.int_)

    cdef void _search(self, int depth, long e_lo, long e_hi, int nstates):
        cdef int W = self.W
        cdef long moff = self.offs[depth]
        cdef long e
        cdef int s, j, bit, nnew, nbits
        cdef u64 *m
        cdef u64 *i0
        cdef u64 *i1
        cdef u64 *o0
        cdef u64 *o1
        cdef long pc0, pc1, v
        cdef bint last = depth == self.k - 1
        nbits = 1 if depth == 0 else 2
        for e in range(e_lo, e_hi):
            m = &self.flat[moff + e * W]
            nnew = 0
            for s in range(nstates):
                i0 = &self.s0[depth, s, 0]
                i1 = &self.s1[depth, s, 0]
                for bit in range(nbits):
                    pc0 = 0
                    pc1 = 0
                    if last:
                        if bit == 0:
                            for j in range(W):
                                pc0 += __builtin_popcountll(i0[j] & m[j])
                                pc1 += __builtin_popcountll(i1[j] & ~m[j])
                        else:
                            for j in range(W):
                                pc0 += __builtin_popcountll(i0[j] & ~m[j])
                                pc1 += __builtin_popcountll(i1[j] & m[j])
                        v = pc0 if pc0 < pc1 else pc1
                        if v > self.best_value:
                            self.best_value = v
                            self.found = True
                            self.cur_edges[depth] = e
                            for j in range(self.k):
                                self.best_edges[j] = self.cur_edges[j]
                            self.best_b = self.sb[depth, s] | ((<u64>bit) << depth)
                    else:
                        o0 = &self.s0[depth + 1, nnew, 0]
                        o1 = &self.s1[depth + 1, nnew, 0]
                        if bit == 0:
                            for j in range(W):
                                o0[j] = i0[j] & m[j]
                                o1[j] = i1[j] & ~m[j]
                                pc0 += __builtin_popcountll(o0[j])
                                pc1 += __builtin_popcountll(o1[j])
                        else:
                            for j in range(W):
                                o0[j] = i0[j] & ~m[j]
                                o1[j] = i1[j] & m[j]
                                pc0 += __builtin_popcountll(o0[j])
                                pc1 += __builtin_popcountll(o1[j])
                        if (pc0 if pc0 < pc1 else pc1) > self.best_value:
                            self.sb[depth + 1, nnew] = self.sb[depth, s] | ((<u64>bit) << depth)
                            nnew += 1
            if not last and nnew > 0:
                self.cur_edges[depth] = e
                self._search(depth + 1, 0, self.mcount[depth + 1], nnew)


def enumerate_best(masks, n_labels, e0_start, e0_stop, initial_best):
    """Best (value, edges, b) over cut vectors with e0 in [e0_start, e0_stop).

    ``masks[i][e]`` is the canonical-side bitmask (Python int) of edge ``e``
    of tree ``i``.  Only outcomes strictly better than ``initial_best`` are
    reported; returns None otherwise.
    """
    cdef int k = len(masks)
    cdef int W = (n_labels + 63) // 64 if n_labels > 0 else 1

    offs = np.zeros(k, dtype=np.int_)
    mcount = np.zeros(k, dtype=np.int_)
    total_words = 0
    for i in range(k):
        mcount[i] = len(masks[i])
        offs[i] = total_words
        total_words += len(masks[i]) * W
    flat = np.zeros(total_words, dtype=np.uint64)
    word_mask = (1 << 64) - 1
    for i in range(k):
        base = offs[i]
        for e, mask in enumerate(masks[i]):
            for j in range(W):
                flat[base + e * W + j] = (mask >> (64 * j)) & word_mask

    searcher = _Searcher(flat, offs, mcount, k, W, initial_best)
    full = (1 << n_labels) - 1
    for j in range(W):
        searcher.s0[0, 0, j] = (full >> (64 * j)) & word_mask
        searcher.s1[0, 0, j] = (full >> (64 * j)) & word_mask
    searcher._search(0, e0_start, min(e0_stop, mcount[0]), 1)
    if not searcher.found:
        return None
    edges = tuple(int(searcher.best_edges[i]) for i in range(k))
    b = tuple(int(searcher.best_b >> i) & 1 for i in range(k))
    return int(searcher.best_value), edges, b
