"""Pure-Python cut-vector enumeration kernel.

Fallback for environments without the compiled extension (simsep._core).
Same contract and iteration order as the compiled kernel: cut vectors are
scanned lexicographically by edge ids, orientations lexicographically by the
bit vector b (b[0] fixed to 0), and a candidate replaces the incumbent only
on strict improvement, so the returned optimum is the lexicographically
smallest (edge tuple, then b).

States carry running intersections for every live orientation prefix; a
prefix dies as soon as min(|I0|,|I1|) can no longer beat the incumbent.
"""

from __future__ import annotations


def enumerate_best(masks, n_labels, e0_start, e0_stop, initial_best):
    """Best (value, edges, b) over cut vectors with e0 in [e0_start, e0_stop).

    ``masks[i][e]`` is the canonical-side bitmask of edge ``e`` of tree ``i``
    (an int with bits 0..n_labels-1).  Only outcomes with value strictly
    greater than ``initial_best`` are reported; returns None otherwise.
    """
    k = len(masks)
    full = (1 << n_labels) - 1
    best = [initial_best, None, None]  # value, edges, b

    def search(depth, edges_prefix, states):
        last = depth == k - 1
        bits_options = (0,) if depth == 0 else (0, 1)
        for e, m in enumerate(masks[depth]):
            if depth == 0 and not e0_start <= e < e0_stop:
                continue
            cm = full & ~m
            if last:
                for b_prefix, i0, i1 in states:
                    for bit in bits_options:
                        if bit == 0:
                            pc0 = (i0 & m).bit_count()
                            pc1 = (i1 & cm).bit_count()
                        else:
                            pc0 = (i0 & cm).bit_count()
                            pc1 = (i1 & m).bit_count()
                        v = pc0 if pc0 < pc1 else pc1
                        if v > best[0]:
                            best[0] = v
                            best[1] = edges_prefix + (e,)
                            best[2] = b_prefix | (bit << depth)
            else:
                new_states = []
                for b_prefix, i0, i1 in states:
                    for bit in bits_options:
                        if bit == 0:
                            o0 = i0 & m
                            o1 = i1 & cm
                        else:
                            o0 = i0 & cm
                            o1 = i1 & m
                        if min(o0.bit_count(), o1.bit_count()) > best[0]:
                            new_states.append((b_prefix | (bit << depth), o0, o1))
                if new_states:
                    search(depth + 1, edges_prefix + (e,), new_states)

    search(0, (), [(0, full, full)])
    if best[1] is None:
        return None
    value, edges, b = best
    return value, edges, tuple((b >> i) & 1 for i in range(k))
