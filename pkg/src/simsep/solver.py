"""Exhaustive optimal-separation solver.

Computes the best simultaneous separation of a tree family over all cut
vectors (one edge per tree) and all side orientations.  The enumeration
kernel is the compiled extension ``simsep._core`` when available, otherwise
the pure-Python fallback ``simsep._core_py``; set ``SIMSEP_PURE=1`` to force
the fallback.

``best_separation_naive`` is an independent reference implementation using
per-label membership tests and no bitsets; it exists purely to cross-check
the fast path on small instances.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from .errors import BudgetExceededError, TooLargeError
from .trees import (
    CutVector,
    EdgeCut,
    LabelSet,
    SeparationOutcome,
    TreeFamily,
    all_edge_cuts,
    canonical_anchors,
    side_labels,
    validate_cut,
)

if os.environ.get("SIMSEP_PURE"):
    from . import _core_py as _kernel

    KERNEL_NAME = "python"
else:
    try:
        from . import _core as _kernel

        KERNEL_NAME = "compiled"
    except ImportError:  # extension not built
        from . import _core_py as _kernel

        KERNEL_NAME = "python"


@dataclass(frozen=True)
class SolverBudget:
    max_cut_vectors: int = 50_000_000
    parallel_chunks: int = 1

    def __post_init__(self):
        if self.max_cut_vectors < 1 or self.parallel_chunks < 1:
            raise ValueError("budget fields must be positive")


DEFAULT_BUDGET = SolverBudget()


def _pick_xy(x0: LabelSet, x1: LabelSet) -> tuple[LabelSet, LabelSet]:
    """X = the smaller side; on ties, the side holding the smallest label."""
    if len(x0) < len(x1):
        return x0, x1
    if len(x1) < len(x0):
        return x1, x0
    if x0.bits == 0:
        return x0, x1
    low0 = x0.bits & -x0.bits
    low1 = x1.bits & -x1.bits
    return (x0, x1) if low0 < low1 else (x1, x0)


def _outcome_from_sides(family, edges, b, side0_masks, anchors, provenance):
    n = family.n
    full = (1 << n) - 1
    bits0 = full
    bits1 = full
    for j in range(family.k):
        m = side0_masks[j]
        if b[j] == 0:
            bits0 &= m
            bits1 &= full & ~m
        else:
            bits0 &= full & ~m
            bits1 &= m
    x, y = _pick_xy(LabelSet(bits0, n), LabelSet(bits1, n))
    cut = CutVector(
        tuple(
            EdgeCut(tree_index=j, edge_id=edges[j], anchor=anchors[j])
            for j in range(family.k)
        )
    )
    return SeparationOutcome(
        cut=cut,
        orientation_b=tuple(b),
        X=x,
        Y=y,
        value=min(len(x), len(y)),
        provenance=provenance,
    )


def separation_value(family: TreeFamily, cut: CutVector) -> SeparationOutcome:
    """Best orientation of a fixed cut vector.

    Enumerates orientation vectors b with b[0] = 0 (complement symmetry) in
    lexicographic order; ties keep the lexicographically smallest b.
    """
    validate_cut(family, cut)
    k = family.k
    n = family.n
    masks = [
        side_labels(family.trees[j], ec.edge_id, ec.anchor).bits
        for j, ec in enumerate(cut.cuts)
    ]
    full = (1 << n) - 1
    best_v, best_b = -1, None
    for code in range(1 << max(k - 1, 0)):
        b = tuple((code >> (j - 1)) & 1 if j > 0 else 0 for j in range(k))
        bits0 = full
        bits1 = full
        for j in range(k):
            if b[j] == 0:
                bits0 &= masks[j]
                bits1 &= full & ~masks[j]
            else:
                bits0 &= full & ~masks[j]
                bits1 &= masks[j]
        v = min(bits0.bit_count(), bits1.bit_count())
        if v > best_v:
            best_v, best_b = v, b
    edges = tuple(ec.edge_id for ec in cut.cuts)
    anchors = [ec.anchor for ec in cut.cuts]
    return _outcome_from_sides(family, edges, best_b, masks, anchors, "exact-solver")


def _chunk_ranges(m0: int, chunks: int):
    chunks = min(max(chunks, 1), max(m0, 1))
    step = math.ceil(m0 / chunks) if m0 else 1
    return [(lo, min(lo + step, m0)) for lo in range(0, m0, step)] or [(0, m0)]


def best_separation(family: TreeFamily, budget: SolverBudget = DEFAULT_BUDGET) -> SeparationOutcome:
    """Optimal SeparationOutcome over all cut vectors.

    Among optima returns the lexicographically smallest (edge-id tuple, then
    orientation b), independent of the chunking.  The enumeration space is
    partitioned along the first tree's edges; chunks are reduced with an
    associative max + lexicographic tie-break, so the outcome is identical
    for any ``parallel_chunks`` setting.
    """
    size = math.prod(t.num_edges for t in family.trees)
    if size > budget.max_cut_vectors:
        raise BudgetExceededError(size, budget.max_cut_vectors)
    masks = [[ls.bits for _, ls in all_edge_cuts(t)] for t in family.trees]
    anchors = [canonical_anchors(t) for t in family.trees]
    best = None
    for lo, hi in _chunk_ranges(family.trees[0].num_edges, budget.parallel_chunks):
        res = _kernel.enumerate_best(
            masks, family.n, lo, hi, best[0] if best else -1
        )
        if res is not None:
            best = res
    value, edges, b = best
    cut_anchors = [anchors[j][edges[j]] for j in range(family.k)]
    side0 = [masks[j][edges[j]] for j in range(family.k)]
    return _outcome_from_sides(family, edges, b, side0, cut_anchors, "exact-solver")


_NAIVE_MAX_N = 16
_NAIVE_MAX_K = 3
_NAIVE_MAX_V = 30


def best_separation_naive(family: TreeFamily) -> SeparationOutcome:
    """Reference solver: per-label membership tests, no bitsets.

    Same contract and tie-breaking as best_separation; restricted to tiny
    instances (n <= 16, k <= 3, trees with <= 30 vertices).
    """
    if (
        family.n > _NAIVE_MAX_N
        or family.k > _NAIVE_MAX_K
        or any(t.num_vertices > _NAIVE_MAX_V for t in family.trees)
    ):
        raise TooLargeError("instance exceeds naive solver limits")
    n = family.n
    k = family.k

    # per tree, per edge: set of labels on the canonical (child) side,
    # found by explicit component walks
    sides: list[list[set[int]]] = []
    anchors: list[list[int]] = []
    for tree in family.trees:
        tree_sides = []
        tree_anchors = canonical_anchors(tree)
        for eid, (u, v) in enumerate(tree.edges):
            anchor = tree_anchors[eid]
            comp = {anchor}
            stack = [anchor]
            while stack:
                w = stack.pop()
                for x in tree.adjacency[w]:
                    if x not in comp and (w, x) != (u, v) and (w, x) != (v, u):
                        comp.add(x)
                        stack.append(x)
            tree_sides.append(
                {lab for lab, vert in tree.labels.items() if vert in comp}
            )
        sides.append(tree_sides)
        anchors.append(tree_anchors)

    best = None  # (value, edges, b)
    edge_counts = [t.num_edges for t in family.trees]

    def cut_vectors(prefix):
        if len(prefix) == k:
            yield prefix
            return
        for e in range(edge_counts[len(prefix)]):
            yield from cut_vectors(prefix + (e,))

    for edges in cut_vectors(()):
        for code in range(1 << max(k - 1, 0)):
            b = tuple((code >> (j - 1)) & 1 if j > 0 else 0 for j in range(k))
            count0 = 0
            count1 = 0
            for lab in range(1, n + 1):
                in0 = True
                in1 = True
                for j in range(k):
                    member = lab in sides[j][edges[j]]
                    if member != (b[j] == 0):
                        in0 = False
                    if member != (b[j] == 1):
                        in1 = False
                if in0:
                    count0 += 1
                if in1:
                    count1 += 1
            v = min(count0, count1)
            if best is None or v > best[0]:
                best = (v, edges, b)

    value, edges, b = best
    cut_anchors = [anchors[j][edges[j]] for j in range(k)]
    masks = [
        sum(1 << (lab - 1) for lab in sides[j][edges[j]]) for j in range(k)
    ]
    return _outcome_from_sides(family, edges, b, masks, cut_anchors, "exact-solver")
