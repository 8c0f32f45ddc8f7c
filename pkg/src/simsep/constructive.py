"""Constructive separator algorithms.

These are the guaranteed-bound algorithms: the single-tree balanced edge
(value >= (n-1)/r), the two-tree diagonal combination (>= (n-1)/2r), the
iterative prefix splitter for path families, the exact-rational two-tree
case machine for degree-3 trees (min >= 4n/27 - s, sum >= 4n/9 - s), and
the three-tree finisher built on top of it (>= 2n/27 - s).

All case conditions are evaluated in exact rational arithmetic (integer
cardinalities over denominator n), never floats: several thresholds such as
beta >= bc + 1/54 sit on knife edges at small n.

The "slack" parameter absorbs the finite-n bookkeeping terms (the -1 in the
single-tree bound, the weight of the unlabeled split vertex, one rounding
per stage).  For families of unrooted binary trees whose labels are exactly
the leaves, the bounds are exact and the slack is forced to 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ContractViolationError,
    DegreeTooHighError,
    NoLabelsError,
    NotAPathError,
)
from .trees import (
    CutVector,
    EdgeCut,
    LabeledTree,
    LabelSet,
    SeparationOutcome,
    TreeFamily,
    all_edge_cuts,
    make_family,
    max_degree,
    restrict_labels,
    side_labels,
)
from .solver import _pick_xy

DEFAULT_SLACK = 3


def _is_phylo(tree: LabeledTree) -> bool:
    """Unrooted binary with labels exactly on the leaves (no diagnostics)."""
    if tree.num_vertices < 2:
        return False
    label_of = tree._label_of
    for v in range(tree.num_vertices):
        deg = tree.degree(v)
        if deg == 1:
            if v not in label_of:
                return False
        elif deg == 3:
            if v in label_of:
                return False
        else:
            return False
    return len(tree.labels) == tree.n


def _jordan_argmax(tree: LabeledTree) -> tuple[int, LabelSet]:
    """Edge maximizing the smaller label side; ties -> smallest edge_id.

    Returns (edge_id, canonical-side label set).
    """
    best_eid, best_side, best_min = -1, None, -1
    n = tree.n
    for eid, side in all_edge_cuts(tree):
        m = min(len(side), n - len(side))
        if m > best_min:
            best_eid, best_side, best_min = eid, side, m
    return best_eid, best_side


def _anchor_for(tree: LabeledTree, edge_id: int, want: LabelSet) -> int:
    """Endpoint of the edge whose side contains ``want`` (labels)."""
    u, v = tree.edges[edge_id]
    su = side_labels(tree, edge_id, u)
    return u if want.issubset(su) else v


def _make_outcome(trees, edges, x: LabelSet, y: LabelSet, provenance) -> SeparationOutcome:
    x, y = _pick_xy(x, y)
    cuts = []
    for j, (tree, eid) in enumerate(zip(trees, edges)):
        anchor = _anchor_for(tree, eid, x)
        cuts.append(EdgeCut(tree_index=j, edge_id=eid, anchor=anchor))
    return SeparationOutcome(
        cut=CutVector(tuple(cuts)),
        orientation_b=(0,) * len(trees),
        X=x,
        Y=y,
        value=min(len(x), len(y)),
        provenance=provenance,
    )


def jordan_edge(tree: LabeledTree) -> SeparationOutcome:
    """Best single-edge split of one tree: value >= (n-1)/r.

    X is the smaller side; on ties the canonical (child-under-root-0) side.
    """
    if tree.n < 2:
        raise NoLabelsError(f"need at least 2 labels, got {tree.n}")
    eid, canonical = _jordan_argmax(tree)
    other = canonical.complement()
    if len(canonical) <= len(other):
        x, y = canonical, other
    else:
        x, y = other, canonical
    r = tree.degree_bound_r
    if x is canonical:
        anchor = _anchor_for(tree, eid, canonical)
    else:
        anchor = _anchor_for(tree, eid, other)
    outcome = SeparationOutcome(
        cut=CutVector((EdgeCut(0, eid, anchor),)),
        orientation_b=(0,),
        X=x,
        Y=y,
        value=min(len(x), len(y)),
        provenance="jordan",
    )
    if outcome.value * r < tree.n - 1:
        raise ContractViolationError(
            f"balanced-edge bound failed: {outcome.value} < ({tree.n}-1)/{r}"
        )
    return outcome


def two_tree_separator(t1: LabeledTree, t2: LabeledTree) -> SeparationOutcome:
    """Diagonal combination of the two single-tree splits: >= (n-1)/2r."""
    for t in (t1, t2):
        if t.n < 2:
            raise NoLabelsError(f"need at least 2 labels, got {t.n}")
    e1, s1 = _jordan_argmax(t1)
    e2, s2 = _jordan_argmax(t2)
    s00 = s1 & s2
    s01 = s1 & s2.complement()
    s10 = s1.complement() & s2
    s11 = s1.complement() & s2.complement()
    if min(len(s00), len(s11)) >= min(len(s01), len(s10)):
        x, y, diag = s00, s11, "00-11"
    else:
        x, y, diag = s01, s10, "01-10"
    outcome = _make_outcome([t1, t2], [e1, e2], x, y, f"two-tree:{diag}")
    r = max(t1.degree_bound_r, t2.degree_bound_r)
    if outcome.value * 2 * r < t1.n - 1:
        raise ContractViolationError(
            f"two-tree bound failed: {outcome.value} < ({t1.n}-1)/(2*{r})"
        )
    return outcome


def _path_order(tree: LabeledTree) -> list[int]:
    """Labels along the path, starting at the endpoint with smaller vertex id."""
    if max_degree(tree) > 2 or len(tree.labels) != tree.num_vertices:
        raise NotAPathError("every vertex must be labeled and have degree <= 2")
    ends = [v for v in range(tree.num_vertices) if tree.degree(v) <= 1]
    start = min(ends)
    order = [start]
    prev = -1
    cur = start
    label_of = tree._label_of
    while True:
        nxt = [w for w in tree.adjacency[cur] if w != prev]
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        order.append(cur)
    return [label_of[v] for v in order]


def _first_separating_edge(tree: LabeledTree, order: list[int], a: set, b: set) -> int:
    """Edge id of the first path edge separating label sets a and b."""
    edge_ids = {}
    label_of = tree._label_of
    vertex_of = tree.labels
    for eid, (u, v) in enumerate(tree.edges):
        edge_ids[frozenset((u, v))] = eid
    prefix = set()
    for pos in range(len(order) - 1):
        prefix.add(order[pos])
        if (a <= prefix and not (b & prefix)) or (b <= prefix and not (a & prefix)):
            u = vertex_of[order[pos]]
            v = vertex_of[order[pos + 1]]
            return edge_ids[frozenset((u, v))]
    raise NotAPathError("sets are not separated by any path edge")  # unreachable


def path_family_separator(family: TreeFamily) -> SeparationOutcome:
    """Iterative prefix splitting for a family of fully-labeled paths.

    Halve along the first path; at each later path restrict to the surviving
    labels, take the smallest prefix covering half of them, and keep the
    diagonal pair with the larger min.  Guarantees value >= 2 whenever
    n >= 2^k + 2, and value >= floor(n/2^k) - k in general.
    """
    n = family.n
    k = family.k
    if n < 2:
        raise NoLabelsError(f"need at least 2 labels, got {n}")
    orders = [_path_order(t) for t in family.trees]
    half = (n + 1) // 2
    a = set(orders[0][:half])
    b = set(orders[0][half:])
    edges = [_first_separating_edge(family.trees[0], orders[0], a, b)]
    for i in range(1, k):
        sigma = [lab for lab in orders[i] if lab in a or lab in b]
        target = (len(sigma) + 1) // 2
        c = set(sigma[:target])
        d = set(sigma[target:])
        cand1 = (a & c, b & d)
        cand2 = (a & d, b & c)
        if min(len(cand1[0]), len(cand1[1])) >= min(len(cand2[0]), len(cand2[1])):
            a, b = cand1
        else:
            a, b = cand2
        edges.append(_first_separating_edge(family.trees[i], orders[i], a, b))
    x = LabelSet.from_labels(a, n)
    y = LabelSet.from_labels(b, n)
    outcome = _make_outcome(list(family.trees), edges, x, y, "path-family")
    floor_bound = max(n // (1 << k) - k, 0)
    needed = 2 if n >= (1 << k) + 2 else floor_bound
    if outcome.value < max(floor_bound, needed):
        raise ContractViolationError(
            f"path-family bound failed: {outcome.value} < {max(floor_bound, needed)}"
        )
    return outcome


@dataclass(frozen=True)
class Lower2Trace:
    """Audit record of the two-tree case machine.

    Weights are exact rationals with denominator n.  ``case_path`` is the
    condition chain the written proof would have followed (e.g. "2.2.1.2.2"),
    which may differ from the candidate actually returned (the algorithm
    returns the best candidate over all terminal cases).
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    beta: Fraction | None
    case_path: str
    y: int
    u: int | None
    v: int | None
    tree_swapped: bool
    side1_swapped: bool
    side2_swapped: bool
    cd_swapped: bool


def _edge_id_between(tree: LabeledTree, u: int, v: int) -> int:
    for eid, (p, q) in enumerate(tree.edges):
        if (p, q) == (u, v) or (p, q) == (v, u):
            return eid
    raise ValueError(f"no edge between {u} and {v}")


def lower2_pair(
    t1: LabeledTree,
    t2: LabeledTree,
    slack: int = DEFAULT_SLACK,
    phylo: bool | None = None,
) -> tuple[SeparationOutcome, Lower2Trace]:
    """Two degree-<=3 trees: min(|X|,|Y|) >= 4n/27 - s and |X|+|Y| >= 4n/9 - s.

    In phylogenetic mode (both trees unrooted binary, labels = leaves) the
    bounds are exact (s = 0).  Returns the outcome together with the trace.
    """
    n = t1.n
    for t in (t1, t2):
        if max_degree(t) > 3:
            raise DegreeTooHighError("case machine requires max degree <= 3")
        if t.n < 2:
            raise NoLabelsError(f"need at least 2 labels, got {t.n}")
    if phylo is None:
        phylo = _is_phylo(t1) and _is_phylo(t2)
    s_n = 0 if phylo else slack

    e1, side1 = _jordan_argmax(t1)
    e2, side2 = _jordan_argmax(t2)

    # normalize: a = smallest of the four side weights (swap trees if the
    # second tree holds it), X_{1,0} = the small side, X_{2,0} the big one
    min1 = min(len(side1), n - len(side1))
    min2 = min(len(side2), n - len(side2))
    tree_swapped = min2 < min1
    if tree_swapped:
        t1, t2 = t2, t1
        e1, e2 = e2, e1
        side1, side2 = side2, side1
    side1_swapped = len(side1) > n - len(side1)
    x10 = side1.complement() if side1_swapped else side1
    x11 = x10.complement()
    side2_swapped = len(side2) < n - len(side2)
    x20 = side2.complement() if side2_swapped else side2
    x21 = x20.complement()

    a = Fraction(len(x10), n)
    b = Fraction(len(x20), n)

    # split vertex y and its up-to-two neighbors inside the big side of e1
    p, q = t1.edges[e1]
    y = p if side_labels(t1, e1, p).bits == x11.bits else q
    other_end = q if y == p else p
    nbrs = sorted(w for w in t1.adjacency[y] if w != other_end)
    if len(nbrs) == 2:
        u0, v0 = nbrs
        eu0 = _edge_id_between(t1, y, u0)
        ev0 = _edge_id_between(t1, y, v0)
        set_u0 = side_labels(t1, eu0, u0)
        set_v0 = side_labels(t1, ev0, v0)
        cd_swapped = len(set_u0) > len(set_v0)
        if cd_swapped:
            u, v = v0, u0
            x110, x111 = set_v0, set_u0
            eu, ev = ev0, eu0
        else:
            u, v = u0, v0
            x110, x111 = set_u0, set_v0
            eu, ev = eu0, ev0
    elif len(nbrs) == 1:
        u, eu, x110 = None, None, LabelSet.empty(n)
        v = nbrs[0]
        ev = _edge_id_between(t1, y, v)
        x111 = side_labels(t1, ev, v)
        cd_swapped = False
    else:
        u = v = eu = ev = None
        x110 = x111 = LabelSet.empty(n)
        cd_swapped = False

    c = Fraction(len(x110), n)
    d = Fraction(len(x111), n)
    wy = Fraction(1, n) if y in t1._label_of else Fraction(0)
    assert a + c + d + wy == 1, "side decomposition around y must be exact"
    # maximality of e1: the split at yv cannot beat it
    assert v is None or min(d, 1 - d) <= a, "chosen edge was not maximal"

    A = x10 & x20
    B = x10 & x21
    C = x11 & x20
    D = x11 & x21

    candidates = []  # (min, sum, order, X, Y, edge-in-t1)
    def add(xset, yset, eid, tag):
        lo = min(len(xset), len(yset))
        candidates.append((lo, len(xset) + len(yset), len(candidates), xset, yset, eid, tag))

    add(A, D, e1, "A-D")
    add(B, C, e1, "B-C")
    if u is not None:
        add(x110 & x20, (x10 | x111) & x21, eu, "yu")
    if v is not None:
        add(x111 & x20, (x10 | x110) & x21, ev, "yv")
    best = max(candidates, key=lambda cand: (cand[0], cand[1], -cand[2]))
    _, _, _, x, yset, e1_final, _ = best

    # proof chain, in exact arithmetic with cleared denominators
    wA = Fraction(len(A), n)
    beta: Fraction | None = None
    if wA >= a * b:
        case_path = "1"
    elif a * (1 - b) >= Fraction(4, 27):
        case_path = "2.1"
    else:
        beta1 = Fraction(len(x110 & x20), n)
        beta2 = Fraction(len(x111 & x20), n)
        if beta1 >= b * c + Fraction(1, 54):
            beta = beta1
            if beta >= (b + c) / 2 - Fraction(5, 18):
                case_path = "2.2.1.1"
            elif wA * (a + d) >= (b - beta) * a:
                case_path = "2.2.1.2.1"
            else:
                case_path = "2.2.1.2.2"
        else:
            beta = beta2
            if beta >= (b + d) / 2 - Fraction(5, 18):
                case_path = "2.2.2.1"
            else:
                z = Fraction(0) if c >= Fraction(7, 10) * a else Fraction(1, 108)
                if wA * (a + c) >= ((b - beta) * a - z * (a + c)):
                    case_path = "2.2.2.2.1"
                else:
                    case_path = "2.2.2.2.2"

    trees = [t1, t2]
    edges = [e1_final, e2]
    if tree_swapped:
        trees.reverse()
        edges.reverse()
    outcome = _make_outcome(trees, edges, x, yset, f"lower2-{case_path}")

    lo = outcome.value
    total = len(outcome.X) + len(outcome.Y)
    if 27 * lo < 4 * n - 27 * s_n or 9 * total < 4 * n - 9 * s_n:
        raise ContractViolationError(
            f"two-tree case machine bound failed: min={lo}, sum={total}, "
            f"n={n}, slack={s_n}, case={case_path}"
        )
    trace = Lower2Trace(
        a=a,
        b=b,
        c=c,
        d=d,
        beta=beta,
        case_path=case_path,
        y=y,
        u=u,
        v=v,
        tree_swapped=tree_swapped,
        side1_swapped=side1_swapped,
        side2_swapped=side2_swapped,
        cd_swapped=cd_swapped,
    )
    return outcome, trace


def three_tree_separator(
    t1: LabeledTree,
    t2: LabeledTree,
    t3: LabeledTree,
    slack: int = DEFAULT_SLACK,
    phylo: bool | None = None,
) -> SeparationOutcome:
    """Three degree-<=3 trees: value >= 2n/27 - s (exact 2n/27 in phylo mode)."""
    if max_degree(t3) > 3:
        raise DegreeTooHighError("case machine requires max degree <= 3")
    if phylo is None:
        phylo = all(_is_phylo(t) for t in (t1, t2, t3))
    s_n = 0 if phylo else slack
    pair_outcome, _ = lower2_pair(t1, t2, slack=slack, phylo=phylo)
    x, yset = pair_outcome.X, pair_outcome.Y
    union = x | yset
    restricted, remap = restrict_labels(t3, union)
    e3, side3 = _jordan_argmax(restricted)
    # map the canonical side of the restricted split back to original labels
    back = {new: old for old, new in remap.items()}
    z = LabelSet.from_labels((back[lab] for lab in side3.labels()), t3.n)
    w = union - z
    A = x & z
    B = x & w
    C = yset & z
    D = yset & w
    if min(len(A), len(D)) >= min(len(B), len(C)):
        xf, yf = A, D
    else:
        xf, yf = B, C
    edges = [pair_outcome.cut.cuts[0].edge_id, pair_outcome.cut.cuts[1].edge_id, e3]
    outcome = _make_outcome([t1, t2, t3], edges, xf, yf, "three-tree-final")
    n = t1.n
    if 27 * outcome.value < 2 * n - 27 * s_n:
        raise ContractViolationError(
            f"three-tree bound failed: {outcome.value} < 2*{n}/27 - {s_n}"
        )
    return outcome
