"""Phylogenetic layer: unrooted-binary checks, quartet topologies via the
four-point rule, common-quartet counting, g-values, and the concentration
probe for randomized blowup families.

Quartet topology is computed from leaf-to-leaf distances (BFS once per
leaf); for four taxa a<b<c<d exactly one of d(a,b)+d(c,d), d(a,c)+d(b,d),
d(a,d)+d(b,c) is strictly smaller than the other two, and it names the
pairing.  common_quartets vectorizes this over all C(n,4) subsets with
numpy.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import NotBinaryError, UnresolvedQuartetError
from .solver import SolverBudget, best_separation
from .trees import LabeledTree, LabelSet, TreeFamily, make_family

PAIRINGS = ("AB|CD", "AC|BD", "AD|BC")


@dataclass(frozen=True)
class QuartetTopology:
    """Canonical form: taxa sorted ascending, pairing named so the smallest
    taxon sits in the first pair."""

    taxa: tuple[int, int, int, int]
    pairing: str  # one of PAIRINGS

    def pairs(self) -> tuple[frozenset, frozenset]:
        a, b, c, d = self.taxa
        if self.pairing == "AB|CD":
            return frozenset((a, b)), frozenset((c, d))
        if self.pairing == "AC|BD":
            return frozenset((a, c)), frozenset((b, d))
        return frozenset((a, d)), frozenset((b, c))


def check_unrooted_binary(tree: LabeledTree) -> tuple[bool, str]:
    """True iff every leaf is labeled, every label is on a leaf, and every
    internal vertex has degree exactly 3."""
    labeled = set(tree.labels.values())
    for v in range(tree.num_vertices):
        deg = tree.degree(v)
        if deg == 1:
            if v not in labeled:
                return False, f"leaf vertex {v} is unlabeled"
        elif deg == 2 or deg > 3:
            return False, f"internal vertex {v} has degree {deg} (want 3)"
        elif v in labeled:
            return False, f"internal vertex {v} carries a label"
    if tree.n < 3:
        return False, f"need at least 3 leaves, have {tree.n}"
    return True, "ok"


def _require_binary(tree: LabeledTree):
    ok, why = check_unrooted_binary(tree)
    if not ok:
        raise NotBinaryError(why)


def leaf_distance_matrix(tree: LabeledTree) -> np.ndarray:
    """D[i][j] = path length between the label-i and label-j leaves,
    indices 1..n (row/col 0 unused)."""
    n = tree.n
    D = np.zeros((n + 1, n + 1), dtype=np.int32)
    label_at = {v: lab for lab, v in tree.labels.items()}
    for lab, start in tree.labels.items():
        dist = [-1] * tree.num_vertices
        dist[start] = 0
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for w in tree.adjacency[x]:
                    if dist[w] < 0:
                        dist[w] = dist[x] + 1
                        nxt.append(w)
            frontier = nxt
        for w, other in label_at.items():
            D[lab][other] = dist[w]
    return D


def _pairing_from_sums(s0: int, s1: int, s2: int) -> str:
    m = min(s0, s1, s2)
    hits = [p for p, s in zip(PAIRINGS, (s0, s1, s2)) if s == m]
    if len(hits) != 1:
        raise UnresolvedQuartetError(f"tied four-point sums {s0},{s1},{s2}")
    return hits[0]


def quartet_topology(tree: LabeledTree, quad) -> QuartetTopology:
    """Four-point rule on one 4-subset of taxa."""
    _require_binary(tree)
    a, b, c, d = sorted(quad)
    D = {}
    for lab in (a, b, c, d):
        start = tree.labels[lab]
        dist = [-1] * tree.num_vertices
        dist[start] = 0
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for w in tree.adjacency[x]:
                    if dist[w] < 0:
                        dist[w] = dist[x] + 1
                        nxt.append(w)
            frontier = nxt
        D[lab] = dist
    s0 = D[a][tree.labels[b]] + D[c][tree.labels[d]]
    s1 = D[a][tree.labels[c]] + D[b][tree.labels[d]]
    s2 = D[a][tree.labels[d]] + D[b][tree.labels[c]]
    return QuartetTopology((a, b, c, d), _pairing_from_sums(s0, s1, s2))


def _all_pairing_codes(tree: LabeledTree, quads: np.ndarray) -> np.ndarray:
    """Vectorized pairing code (0/1/2 indexing PAIRINGS) per 4-subset row."""
    D = leaf_distance_matrix(tree)
    a, b, c, d = quads[:, 0], quads[:, 1], quads[:, 2], quads[:, 3]
    sums = np.stack([D[a, b] + D[c, d], D[a, c] + D[b, d], D[a, d] + D[b, c]])
    codes = np.argmin(sums, axis=0)
    ties = np.sort(sums, axis=0)
    if np.any(ties[0] == ties[1]):
        qi = int(np.nonzero(ties[0] == ties[1])[0][0])
        raise UnresolvedQuartetError(f"tied four-point sums for taxa {tuple(quads[qi])}")
    return codes


def common_quartets(family: TreeFamily, listing: bool = False):
    """Count (optionally list) the 4-subsets of taxa whose quartet topology
    agrees across every tree in the family."""
    for tree in family.trees:
        _require_binary(tree)
    n = family.n
    quads = np.array(list(combinations(range(1, n + 1), 4)), dtype=np.int64)
    codes = _all_pairing_codes(family.trees[0], quads)
    agree = np.ones(len(quads), dtype=bool)
    for tree in family.trees[1:]:
        agree &= _all_pairing_codes(tree, quads) == codes
    count = int(agree.sum())
    if not listing:
        return count
    listed = [
        QuartetTopology(tuple(int(x) for x in quads[i]), PAIRINGS[codes[i]])
        for i in np.nonzero(agree)[0]
    ]
    return count, listed


def has_common_quartet(family: TreeFamily) -> bool:
    return common_quartets(family) > 0


def g_value(family: TreeFamily, budget: SolverBudget | None = None):
    """Optimal simultaneous separation value for a phylogenetic family."""
    for tree in family.trees:
        _require_binary(tree)
    return best_separation(family, budget or SolverBudget())


def _leaf_spr(tree: LabeledTree, rng: random.Random) -> LabeledTree:
    """Prune a random leaf (with its cherry vertex) and regraft it onto a
    uniformly chosen edge of the remaining tree."""
    from .trees import build_tree

    lab = rng.randrange(1, tree.n + 1)
    leaf = tree.labels[lab]
    (mid,) = tree.adjacency[leaf]
    nbrs = [w for w in tree.adjacency[mid] if w != leaf]
    edges = [e for e in tree.edges if leaf not in e and mid not in e]
    edges.append((nbrs[0], nbrs[1]))
    i = rng.randrange(len(edges))
    u, v = edges[i]
    edges[i] = (u, mid)
    edges.append((mid, v))
    edges.append((mid, leaf))
    return build_tree(tree.num_vertices, edges, tree.labels, r=3, n=tree.n)


def search_quartet_free_family(
    n: int, k: int, seed: int, budget: int, restart_prob: float = 0.02
) -> TreeFamily | None:
    """Randomized local search (leaf prune-and-regraft, common-quartet count
    as cost) for k unrooted binary trees on [n] with no common quartet.

    Returns None when the move budget runs out.  Used by `simsep search-h3`
    to replicate the h(3) > 10 existence claim."""
    from . import generators

    rng = random.Random(seed)
    trees = [generators.random_phylo_tree(n, rng.randrange(1 << 30)) for _ in range(k)]
    cost = common_quartets(make_family(trees))
    for _ in range(budget):
        if cost == 0:
            return make_family(trees)
        j = rng.randrange(k)
        cand = trees[:j] + [_leaf_spr(trees[j], rng)] + trees[j + 1 :]
        c = common_quartets(make_family(cand))
        if c <= cost or rng.random() < restart_prob:
            trees, cost = cand, c
    return None


def concentration_probe(
    construction: str, n: int, seed: int, sample_size: int
) -> float:
    """Max over sampled cut vectors and orientations of the deviation
    | |X0| - n * prod(w(X_{i,b_i})) | for a randomly labeled blowup family."""
    from . import generators

    r = 3
    if construction == "H1-pair":
        hosts = [generators.gadget_h1(r)] * 2
    elif construction == "H1-triple":
        hosts = [generators.gadget_h1(r)] * 3
    elif construction == "H1/H2-pair":
        hosts = [generators.gadget_h1(r), generators.gadget_h2(r)]
    else:
        raise ValueError(f"unknown construction {construction!r}")
    trees = []
    for i, host in enumerate(hosts):
        skel = generators.blowup(generators.near_balanced_spec(host, n))
        trees.append(generators.random_labeling(skel, "non_backbone", seed * 7919 + i))
    family = make_family(trees)
    k = len(trees)

    from .trees import all_edge_cuts

    per_tree = [all_edge_cuts(t) for t in trees]
    rng = random.Random(seed)
    full = LabelSet.full(n)
    worst = 0.0
    for _ in range(sample_size):
        sides = []
        for cuts in per_tree:
            _, side0 = cuts[rng.randrange(len(cuts))]
            sides.append(side0)
        for b in range(1 << k):
            inter = full
            prod = 1.0
            for i in range(k):
                side = sides[i] if not (b >> i) & 1 else sides[i].complement()
                inter = inter & side
                prod *= len(side) / n
            worst = max(worst, abs(len(inter) - n * prod))
    return worst
