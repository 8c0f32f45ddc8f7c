"""Core tree representation and edge-cut primitives.

Vertices are dense 0-indexed integers; labels are 1-indexed (the label
universe is {1..n}).  Unlabeled vertices are first-class: only labeled
vertices contribute to label-set cardinalities.  All structures are
immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    CyclicError,
    DegreeExceededError,
    DisconnectedError,
    DuplicateLabelError,
    EmptyKeepError,
    InvalidAnchorError,
    InvalidCutError,
    InvalidEdgeError,
    LabelOutOfRangeError,
    WidthMismatchError,
)


@dataclass(frozen=True)
class LabelSet:
    """A subset of {1..n} as a fixed-width bitset (bit ``i-1`` = label ``i``).

    Width is fixed at construction; combining sets of different widths is an
    error, never silent truncation.
    """

    bits: int
    width: int

    def __post_init__(self):
        if self.bits >> self.width:
            raise WidthMismatchError(
                f"bits 0x{self.bits:x} exceed width {self.width}"
            )

    @classmethod
    def from_labels(cls, labels, width: int) -> "LabelSet":
        bits = 0
        for lab in labels:
            if not 1 <= lab <= width:
                raise LabelOutOfRangeError(f"label {lab} not in 1..{width}")
            bits |= 1 << (lab - 1)
        return cls(bits, width)

    @classmethod
    def empty(cls, width: int) -> "LabelSet":
        return cls(0, width)

    @classmethod
    def full(cls, width: int) -> "LabelSet":
        return cls((1 << width) - 1, width)

    def _check(self, other: "LabelSet") -> None:
        if self.width != other.width:
            raise WidthMismatchError(
                f"widths differ: {self.width} vs {other.width}"
            )

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, label: int) -> bool:
        return 1 <= label <= self.width and (self.bits >> (label - 1)) & 1 == 1

    def __and__(self, other: "LabelSet") -> "LabelSet":
        self._check(other)
        return LabelSet(self.bits & other.bits, self.width)

    def __or__(self, other: "LabelSet") -> "LabelSet":
        self._check(other)
        return LabelSet(self.bits | other.bits, self.width)

    def __sub__(self, other: "LabelSet") -> "LabelSet":
        self._check(other)
        return LabelSet(self.bits & ~other.bits, self.width)

    def complement(self) -> "LabelSet":
        return LabelSet(~self.bits & ((1 << self.width) - 1), self.width)

    def isdisjoint(self, other: "LabelSet") -> bool:
        self._check(other)
        return self.bits & other.bits == 0

    def issubset(self, other: "LabelSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def labels(self) -> list[int]:
        return [i + 1 for i in range(self.width) if (self.bits >> i) & 1]

    def __repr__(self) -> str:
        return f"LabelSet({set(self.labels()) or '{}'}, width={self.width})"


@dataclass(frozen=True)
class LabeledTree:
    """A finite tree with a degree bound and a partial injective labeling.

    ``labels`` maps label (1..n) -> vertex.  ``backbone`` is optional
    metadata recording which vertices came from a gadget skeleton and must
    stay unlabeled (used by blowup constructions and ``non_backbone``
    labeling slots).
    """

    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    labels: dict[int, int]
    n: int
    degree_bound_r: int
    backbone: frozenset[int] = frozenset()
    _adjacency: tuple[tuple[int, ...], ...] = field(
        default=(), repr=False, compare=False
    )

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adjacency

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def vertex_label(self, v: int) -> int | None:
        return self._label_of.get(v)

    @property
    def _label_of(self) -> dict[int, int]:
        # lazily built inverse of `labels`; cached on the instance
        inv = self.__dict__.get("_label_of_cache")
        if inv is None:
            inv = {v: lab for lab, v in self.labels.items()}
            object.__setattr__(self, "_label_of_cache", inv)
        return inv

    def leaves(self) -> list[int]:
        return [v for v in range(self.num_vertices) if self.degree(v) == 1]


def _build_adjacency(num_vertices, edges):
    adj = [[] for _ in range(num_vertices)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return tuple(tuple(a) for a in adj)


def build_tree(num_vertices, edges, labels, r, n, backbone=frozenset()) -> LabeledTree:
    """Validate and construct a LabeledTree.

    Raises Disconnected/Cyclic/DuplicateLabel/LabelOutOfRange/DegreeExceeded
    errors naming the violated invariant.
    """
    if r < 2:
        raise DegreeExceededError(f"degree bound r={r} must be >= 2")
    if num_vertices < 1:
        raise DisconnectedError("a tree needs at least one vertex")
    edges = tuple((int(u), int(v)) for u, v in edges)
    for u, v in edges:
        if not (0 <= u < num_vertices and 0 <= v < num_vertices):
            raise InvalidEdgeError(f"edge ({u},{v}) out of vertex range")
    if len(edges) != num_vertices - 1:
        if len(edges) >= num_vertices:
            raise CyclicError(
                f"{len(edges)} edges on {num_vertices} vertices implies a cycle"
            )
        raise DisconnectedError(
            f"{len(edges)} edges cannot connect {num_vertices} vertices"
        )
    adjacency = _build_adjacency(num_vertices, edges)
    # connectivity (with the right edge count this also excludes cycles)
    seen = [False] * num_vertices
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        u = stack.pop()
        for w in adjacency[u]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    if count != num_vertices:
        raise DisconnectedError(
            f"only {count} of {num_vertices} vertices reachable from 0"
        )
    labels = {int(lab): int(v) for lab, v in labels.items()}
    used_vertices = set()
    for lab, v in labels.items():
        if not 1 <= lab <= n:
            raise LabelOutOfRangeError(f"label {lab} not in 1..{n}")
        if not 0 <= v < num_vertices:
            raise LabelOutOfRangeError(f"label {lab} maps to bad vertex {v}")
        if v in used_vertices:
            raise DuplicateLabelError(f"vertex {v} carries two labels")
        used_vertices.add(v)
    if len(labels) != n:
        missing = sorted(set(range(1, n + 1)) - set(labels))[:5]
        raise LabelOutOfRangeError(f"labels missing: {missing} (n={n})")
    for v in range(num_vertices):
        if len(adjacency[v]) > r:
            raise DegreeExceededError(
                f"vertex {v} has degree {len(adjacency[v])} > r={r}"
            )
    return LabeledTree(
        num_vertices=num_vertices,
        edges=edges,
        labels=labels,
        n=n,
        degree_bound_r=r,
        backbone=frozenset(backbone),
        _adjacency=adjacency,
    )


def max_degree(tree: LabeledTree) -> int:
    return max(tree.degree(v) for v in range(tree.num_vertices))


def side_labels(tree: LabeledTree, edge_id: int, anchor: int) -> LabelSet:
    """Labels in the component containing ``anchor`` after deleting the edge."""
    if not 0 <= edge_id < tree.num_edges:
        raise InvalidEdgeError(f"edge_id {edge_id} out of range")
    u, v = tree.edges[edge_id]
    if anchor not in (u, v):
        raise InvalidAnchorError(f"vertex {anchor} is not an endpoint of edge {edge_id}")
    other = v if anchor == u else u
    bits = 0
    label_of = tree._label_of
    stack = [anchor]
    seen = {anchor, other}
    while stack:
        w = stack.pop()
        lab = label_of.get(w)
        if lab is not None:
            bits |= 1 << (lab - 1)
        for x in tree.adjacency[w]:
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return LabelSet(bits, tree.n)


def _root_orientation(tree: LabeledTree, root: int = 0):
    """Parent array and post-order vertex listing under the given root."""
    parent = [-1] * tree.num_vertices
    order = []
    stack = [root]
    visited = [False] * tree.num_vertices
    visited[root] = True
    while stack:
        u = stack.pop()
        order.append(u)
        for w in tree.adjacency[u]:
            if not visited[w]:
                visited[w] = True
                parent[w] = u
                stack.append(w)
    order.reverse()
    return parent, order


def all_edge_cuts(tree: LabeledTree) -> list[tuple[int, LabelSet]]:
    """One (edge_id, canonical-side LabelSet) per edge.

    Canonical side = component of the child vertex under rooting at vertex 0;
    computed in a single bottom-up pass of bitset unions.
    """
    parent, order = _root_orientation(tree, 0)
    label_of = tree._label_of
    subtree = [0] * tree.num_vertices
    for u in order:
        bits = subtree[u]
        lab = label_of.get(u)
        if lab is not None:
            bits |= 1 << (lab - 1)
        subtree[u] = bits
        p = parent[u]
        if p >= 0:
            subtree[p] |= bits
    out = []
    for eid, (u, v) in enumerate(tree.edges):
        child = v if parent[v] == u else u
        out.append((eid, LabelSet(subtree[child], tree.n)))
    return out


def canonical_anchors(tree: LabeledTree) -> list[int]:
    """Per edge, the endpoint on the canonical side (child under root 0)."""
    parent, _ = _root_orientation(tree, 0)
    return [v if parent[v] == u else u for u, v in tree.edges]


def restrict_labels(tree: LabeledTree, keep: LabelSet) -> tuple[LabeledTree, dict[int, int]]:
    """Drop labels outside ``keep`` and re-index the rest 1..|keep| in
    ascending original order.  Topology (and edge ids) are unchanged.

    Returns the restricted tree and the old-label -> new-label map.
    """
    if keep.width != tree.n:
        raise WidthMismatchError(f"keep width {keep.width} != n {tree.n}")
    kept = keep.labels()
    if not kept:
        raise EmptyKeepError("keep set is empty")
    remap = {old: i + 1 for i, old in enumerate(kept)}
    new_labels = {remap[old]: tree.labels[old] for old in kept}
    restricted = LabeledTree(
        num_vertices=tree.num_vertices,
        edges=tree.edges,
        labels=new_labels,
        n=len(kept),
        degree_bound_r=tree.degree_bound_r,
        backbone=tree.backbone,
        _adjacency=tree.adjacency,
    )
    return restricted, remap


@dataclass(frozen=True)
class TreeFamily:
    """k trees sharing the same label universe {1..n}."""

    trees: tuple[LabeledTree, ...]
    n: int

    @property
    def k(self) -> int:
        return len(self.trees)


def make_family(trees) -> TreeFamily:
    trees = tuple(trees)
    if not trees:
        raise InvalidCutError("a family needs at least one tree")
    n = trees[0].n
    for i, t in enumerate(trees):
        if t.n != n:
            raise WidthMismatchError(f"tree {i} has n={t.n}, expected {n}")
    return TreeFamily(trees=trees, n=n)


@dataclass(frozen=True)
class EdgeCut:
    """One edge of one tree; ``anchor`` designates side 0 of the cut."""

    tree_index: int
    edge_id: int
    anchor: int


@dataclass(frozen=True)
class CutVector:
    cuts: tuple[EdgeCut, ...]

    def __post_init__(self):
        for j, cut in enumerate(self.cuts):
            if cut.tree_index != j:
                raise InvalidCutError(
                    f"cut {j} has tree_index {cut.tree_index}"
                )


@dataclass(frozen=True)
class SeparationOutcome:
    cut: CutVector
    orientation_b: tuple[int, ...]
    X: LabelSet
    Y: LabelSet
    value: int
    provenance: str


def validate_cut(family: TreeFamily, cut: CutVector) -> None:
    if len(cut.cuts) != family.k:
        raise InvalidCutError(f"cut vector length {len(cut.cuts)} != k={family.k}")
    for j, ec in enumerate(cut.cuts):
        tree = family.trees[j]
        if not 0 <= ec.edge_id < tree.num_edges:
            raise InvalidEdgeError(f"tree {j}: edge_id {ec.edge_id} out of range")
        u, v = tree.edges[ec.edge_id]
        if ec.anchor not in (u, v):
            raise InvalidAnchorError(f"tree {j}: anchor {ec.anchor} not on edge")


def verify_outcome(family: TreeFamily, outcome: SeparationOutcome) -> bool:
    """Independent witness re-verification via side_labels.

    Checks that X and Y are disjoint, that every tree's cut puts X on one
    side and Y on the other, and that value = min(|X|,|Y|).
    """
    if not outcome.X.isdisjoint(outcome.Y):
        return False
    if outcome.value != min(len(outcome.X), len(outcome.Y)):
        return False
    validate_cut(family, outcome.cut)
    for j, ec in enumerate(outcome.cut.cuts):
        tree = family.trees[j]
        side0 = side_labels(tree, ec.edge_id, ec.anchor)
        side1 = side0.complement()
        if outcome.X.issubset(side0) and outcome.Y.issubset(side1):
            continue
        if outcome.X.issubset(side1) and outcome.Y.issubset(side0):
            continue
        return False
    return True
