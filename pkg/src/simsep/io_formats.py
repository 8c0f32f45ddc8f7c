"""Serialization: a Newick subset for phylogenetic trees and a JSON
document format for general labeled-tree families.

Newick subset: unquoted integer leaf names, optional internal names and
branch lengths (parsed and discarded — the trees here are topological).
A degree-2 root in the input is suppressed on load so rooted and unrooted
encodings of the same tree are indistinguishable downstream.

FamilyDocument JSON schema::

    {"n": int,
     "trees": [{"num_vertices": int,
                "edges": [[u, v], ...],          # 0-based vertex ids
                "labels": {"1": vertex, ...}},   # 1-based label keys
               ...]}

The serializers are deterministic (sorted keys, sorted label keys, edges in
stored order) so equal inputs produce byte-identical output.
"""

from __future__ import annotations

import json

from .errors import (
    DanglingTextError,
    DuplicateLeafError,
    NewickSyntaxError,
    NonIntegerLeafError,
    NotBinaryError,
    SchemaError,
    SimsepError,
)
from .trees import LabeledTree, TreeFamily, build_tree, make_family


# --- Newick ------------------------------------------------------------------

def parse_newick(text: str) -> LabeledTree:
    """Parse one semicolon-terminated Newick string into a leaf-labeled tree."""
    s = text.strip()
    semi = s.find(";")
    if semi < 0:
        raise NewickSyntaxError("missing terminating ';'", len(s))
    if s[semi + 1 :].strip():
        raise DanglingTextError(f"trailing text after ';': {s[semi + 1:].strip()[:20]!r}")
    s = s[:semi]

    edges: list[tuple[int, int]] = []
    leaf_label: dict[int, int] = {}
    nxt = [0]

    def new_vertex() -> int:
        v = nxt[0]
        nxt[0] += 1
        return v

    pos = [0]

    def peek():
        return s[pos[0]] if pos[0] < len(s) else ""

    def skip_ws():
        while pos[0] < len(s) and s[pos[0]].isspace():
            pos[0] += 1

    def parse_name_and_length(vertex: int, is_leaf: bool):
        skip_ws()
        start = pos[0]
        while pos[0] < len(s) and s[pos[0]] not in "(),:;":
            pos[0] += 1
        name = s[start : pos[0]].strip()
        if is_leaf:
            if not name or not name.lstrip("-").isdigit() or int(name) < 1:
                raise NonIntegerLeafError(
                    f"leaf name {name!r} at position {start} is not a positive integer"
                )
            lab = int(name)
            if lab in leaf_label:
                raise DuplicateLeafError(f"leaf label {lab} appears twice")
            leaf_label[lab] = vertex
        skip_ws()
        if peek() == ":":
            pos[0] += 1
            start = pos[0]
            while pos[0] < len(s) and s[pos[0]] not in "(),;":
                pos[0] += 1
            try:
                float(s[start : pos[0]])
            except ValueError:
                raise NewickSyntaxError("malformed branch length", start) from None

    def parse_subtree() -> int:
        skip_ws()
        v = new_vertex()
        if peek() == "(":
            pos[0] += 1
            children = [parse_subtree()]
            skip_ws()
            while peek() == ",":
                pos[0] += 1
                children.append(parse_subtree())
                skip_ws()
            if peek() != ")":
                raise NewickSyntaxError("expected ')' or ','", pos[0])
            pos[0] += 1
            for c in children:
                edges.append((v, c))
            parse_name_and_length(v, is_leaf=False)
        else:
            parse_name_and_length(v, is_leaf=True)
        return v

    root = parse_subtree()
    skip_ws()
    if pos[0] != len(s):
        raise NewickSyntaxError(f"unexpected {s[pos[0]]!r}", pos[0])
    if not leaf_label:
        raise NewickSyntaxError("no leaves", 0)

    num = nxt[0]
    # suppress a degree-2 root
    deg = [0] * num
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    if deg[root] == 2 and num > 2:
        nbrs = [v if u == root else u for u, v in edges if root in (u, v)]
        edges = [e for e in edges if root not in e]
        edges.append((nbrs[0], nbrs[1]))
        remap = {v: (v if v < root else v - 1) for v in range(num) if v != root}
        edges = [(remap[u], remap[v]) for u, v in edges]
        leaf_label = {lab: remap[v] for lab, v in leaf_label.items()}
        num -= 1

    n = len(leaf_label)
    if set(leaf_label) != set(range(1, n + 1)):
        raise NonIntegerLeafError(
            f"leaf names must be exactly 1..{n}, got {sorted(leaf_label)}"
        )
    deg = [0] * num
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return build_tree(num, edges, leaf_label, r=max(3, max(deg)), n=n)


def write_newick(tree: LabeledTree) -> str:
    """Deterministic Newick for an unrooted binary tree: rooted at the
    internal vertex next to leaf 1, children ordered by smallest descendant
    leaf label."""
    from .phylo import check_unrooted_binary

    ok, why = check_unrooted_binary(tree)
    if not ok:
        raise NotBinaryError(why)
    label_at = {v: lab for lab, v in tree.labels.items()}
    leaf1 = tree.labels[1]
    (root,) = tree.adjacency[leaf1]

    def render(v: int, parent: int) -> tuple[int, str]:
        if tree.degree(v) == 1:
            return label_at[v], str(label_at[v])
        parts = sorted(
            render(w, v) for w in tree.adjacency[v] if w != parent
        )
        return parts[0][0], "(" + ",".join(p[1] for p in parts) + ")"

    parts = sorted(render(w, root) for w in tree.adjacency[root])
    return "(" + ",".join(p[1] for p in parts) + ");"


# --- FamilyDocument JSON -----------------------------------------------------

def _schema_error(i: int, msg: str) -> SchemaError:
    return SchemaError(f"tree {i}: {msg}")


def parse_family_json(text: str) -> TreeFamily:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or set(doc) != {"n", "trees"}:
        raise SchemaError("document must have exactly the keys 'n' and 'trees'")
    n, items = doc["n"], doc["trees"]
    if not isinstance(n, int) or not isinstance(items, list) or not items:
        raise SchemaError("'n' must be an integer and 'trees' a nonempty list")
    trees = []
    for i, item in enumerate(items):
        if not isinstance(item, dict) or set(item) != {"num_vertices", "edges", "labels"}:
            raise _schema_error(i, "needs exactly num_vertices/edges/labels")
        nv = item["num_vertices"]
        if not isinstance(nv, int):
            raise _schema_error(i, "num_vertices must be an integer")
        edges = []
        for e in item["edges"]:
            if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
                raise _schema_error(i, f"edge {e!r} is not a pair of integers")
            edges.append((e[0], e[1]))
        labels = {}
        for key, v in item["labels"].items():
            if not key.isdigit() or not isinstance(v, int):
                raise _schema_error(i, f"label entry {key!r}: {v!r} malformed")
            labels[int(key)] = v
        deg = [0] * max(nv, 1)
        for u, v in edges:
            if 0 <= u < nv and 0 <= v < nv:
                deg[u] += 1
                deg[v] += 1
        try:
            # the document carries no explicit bound; use the realized one
            trees.append(build_tree(nv, edges, labels, r=max(2, max(deg)), n=n))
        except SimsepError as exc:
            raise _schema_error(i, str(exc)) from exc
    return make_family(trees)


def write_family_json(family: TreeFamily) -> str:
    doc = {
        "n": family.n,
        "trees": [
            {
                "num_vertices": t.num_vertices,
                "edges": [[u, v] for u, v in t.edges],
                "labels": {str(lab): t.labels[lab] for lab in sorted(t.labels)},
            }
            for t in family.trees
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
