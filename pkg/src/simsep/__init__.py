"""Simultaneous edge separators in families of bounded-degree trees.

Library + CLI for computing optimal simultaneous edge separations (one cut
per tree, two label sets split the same way everywhere), the constructive
separator algorithms that certify the tight lower bounds, the extremal
upper-bound instance generators, and a phylogenetic quartet layer.
"""

from .trees import (
    CutVector,
    EdgeCut,
    LabeledTree,
    LabelSet,
    SeparationOutcome,
    TreeFamily,
    all_edge_cuts,
    build_tree,
    make_family,
    max_degree,
    restrict_labels,
    side_labels,
    verify_outcome,
)
from .solver import (
    KERNEL_NAME,
    SolverBudget,
    best_separation,
    best_separation_naive,
    separation_value,
)

__all__ = [
    "CutVector",
    "EdgeCut",
    "KERNEL_NAME",
    "LabelSet",
    "LabeledTree",
    "SeparationOutcome",
    "SolverBudget",
    "TreeFamily",
    "all_edge_cuts",
    "best_separation",
    "best_separation_naive",
    "build_tree",
    "make_family",
    "max_degree",
    "restrict_labels",
    "separation_value",
    "side_labels",
    "verify_outcome",
]

__version__ = "0.1.0"
