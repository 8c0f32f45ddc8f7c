import random

import pytest

from simsep.trees import LabeledTree, TreeFamily, build_tree, make_family


def path_tree(order) -> LabeledTree:
    """Path whose vertex sequence carries the given label order."""
    order = list(order)
    n = len(order)
    edges = [(i, i + 1) for i in range(n - 1)]
    return build_tree(n, edges, {lab: i for i, lab in enumerate(order)}, r=2, n=n)


def random_path(n: int, seed: int) -> LabeledTree:
    order = list(range(1, n + 1))
    random.Random(seed).shuffle(order)
    return path_tree(order)


def quartet_tree() -> LabeledTree:
    """The 4-taxon tree 12|34: leaves 0..3, internal 4,5."""
    edges = [(4, 5), (4, 0), (4, 1), (5, 2), (5, 3)]
    return build_tree(6, edges, {1: 0, 2: 1, 3: 2, 4: 3}, r=3, n=4)


@pytest.fixture
def quartet():
    return quartet_tree()


def small_random_family(seed: int, max_n: int = 10, max_k: int = 3) -> TreeFamily:
    from simsep.generators import random_bounded_tree, random_phylo_tree

    rng = random.Random(seed)
    n = rng.randrange(4, max_n + 1)
    k = rng.randrange(2, max_k + 1)
    if rng.random() < 0.5:
        trees = [random_phylo_tree(n, seed * 100 + j) for j in range(k)]
    else:
        trees = [random_bounded_tree(n, 3, seed * 100 + j) for j in range(k)]
    return make_family(trees)
