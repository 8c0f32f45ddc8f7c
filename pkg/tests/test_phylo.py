import math
import random
from itertools import combinations

import pytest

from simsep import phylo as P
from simsep.errors import NotBinaryError
from simsep.generators import (
    caterpillar_from_order,
    hstar_family,
    random_phylo_tree,
)
from simsep.solver import SolverBudget, best_separation, best_separation_naive
from simsep.trees import build_tree, make_family

from conftest import path_tree, quartet_tree


class TestBinaryCheck:
    def test_accepts_quartet(self, quartet):
        assert P.check_unrooted_binary(quartet) == (True, "ok")

    def test_rejects_path(self):
        ok, why = P.check_unrooted_binary(path_tree(range(1, 5)))
        assert not ok
        assert "degree" in why or "label" in why

    def test_rejects_unlabeled_leaf(self):
        t = build_tree(6, [(4, 5), (4, 0), (4, 1), (5, 2), (5, 3)],
                       {1: 0, 2: 1, 3: 2}, r=3, n=3)
        ok, why = P.check_unrooted_binary(t)
        assert not ok and "unlabeled" in why

    @pytest.mark.parametrize("seed", range(10))
    def test_accepts_random_phylo(self, seed):
        n = random.Random(seed).randrange(3, 60)
        assert P.check_unrooted_binary(random_phylo_tree(n, seed))[0]


class TestQuartetTopology:
    def test_quartet_tree(self, quartet):
        q = P.quartet_topology(quartet, (1, 2, 3, 4))
        assert q.taxa == (1, 2, 3, 4)
        assert q.pairing == "AB|CD"
        assert q.pairs() == (frozenset({1, 2}), frozenset({3, 4}))

    def test_caterpillar_orders(self):
        t = caterpillar_from_order([1, 3, 2, 5, 4])
        assert P.quartet_topology(t, (1, 3, 2, 5)).pairing == "AC|BD"  # 13|25

    def test_canonicalization_sorts_taxa(self, quartet):
        assert P.quartet_topology(quartet, (4, 1, 3, 2)) == P.quartet_topology(
            quartet, (1, 2, 3, 4)
        )

    def test_not_binary(self):
        with pytest.raises(NotBinaryError):
            P.quartet_topology(path_tree(range(1, 6)), (1, 2, 3, 4))

    @pytest.mark.parametrize("seed", range(15))
    def test_never_unresolved_on_binary(self, seed):
        n = random.Random(seed).randrange(4, 9)
        t = random_phylo_tree(n, seed)
        for quad in combinations(range(1, n + 1), 4):
            P.quartet_topology(t, quad)  # must not raise

    @pytest.mark.parametrize("seed", range(10))
    def test_isomorphism_invariance(self, seed):
        # re-embed with permuted vertex ids; topology per quartet unchanged
        t = random_phylo_tree(8, seed)
        perm = list(range(t.num_vertices))
        random.Random(seed + 1).shuffle(perm)
        t2 = build_tree(
            t.num_vertices,
            [(perm[u], perm[v]) for u, v in t.edges],
            {lab: perm[v] for lab, v in t.labels.items()},
            r=3,
            n=t.n,
        )
        for quad in combinations(range(1, 9), 4):
            assert P.quartet_topology(t, quad) == P.quartet_topology(t2, quad)


class TestCommonQuartets:
    def test_identical_trees(self, quartet):
        fam = make_family([quartet, quartet, quartet])
        assert P.common_quartets(fam) == 1

    def test_identical_random(self):
        t = random_phylo_tree(9, 4)
        assert P.common_quartets(make_family([t, t])) == math.comb(9, 4)

    def test_hstar2_is_quartet_free(self):
        assert P.common_quartets(hstar_family(2)) == 0

    def test_listing(self):
        t = random_phylo_tree(6, 1)
        count, items = P.common_quartets(make_family([t, t]), listing=True)
        assert count == len(items) == math.comb(6, 4)
        assert all(q.taxa == tuple(sorted(q.taxa)) for q in items)

    def test_fixture_random_pair_n10(self):
        # frozen exhaustive count over all 210 subsets
        fam = make_family([random_phylo_tree(10, 1), random_phylo_tree(10, 2)])
        assert P.common_quartets(fam) == 64

    @pytest.mark.parametrize("seed", range(20))
    def test_equivalence_with_size2_separation(self, seed):
        # a common quartet exists iff some simultaneous cut achieves value 2
        rng = random.Random(seed)
        n, k = rng.randrange(4, 11), rng.randrange(2, 4)
        fam = make_family([random_phylo_tree(n, seed * 50 + j) for j in range(k)])
        assert P.has_common_quartet(fam) == (best_separation(fam, SolverBudget()).value >= 2)


class TestGValue:
    def test_identical_equals_jordan(self):
        from simsep.constructive import jordan_edge

        t = random_phylo_tree(12, 9)
        assert P.g_value(make_family([t, t])).value == jordan_edge(t).value

    def test_three_quartets(self, quartet):
        assert P.g_value(make_family([quartet] * 3)).value == 2

    def test_matches_oracle(self):
        fam = make_family([random_phylo_tree(12, 3), random_phylo_tree(12, 4)])
        assert P.g_value(fam) == best_separation_naive(fam)

    def test_rejects_nonbinary(self):
        with pytest.raises(NotBinaryError):
            P.g_value(make_family([path_tree(range(1, 5))] * 2))


class TestSearch:
    def test_finds_h3_witness_on_10_taxa(self):
        fam = P.search_quartet_free_family(10, 3, seed=0, budget=20_000)
        assert fam is not None
        assert not P.has_common_quartet(fam)

    def test_budget_exhaustion_returns_none(self):
        assert P.search_quartet_free_family(10, 3, seed=0, budget=1) is None


def test_concentration_probe_small():
    dev = P.concentration_probe("H1-pair", 600, 7, 50)
    assert dev <= 5 * 600 ** (2 / 3)
    dev3 = P.concentration_probe("H1-triple", 600, 7, 20)
    assert dev3 <= 5 * 600 ** (2 / 3)
    dev12 = P.concentration_probe("H1/H2-pair", 600, 7, 20)
    assert dev12 <= 5 * 600 ** (2 / 3)
