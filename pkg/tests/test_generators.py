import math
import random

import pytest

from simsep import generators as G
from simsep.errors import (
    ConstructionFailedError,
    SpecMismatchError,
    TooSmallError,
    TooSmallNError,
)
from simsep.phylo import check_unrooted_binary, has_common_quartet
from simsep.solver import SolverBudget, best_separation
from simsep.trees import make_family, max_degree


class TestGadgets:
    @pytest.mark.parametrize("r", [2, 3, 4, 5])
    def test_h1_shape(self, r):
        h = G.gadget_h1(r)
        assert h.num_vertices == 3 * r + 1
        assert len(h.leaves()) == 2 * r
        assert max_degree(h) == max(r, 3)
        assert len(h.backbone) == r + 1

    @pytest.mark.parametrize("r", [2, 3, 4, 5])
    def test_h2_shape(self, r):
        h = G.gadget_h2(r)
        assert h.num_vertices == 3 * r - 1
        assert len(h.leaves()) == 2 * (r - 1)
        assert max_degree(h) == max(r, 3) if r > 2 else 3
        assert len(h.backbone) == r + 1


class TestBlowup:
    def test_path_mode_vertex_count(self):
        # h - l + n vertices: host internal vertices survive, leaves become paths
        h = G.gadget_h1(3)
        t = G.blowup(G.balanced_spec(h, 12))
        assert t.num_vertices == (3 * 3 + 1) - 6 + 12
        assert max_degree(t) == 3

    def test_caterpillar_mode_binary(self):
        h = G.blowup_host_phylo_h1()
        t = G.blowup(G.balanced_spec(h, 12, "caterpillar"))
        assert len(t.leaves()) == 12
        labeled = G.random_labeling(t, "leaves", 0)
        ok, why = check_unrooted_binary(labeled)
        assert ok, why

    def test_divisibility_error(self):
        with pytest.raises(SpecMismatchError):
            G.balanced_spec(G.gadget_h1(3), 8)  # 6 does not divide 8

    def test_near_balanced_allows_any_n(self):
        spec = G.near_balanced_spec(G.gadget_h1(3), 2000)
        assert sum(spec.leaf_path_lengths.values()) == 2000
        t = G.blowup(spec)
        assert t.num_vertices == 4 + 2000

    def test_bad_lengths(self):
        h = G.gadget_h1(3)
        with pytest.raises(SpecMismatchError):
            G.blowup(G.BlowupSpec(h, {0: 5}, "path"))


class TestCaterpillar:
    def test_shape(self):
        t = G.caterpillar(6)
        assert t.num_vertices == 2 * 6 - 2
        assert len(t.leaves()) == 6

    def test_too_small(self):
        with pytest.raises(TooSmallError):
            G.caterpillar(1)

    def test_from_order(self):
        t = G.caterpillar_from_order([3, 1, 4, 2, 5])
        ok, why = check_unrooted_binary(t)
        assert ok, why


class TestRandom:
    def test_labeling_is_seeded_bijection(self):
        skel = G.blowup(G.balanced_spec(G.gadget_h1(3), 12))
        a = G.random_labeling(skel, "non_backbone", 5)
        b = G.random_labeling(skel, "non_backbone", 5)
        c = G.random_labeling(skel, "non_backbone", 6)
        assert a.labels == b.labels
        assert a.labels != c.labels
        assert sorted(a.labels) == list(range(1, 13))
        assert len(set(a.labels.values())) == 12
        assert not set(a.labels.values()) & set(skel.backbone)

    def test_bounded_tree_r2_is_path(self):
        t = G.random_bounded_tree(10, 2, 3)
        assert max_degree(t) == 2

    @pytest.mark.parametrize("seed", range(20))
    def test_bounded_tree_degree(self, seed):
        n = random.Random(seed).randrange(3, 80)
        assert max_degree(G.random_bounded_tree(n, 3, seed)) <= 3

    @pytest.mark.parametrize("seed", range(20))
    def test_phylo_tree_binary(self, seed):
        n = random.Random(seed).randrange(3, 80)
        ok, why = check_unrooted_binary(G.random_phylo_tree(n, seed))
        assert ok, why


class TestStretch:
    def test_single_edge_base(self):
        # q=2, n=5: d=2, labels run 1,2 then 3,4,5 along a 5-vertex path
        from simsep.trees import build_tree

        base = make_family([build_tree(2, [(0, 1)], {1: 0, 2: 1}, r=2, n=2)])
        out = G.stretch_family(base, 5)
        t = out.trees[0]
        assert t.num_vertices == 5
        assert max_degree(t) == 2
        assert sorted(t.labels) == [1, 2, 3, 4, 5]

    def test_too_small_n(self):
        from simsep.trees import build_tree

        base = make_family([build_tree(2, [(0, 1)], {1: 0, 2: 1}, r=2, n=2)])
        with pytest.raises(TooSmallNError):
            G.stretch_family(base, 4)

    @pytest.mark.parametrize("seed", range(25))
    def test_label_count_and_degree(self, seed):
        rng = random.Random(seed)
        q = rng.randrange(3, 7)
        n = rng.randrange(q * q + 1, q * q + 30)
        # leave headroom at the root-label vertex: bound r=4 over degree-3 bases
        base = make_family([G.random_bounded_tree(q, 3, seed * 7 + j) for j in range(2)])
        base = make_family(
            [
                type(t)(
                    num_vertices=t.num_vertices,
                    edges=t.edges,
                    labels=t.labels,
                    n=t.n,
                    degree_bound_r=4,
                    backbone=t.backbone,
                    _adjacency=t.adjacency,
                )
                for t in base.trees
            ]
        )
        out = G.stretch_family(base, n)
        for t in out.trees:
            assert t.n == n
            assert sorted(t.labels) == list(range(1, n + 1))
            assert max_degree(t) <= 4

    def test_solver_inequality(self):
        # f(stretched, n) <= d * f(base, q) + 2d
        for seed in range(6):
            base = make_family([G.random_bounded_tree(4, 3, 500 + seed * 2 + j) for j in range(2)])
            fq = best_separation(base, SolverBudget()).value
            for n in (17, 21, 25):
                d = n // 4
                stretched = G.stretch_family(base, n)
                fn = best_separation(stretched, SolverBudget()).value
                assert fn <= d * fq + 2 * d


class TestHstar:
    @pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
    def test_no_common_quartet(self, k):
        fam = G.hstar_family(k)
        assert len(fam.trees) == k
        assert fam.n == 2**k + 1
        assert not has_common_quartet(fam)

    def test_search_fallback(self):
        # force the search path (no fixture consulted) at the easy size
        orders = G._search_quartet_free(2, 5, seed=1, budget=50_000)
        assert orders is not None
        assert G.order_family_common_quartets(orders) == 0

    def test_out_of_range(self):
        with pytest.raises(SpecMismatchError):
            G.hstar_family(7)

    def test_order_checker_agrees_with_tree_checker(self):
        import itertools

        rng = random.Random(0)
        for _ in range(10):
            orders = [list(range(1, 8)) for _ in range(2)]
            for o in orders:
                rng.shuffle(o)
            trees = make_family([G.caterpillar_from_order(o) for o in orders])
            from simsep.phylo import common_quartets

            assert common_quartets(trees) == G.order_family_common_quartets(orders)


class TestUpperBoundFamily:
    def test_even_k_uses_h2(self):
        fam = G.upper_bound_family(3, 2, 12, 0)
        assert fam.n == 12
        assert len(fam.trees) == 2
        # H1's blowup has 6 pendant paths, H2's only 4
        assert len(fam.trees[0].leaves()) == 6
        assert len(fam.trees[1].leaves()) == 4

    def test_k_cap(self):
        with pytest.raises(SpecMismatchError):
            G.upper_bound_family(3, 5, 60, 0)
