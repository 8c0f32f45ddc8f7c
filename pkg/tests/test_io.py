import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simsep import io_formats as IO
from simsep.errors import (
    DanglingTextError,
    DuplicateLeafError,
    NewickSyntaxError,
    NonIntegerLeafError,
    NotBinaryError,
    SchemaError,
)
from simsep.generators import caterpillar, random_bounded_tree, random_phylo_tree
from simsep.phylo import check_unrooted_binary, common_quartets
from simsep.trees import build_tree, make_family

from conftest import path_tree, quartet_tree


class TestParseNewick:
    def test_quartet(self):
        t = IO.parse_newick("((1,2),(3,4));")
        assert check_unrooted_binary(t)[0]
        assert t.n == 4
        # 12|34 shape: leaves 1,2 share a neighbor
        assert t.adjacency[t.labels[1]] == t.adjacency[t.labels[2]]

    def test_caterpillar5(self):
        t = IO.parse_newick("(1,(2,(3,(4,5))));")
        ok, why = check_unrooted_binary(t)
        assert ok, why
        assert t.num_vertices == caterpillar(5).num_vertices

    def test_branch_lengths_ignored(self):
        a = IO.parse_newick("((1:0.1,2:0.2):0.5,(3,4):1e-3);")
        b = IO.parse_newick("((1,2),(3,4));")
        assert IO.write_newick(a) == IO.write_newick(b)

    def test_syntax_error_position(self):
        with pytest.raises(NewickSyntaxError) as exc:
            IO.parse_newick("((1,2),3;")
        assert exc.value.position == 8

    def test_missing_semicolon(self):
        with pytest.raises(NewickSyntaxError):
            IO.parse_newick("((1,2),(3,4))")

    def test_dangling_text(self):
        with pytest.raises(DanglingTextError):
            IO.parse_newick("((1,2),(3,4)); extra")

    def test_non_integer_leaf(self):
        with pytest.raises(NonIntegerLeafError):
            IO.parse_newick("((a,2),(3,4));")

    def test_duplicate_leaf(self):
        with pytest.raises(DuplicateLeafError):
            IO.parse_newick("((1,1),(3,4));")

    def test_leaf_names_must_cover_range(self):
        with pytest.raises(NonIntegerLeafError):
            IO.parse_newick("((1,2),(3,7));")


class TestWriteNewick:
    def test_quartet_roundtrip(self, quartet):
        text = IO.write_newick(quartet)
        assert text == IO.write_newick(IO.parse_newick(text))

    def test_deterministic(self):
        t = random_phylo_tree(15, 3)
        assert IO.write_newick(t) == IO.write_newick(t)

    def test_rejects_nonbinary(self):
        with pytest.raises(NotBinaryError):
            IO.write_newick(path_tree(range(1, 5)))

    @pytest.mark.parametrize("seed", range(100))
    def test_roundtrip_is_isomorphic(self, seed):
        # same taxa, same quartet topologies everywhere == same unrooted tree
        t = random_phylo_tree(20, 1000 + seed)
        t2 = IO.parse_newick(IO.write_newick(t))
        assert t2.n == t.n
        assert common_quartets(make_family([t, t2])) == common_quartets(
            make_family([t, t])
        )
        assert IO.write_newick(t2) == IO.write_newick(t)


class TestFamilyJson:
    def test_minimal_roundtrip(self):
        fam = make_family([build_tree(2, [(0, 1)], {1: 0, 2: 1}, r=2, n=2)])
        assert IO.parse_family_json(IO.write_family_json(fam)) == fam

    def test_unlabeled_internals_roundtrip(self, quartet):
        fam = make_family([quartet, quartet])
        text = IO.write_family_json(fam)
        assert IO.parse_family_json(text) == fam
        assert IO.write_family_json(IO.parse_family_json(text)) == text

    def test_schema_error_names_tree(self):
        bad = '{"n": 2, "trees": [{"num_vertices": 2, "edges": [[0]], "labels": {"1": 0, "2": 1}}]}'
        with pytest.raises(SchemaError) as exc:
            IO.parse_family_json(bad)
        assert "tree 0" in str(exc.value)

    def test_rejects_extra_keys(self):
        with pytest.raises(SchemaError):
            IO.parse_family_json('{"n": 1, "trees": [], "x": 2}')

    def test_rejects_invalid_json(self):
        with pytest.raises(SchemaError):
            IO.parse_family_json("{nope")

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 10**6))
    def test_roundtrip_property(self, seed):
        rng = random.Random(seed)
        k, n = rng.randrange(1, 4), rng.randrange(2, 25)
        fam = make_family([random_bounded_tree(n, 3, seed + j) for j in range(k)])
        text = IO.write_family_json(fam)
        parsed = IO.parse_family_json(text)
        # the document stores no degree bound, so compare structure
        for a, b in zip(fam.trees, parsed.trees):
            assert (a.num_vertices, a.edges, a.labels, a.n) == (
                b.num_vertices, b.edges, b.labels, b.n,
            )
        assert IO.write_family_json(parsed) == text
        assert IO.parse_family_json(IO.write_family_json(parsed)) == parsed
