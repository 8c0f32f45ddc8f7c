import json

import pytest

from simsep.cli import main
from simsep.io_formats import write_family_json, write_newick
from simsep.trees import make_family

from conftest import path_tree, quartet_tree


@pytest.fixture
def quartet_triple_nwk(tmp_path):
    text = "".join(write_newick(quartet_tree()) + "\n" for _ in range(3))
    p = tmp_path / "triple.nwk"
    p.write_text(text)
    return str(p)


@pytest.fixture
def path_pair_json(tmp_path):
    fam = make_family([path_tree(range(1, 7))] * 2)
    p = tmp_path / "pair.json"
    p.write_text(write_family_json(fam))
    return str(p)


def test_solve_json_output(path_pair_json, capsys):
    assert main(["solve", "--input", path_pair_json, "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["value"] == 3
    assert doc["X"] == [1, 2, 3]


def test_solve_thread_invariance(path_pair_json, capsys):
    outs = set()
    for threads in ("1", "4"):
        assert main(["solve", "--input", path_pair_json, "--json", "--threads", threads]) == 0
        outs.add(capsys.readouterr().out)
    assert len(outs) == 1


def test_solve_budget_exit_code(path_pair_json, capsys):
    assert main(["solve", "--input", path_pair_json, "--budget", "3"]) == 4


def test_separate_three_fixture(quartet_triple_nwk, capsys):
    assert main(["separate", "--algo", "three", "--input", quartet_triple_nwk]) == 0
    assert "value: 2" in capsys.readouterr().out


def test_separate_lower2_prints_case(quartet_triple_nwk, tmp_path, capsys):
    pair = tmp_path / "pair.nwk"
    pair.write_text("\n".join(open(quartet_triple_nwk).read().splitlines()[:2]))
    assert main(["separate", "--algo", "lower2", "--input", str(pair)]) == 0
    out = capsys.readouterr().out
    assert "case_path" in out


def test_separate_arity_mismatch(quartet_triple_nwk, capsys):
    assert main(["separate", "--algo", "jordan", "--input", quartet_triple_nwk]) == 2


def test_gen_then_solve_end_to_end(tmp_path, capsys):
    out = tmp_path / "fam.json"
    assert main(["gen", "--kind", "h1-blowup", "--r", "3", "--k", "2",
                 "--n", "12", "--seed", "1", "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["solve", "--input", str(out)]) == 0
    text = capsys.readouterr().out
    assert "n/6" in text


def test_gen_newick_output(tmp_path):
    out = tmp_path / "fam.nwk"
    assert main(["gen", "--kind", "random-phylo", "--k", "2", "--n", "8",
                 "--seed", "3", "--out", str(out)]) == 0
    assert out.read_text().count(";") == 2


def test_gen_hstar(tmp_path):
    out = tmp_path / "h.nwk"
    assert main(["gen", "--kind", "hstar", "--k", "3", "--out", str(out)]) == 0
    assert out.read_text().count(";") == 3


def test_quartets_count(quartet_triple_nwk, capsys):
    assert main(["quartets", "--input", quartet_triple_nwk]) == 0
    assert "common quartets: 1" in capsys.readouterr().out


def test_quartets_listing(quartet_triple_nwk, capsys):
    assert main(["quartets", "--input", quartet_triple_nwk, "--list"]) == 0
    assert "1 2 3 4 AB|CD" in capsys.readouterr().out


def test_verify_oracle_suite(capsys):
    assert main(["verify", "--suite", "oracle", "--seeds", "0..5"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_verify_bounds_suite(capsys):
    assert main(["verify", "--suite", "bounds", "--seeds", "0..3"]) == 0


def test_search_h3(capsys):
    assert main(["search-h3", "--n", "10", "--seed", "0", "--budget", "20000"]) == 0
    out = capsys.readouterr().out
    assert out.count(";") == 3


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["separate", "--algo", "bogus", "--input", "x"])
    assert exc.value.code == 1


def test_missing_file_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--input", "/nonexistent/file.json"])
    assert exc.value.code == 2
