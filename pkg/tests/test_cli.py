import json
import subprocess
import sys

import pytest

from splitpoly.cli import main
from splitpoly.formats import write_phylip
from splitpoly.networks import PhyloTree
from splitpoly.splits import distance_vector, unit_weighting

CATERPILLAR = PhyloTree.of(5, [[1, 2], [4, 5]])


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cat5(tmp_path):
    path = tmp_path / "caterpillar5.phy"
    d = distance_vector(CATERPILLAR, unit_weighting(CATERPILLAR))
    path.write_text(write_phylip(d, 5, ["t1", "t2", "t3", "t4", "t5"]))
    return str(path)


class TestCounts:
    def test_bme5_facets(self, capsys):
        assert run(capsys, "facets", "--polytope", "bme", "--n", "5")[:2] == (0, "facets: 52\n")

    def test_relaxed5_vertices(self, capsys):
        assert run(capsys, "vertices", "--polytope", "relaxed", "--n", "5")[:2] == (0, "vertices: 27\n")

    def test_relaxed5_facets(self, capsys):
        assert run(capsys, "facets", "--polytope", "relaxed", "--n", "5")[1] == "facets: 40\n"

    def test_bmenk(self, capsys):
        assert run(capsys, "vertices", "--polytope", "bmenk", "--n", "5", "--k", "1")[1] == "vertices: 30\n"

    def test_stsp_csv(self, capsys, tmp_path):
        out_file = tmp_path / "v.csv"
        code, out, _ = run(capsys, "vertices", "--polytope", "stsp", "--n", "4", "--csv", "--out", str(out_file))
        assert code == 0 and out == out_file.read_text()
        assert out.splitlines()[0] == "vertex,1-2,1-3,1-4,2-3,2-4,3-4" and len(out.splitlines()) == 4

    def test_facet_csv_has_bound(self, capsys):
        out = run(capsys, "facets", "--polytope", "bme", "--n", "4", "--csv")[1]
        assert out.splitlines()[0].endswith(",bound") and len(out.splitlines()) == 4

    def test_enumerate(self, capsys):
        out = run(capsys, "enumerate", "--n", "5")[1].splitlines()
        assert out[-1] == "count: 15" and "(1,2,(3,(4,5)));" in out
        out = run(capsys, "enumerate", "--n", "5", "--networks", "--k", "1")[1].splitlines()
        assert out[-1] == "count: 30"

    def test_csn(self, capsys):
        out = run(capsys, "csn-fvector", "--n", "4")[1]
        assert out.startswith("f-vector: 3 3\n")


class TestInference:
    def test_bme_exact(self, capsys, cat5):
        code, out, _ = run(capsys, "bme-exact", "--dist", cat5)
        assert code == 0 and out == "tree: (t1,t2,(t3,(t4,t5)));\nvalue: 56\n"

    def test_polysplit(self, capsys, cat5):
        out = run(capsys, "polysplit", "--dist", cat5)[1]
        assert out == "status: tree\ntree: (t1,t2,(t3,(t4,t5)));\nvalue: 56\n"

    def test_ties(self, capsys, tmp_path):
        path = tmp_path / "flat.phy"
        path.write_text(write_phylip([2] * 6, 4))
        out = run(capsys, "bme-exact", "--dist", str(path))[1]
        assert "ties: 3" in out


class TestVector:
    def test_newick(self, capsys, tmp_path):
        path = tmp_path / "t.nwk"
        path.write_text("((1,2),3,(4,5));\n")
        out = run(capsys, "vector", "--in", str(path))[1].splitlines()
        assert out[0] == "pair,value" and out[1] == "1-2,4" and out[-1] == "4-5,4"

    def test_network_json(self, capsys, tmp_path):
        path = tmp_path / "n.json"
        path.write_text(json.dumps({"n": 5, "ordering": [1, 2, 3, 4, 5],
                                    "splits": [{"part": [1, 2]}, {"part": [3, 4]}, {"part": [4, 5]}]}))
        out = run(capsys, "vector", "--in", str(path))[1].splitlines()
        assert [r.split(",")[1] for r in out[1:]] == ["2", "1", "0", "1", "1", "0", "1", "2", "0", "2"]
        out = run(capsys, "vector", "--in", str(path), "--kind", "distance")[1].splitlines()
        assert out[1] == "1-2,2"

    def test_unrefined_network_is_range_error(self, capsys, tmp_path):
        path = tmp_path / "n.json"
        path.write_text(json.dumps({"n": 5, "ordering": [1, 2, 3, 4, 5], "splits": [{"part": [1, 2]}]}))
        assert run(capsys, "vector", "--in", str(path))[0] == 4


class TestErrors:
    def test_usage(self, capsys):
        assert run(capsys, "facets", "--polytope", "bogus", "--n", "5")[0] == 2
        assert run(capsys, "enumerate", "--n", "5", "--bogus")[0] == 2
        assert run(capsys)[0] == 2

    def test_parse_error_with_location(self, capsys, tmp_path):
        path = tmp_path / "bad.phy"
        path.write_text("4\na 0 2 3 3\nb 2 0 3 3\nc 3 3 0 2\nd 3 3 1 0\n")
        code, _, err = run(capsys, "bme-exact", "--dist", str(path))
        assert code == 3 and "line 5, column 3" in err

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "polysplit", "--dist", str(tmp_path / "none.phy"))[0] == 3

    def test_range(self, capsys):
        assert run(capsys, "enumerate", "--n", "3")[0] == 4
        assert run(capsys, "vertices", "--polytope", "bmenk", "--n", "5")[0] == 4
        assert run(capsys, "csn-fvector", "--n", "9")[0] == 4


def test_deterministic_output(capsys):
    a = run(capsys, "vertices", "--polytope", "relaxed", "--n", "5", "--csv")[1]
    b = run(capsys, "vertices", "--polytope", "relaxed", "--n", "5", "--csv")[1]
    assert a == b


def test_check_fast_subset(capsys, monkeypatch):
    from splitpoly import checks

    picked = [c for c in checks.CHECKS if c.level == "fast"][:3]
    monkeypatch.setattr(checks, "CHECKS", picked)
    code, out, _ = run(capsys, "check", "--level", "fast")
    assert code == 0 and out.count("PASS") == 3


def test_check_failure_exit_code(capsys, monkeypatch):
    from splitpoly import checks

    monkeypatch.setattr(checks, "CHECKS", [checks.Check("always fails", "fast", lambda seed: (False, "x"))])
    code, out, _ = run(capsys, "check")
    assert code == 1 and out.startswith("FAIL")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "splitpoly", "csn-fvector", "--n", "4"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("f-vector: 3 3")
