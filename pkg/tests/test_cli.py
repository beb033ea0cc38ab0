import csv
import io
import json
import subprocess
import sys

import pytest

from rspin.cli import ORBIT_STATE_CAP, parse_twists, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def ok_json(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return json.loads(out)


@pytest.fixture
def loop_graph(tmp_path):
    path = tmp_path / "loop.json"
    path.write_text(json.dumps({"vertices": [{"genus": 1}], "edges": [[0, 0]], "legs": []}))
    return str(path)


class TestComponents:
    def test_genus_two_parity(self):
        code, out, _ = call("components", "--g", "2", "--r", "2", "--m", "")
        assert code == 0
        assert out == '{"count":2,"classes":[{"label":"even","size":10},{"label":"odd","size":6}]}\n'

    def test_empty_moduli(self):
        assert ok_json("components", "--g", "2", "--r", "5") == {"count": 0, "classes": []}

    def test_negative_twists_normalized(self):
        rec = ok_json("components", "--g", "2", "--r", "6", "--m=-2, 4 ")
        assert [c["size"] for c in rec["classes"]] == [810, 486]
        assert "notice" in rec

    def test_csv(self):
        code, out, _ = call("--format", "csv", "components", "--g", "1", "--r", "6", "--m", "0")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0
        assert [(r["label"], r["size"]) for r in rows] == [("6", "1"), ("3", "3"), ("2", "8"), ("1", "24")]

    def test_csv_empty_has_header(self):
        code, out, _ = call("components", "--g", "2", "--r", "5", "--format", "csv")
        assert code == 0 and out == "label,size\n"


class TestOtherCommands:
    def test_orbits(self):
        rec = ok_json("orbits", "--g", "1", "--r", "6", "--m", "0")
        assert sorted(c["size"] for c in rec["classes"]) == [1, 3, 8, 24]
        rec = ok_json("orbits", "--g", "2", "--r", "2", "--mode", "mod2_full")
        assert sorted(c["size"] for c in rec["classes"]) == [6, 10]

    def test_orbit_cap(self):
        code, _, err = call("orbits", "--g", "4", "--r", "7")
        assert code == 1 and str(ORBIT_STATE_CAP) in err

    def test_counts(self):
        rec = ok_json("counts", "--g", "1", "--r", "6", "--m", "0")
        assert rec["components"] == 4 and rec["ell"] == 6 and rec["exists"] is True
        assert {o["d"]: o["count"] for o in rec["orders"]} == {1: 24, 2: 8, 3: 3, 6: 1}

    def test_local(self):
        rec = ok_json("local", "--u", "1", "--v", "2", "--d", "2")
        assert rec["exponents"] == [2, 1, 0, 1]
        assert rec["verified"] is True
        assert [i["image"] for i in rec["images"]] == ["z1", "t*z2", "y*z2"]

    def test_rewrite_check(self):
        rec = ok_json("rewrite-check", "--u", "2", "--v", "3", "--d", "4", "--trials", "100")
        assert rec["failures"] == 0 and rec["verified"] is True

    def test_nodal(self, loop_graph):
        rec = ok_json("nodal", "--graph", loop_graph, "--r", "2", "--m", "")
        assert [s["count"] for s in rec["strata"]] == [8, 4]
        assert rec["strata"][1] == {"orders": [[1, 1]], "degrees": [0], "count": 4, "ramification": [2]}

    def test_nodal_override(self, tmp_path):
        path = tmp_path / "g.json"
        path.write_text(json.dumps({"vertices": [{"genus": 1}], "edges": [[0, 0]], "legs": [{"vertex": 0, "m": 1}]}))
        assert ok_json("nodal", "--graph", str(path), "--r", "2")["strata"] == []
        assert len(ok_json("nodal", "--graph", str(path), "--r", "2", "--m", "0")["strata"]) == 2
        code, _, err = call("nodal", "--graph", str(path), "--r", "2", "--m", "0,0")
        assert code == 1 and "legs" in err

    def test_degree_check(self):
        rec = ok_json("degree-check", "--g", "3", "--r", "4")
        assert rec == {"g": 3, "r": 4, "weighted": 4096, "expected": 4096, "identity": True}


class TestErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            ["degree-check", "--g", "2", "--r", "3"],
            ["components", "--g", "x", "--r", "2"],
            ["components", "--g", "1", "--r", "2"],
            ["components", "--g", "2", "--r", "2", "--m", "1,a"],
            ["bogus"],
            [],
            ["orbits", "--g", "1", "--r", "4", "--m", "0", "--mode", "mod2_full"],
            ["local", "--u", "0", "--v", "2", "--d", "2"],
            ["local", "--u", "1", "--v", "2", "--d", "0"],
            ["nodal", "--graph", "/nonexistent.json", "--r", "2"],
            ["counts", "--g", "2", "--r", "0"],
        ],
    )
    def test_exit_one_single_line(self, argv):
        code, out, err = call(*argv)
        assert code == 1
        assert out == ""
        assert err.count("\n") == 1 and err.startswith("rspin: error:")

    def test_invalid_graph_file(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert call("nodal", "--graph", str(bad), "--r", "2")[0] == 1
        unstable = tmp_path / "unstable.json"
        unstable.write_text(json.dumps({"vertices": [{"genus": 0}], "edges": [[0, 0]]}))
        code, _, err = call("nodal", "--graph", str(unstable), "--r", "2")
        assert code == 1 and "vertex 0" in err


def test_parse_twists():
    assert parse_twists("") == []
    assert parse_twists("  ") == []
    assert parse_twists(" 1, -2 ,3") == [1, -2, 3]


def test_byte_stable_subprocess():
    argv = [sys.executable, "-m", "rspin", "components", "--g", "2", "--r", "4", "--m", "2"]
    first = subprocess.run(argv, capture_output=True, text=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, text=True, check=True).stdout
    assert first == second
    assert json.loads(first)["count"] == 2
