import csv
import io
import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from centdian import builtin_instance
from centdian.cli import EXIT_CAP, EXIT_INVALID, main
from centdian.core import dump_instance, parse_instance
from centdian.reductions import PFacilityInput, brute_force_p_median


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def frac(x):
    return F(x["num"], x["den"])


def test_solve_median_example2(capsys):
    r = report(capsys, "--instance", "builtin:example2", "solve", "--criterion", "median")
    assert r["result"]["subgraph"]["label"] == builtin_instance("example2").subgraph([(1, 2), (2, 3), (2, 4)]).label(
        builtin_instance("example2")
    )
    assert frac(r["result"]["objectives"]["F_m"]) == F(4010, 120)
    assert r["result"]["objectives"]["F_m"]["dec"] == "33.416667"
    assert r["instance"]["budget"] == {"num": 90, "den": 1, "dec": "90.000000"}
    assert r["certificate"] > 0 and "wall_time" in r


def test_max_centdian_example5(capsys):
    inst = builtin_instance("example5")
    r = report(capsys, "solve", "--instance", "builtin:example5", "--criterion", "max-centdian", "--lambda", "0.448")
    s1 = inst.subgraph([(1, 3), (3, 2), (3, 4), (5, 4), (6, 4)])
    assert r["result"]["subgraph"]["edges"] == list(s1.edges)
    assert r["command"]["lam"] == "56/125"


def _strip(r):
    return {k: v for k, v in r.items() if k not in ("wall_time", "command")}


def test_centdian_endpoints(capsys):
    base = ("--instance", "builtin:example5", "solve", "--criterion")
    assert _strip(report(capsys, *base, "centdian", "--lambda", "0"))["result"] == _strip(report(capsys, *base, "median"))["result"]
    lam1 = report(capsys, *base, "centdian", "--lambda", "1")["result"]
    lex = report(capsys, *base, "lex-centdian")["result"]
    assert lam1["subgraph"] == lex["subgraph"] and lam1["objectives"] == lex["objectives"]
    assert lam1["value"] == report(capsys, *base, "center")["result"]["value"]


@pytest.mark.parametrize("cmd", [["solve", "--criterion", "gen-center"], ["pareto", "po2"], ["intervals"], ["enumerate", "--count-only"]])
def test_deterministic(capsys, cmd):
    a = report(capsys, "--instance", "builtin:example5", *cmd)
    b = report(capsys, "--instance", "builtin:example5", "--workers", "2", *cmd)
    assert _strip(a) == _strip(b)


def test_frontier(capsys):
    code, out, err = run(capsys, "--instance", "builtin:example5_budget90", "frontier")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 17 and sum(r["nondominated"] == "1" for r in rows) == 3
    assert "feasible subgraphs: 72" in err


def test_frontier_example4(capsys):
    _, out, _ = run(capsys, "--instance", "builtin:example4", "frontier")
    nd = [r for r in csv.DictReader(io.StringIO(out)) if r["nondominated"] == "1"]
    assert [r["F_c_num"] for r in nd] == ["30"]


def test_pareto_and_intervals(capsys):
    r = report(capsys, "--instance", "builtin:example5_budget90", "pareto", "po2")
    assert [frac(e["point"][0]) for e in r["result"]["entries"]] == [70, 80, 92]
    r = report(capsys, "--instance", "builtin:example5_budget90", "intervals")
    assert r["certificate"] == 72


def test_enumerate(capsys):
    r = report(capsys, "--instance", "builtin:example4", "enumerate")
    assert r["result"]["count"] == 15 == len(r["result"]["subgraphs"])


def test_cap_exit_code(capsys):
    code, _, err = run(capsys, "--instance", "builtin:metro", "enumerate", "--count-only")
    assert code == EXIT_CAP and "error" in err


def test_cap_flag(capsys):
    code, _, _ = run(capsys, "--instance", "builtin:example1", "--cap", "3", "pareto", "po")
    assert code == EXIT_CAP


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--criterion", "centdian"],
        ["solve", "--criterion", "max-centdian", "--lambda", "1"],
        ["solve", "--criterion", "median", "--unrestricted"],
        ["access", "--subgraph", "99", "--k", "3"],
        ["access", "--subgraph", "1-6", "--k", "3"],
    ],
)
def test_invalid_exit_code(capsys, argv):
    code, out, err = run(capsys, "--instance", "builtin:example1", *argv)
    assert code == EXIT_INVALID and out == "" and err.startswith("error:")


def test_bad_instance_files(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    doc = json.loads(dump_instance(builtin_instance("example1")))
    doc["pairs"] = []
    bad.write_text(json.dumps(doc))
    assert run(capsys, "--instance", str(bad), "frontier")[0] == EXIT_INVALID
    assert run(capsys, "--instance", str(tmp_path / "missing.json"), "frontier")[0] == EXIT_INVALID
    assert run(capsys, "frontier")[0] == EXIT_INVALID


def test_instance_file(capsys, tmp_path):
    path = tmp_path / "ex2.json"
    path.write_text(dump_instance(builtin_instance("example2")))
    a = report(capsys, "--instance", str(path), "solve", "--criterion", "median")
    b = report(capsys, "--instance", "builtin:example2", "solve", "--criterion", "median")
    assert a["result"] == b["result"]


class TestReduce:
    def _write(self, tmp_path, inp):
        path = tmp_path / "p.json"
        path.write_text(json.dumps({"dist": [[int(x) for x in row] for row in inp.dist], "p": inp.p}))
        return path

    def test_shape_and_round_trip(self, capsys, tmp_path):
        inp = PFacilityInput.from_points((0, 5, 7), 1)
        code, out, _ = run(capsys, "reduce", "--input", str(self._write(tmp_path, inp)))
        assert code == 0
        inst = parse_instance(out)
        assert (len(inst.nodes), len(inst.edges), len(inst.pairs), inst.budget) == (4, 6, 3, 1)
        assert dump_instance(inst) + "\n" == out

    def test_solve_after_reduce(self, capsys, tmp_path):
        inp = PFacilityInput.from_points((0, 5, 7, 12), 2)
        _, out, _ = run(capsys, "reduce", "--input", str(self._write(tmp_path, inp)), "--kind", "median")
        inst_path = tmp_path / "inst.json"
        inst_path.write_text(out)
        r = report(capsys, "--instance", str(inst_path), "solve", "--criterion", "median")
        assert frac(r["result"]["objectives"]["F_m"]) * inp.n == brute_force_p_median(inp)

    def test_all_open_budget(self, capsys, tmp_path):
        inp = PFacilityInput.from_points((0, 5, 7), 3)
        _, out, _ = run(capsys, "reduce", "--input", str(self._write(tmp_path, inp)), "--kind", "center")
        assert parse_instance(out).budget == 3

    def test_invalid_input(self, capsys, tmp_path):
        path = tmp_path / "p.json"
        path.write_text(json.dumps({"dist": [[0, 1], [1, 0]], "p": 5}))
        assert run(capsys, "reduce", "--input", str(path))[0] == EXIT_INVALID


class TestAccess:
    def test_metro(self, capsys):
        r = report(capsys, "--instance", "builtin:metro", "access", "--subgraph", "0,1,2,3", "--k", "35", "--beta", "2")
        res = r["result"]
        assert res["covered"] == [2, 3]
        assert [p["distance"] if p["distance"] == "unreachable" else frac(p["distance"]) for p in res["pairs"]] == [
            "unreachable",
            75,
            76,
            57,
        ]
        assert frac(res["objectives"]["F_c"]) == 76

    def test_endpoint_spec(self, capsys):
        a = report(capsys, "--instance", "builtin:metro", "access", "--subgraph", "2-5,4-5,3-4,2-3", "--k", "35", "--beta", "2")
        b = report(capsys, "--instance", "builtin:metro", "access", "--subgraph", "3,2,1,0", "--k", "35", "--beta", "2")
        assert a["result"] == b["result"]

    def test_raw_rule(self, capsys):
        r = report(
            capsys, "--instance", "builtin:metro", "access", "--subgraph", "0,1,2,3", "--k", "35", "--beta", "2",
            "--threshold-rule", "raw",
        )
        w1 = r["result"]["pairs"][0]
        assert frac(w1["distance"]) == 104 and not w1["covered"]

    def test_zero_k_matches_core(self, capsys):
        inst = builtin_instance("example2")
        spec = "1-3,3-5,5-6"
        r = report(capsys, "--instance", "builtin:example2", "access", "--subgraph", spec, "--k", "0")
        assert frac(r["result"]["objectives"]["F_c"]) == 80
        assert frac(r["result"]["objectives"]["F_m"]) == F(5500, 120)
        assert inst.subgraph([(1, 3), (3, 5), (5, 6)]).edges == tuple(r["result"]["subgraph"]["edges"])

    def test_solve_under_access_model(self, capsys):
        r = report(capsys, "--instance", "builtin:example5", "solve", "--criterion", "median", "--k", "0")
        s = report(capsys, "--instance", "builtin:example5", "solve", "--criterion", "median")
        assert r["result"] == s["result"]


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "centdian", "--instance", "builtin:example4", "enumerate", "--count-only"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(out.stdout)["result"]["count"] == 15
