import json
import subprocess
import sys
from pathlib import Path

import pytest

from mshopf.cli import main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_parse(capsys):
    code, out, _ = run(capsys, "parse", DATA / "sunset.graph")
    d = json.loads(out)
    assert code == 0
    assert (d["loops"], d["one_pi"], d["sigma"], d["N"]) == (2, True, 1, 1)


def test_coproduct_of_primitive(capsys):
    code, out, _ = run(capsys, "coproduct", DATA / "bubble.graph", "--rho", 2)
    assert code == 0
    assert len(json.loads(out)["coproduct"]) == 2


def test_antipode_and_forests(capsys):
    code, out, _ = run(capsys, "forests", DATA / "chain.graph")
    d = json.loads(out)
    assert code == 0 and d["matches_recursive"]
    assert len(d["forests"]) == 2
    code, out, _ = run(capsys, "antipode", DATA / "chain.graph", "--all-divergent")
    terms = json.loads(out)["antipode"]
    assert code == 0
    assert sorted(t["coeff"][0] for t in terms) == ["-1", "2"]


def test_gn_tree_dot(capsys):
    code, out, _ = run(capsys, "gn-tree", DATA / "chain.graph", "--format", "dot")
    assert code == 0 and out.startswith("digraph")
    code, _, err = run(capsys, "gn-tree", DATA / "chain.graph", "--pad-gn")
    assert code == 2 and json.loads(err)["error"] == "precondition"


@pytest.mark.parametrize("rho, total", [(2, 27), (3, 64)])
def test_morphism_pi_ck(capsys, rho, total):
    code, out, _ = run(capsys, "morphism", "--pi-ck", DATA / "sunset.graph", "--rho", rho)
    d = json.loads(out)
    assert code == 0
    assert d["coefficients"] == [6, 3, 3, 1] and d["total"] == total


@pytest.mark.parametrize("flag", ["--pi-gn", "--pi-rt"])
def test_morphism_trees(capsys, flag):
    code, out, _ = run(capsys, "morphism", flag, DATA / "chain.graph")
    assert code == 0 and json.loads(out)["intertwines"]


def test_counterterms(capsys):
    code, out, _ = run(capsys, "counterterms", DATA / "chain.graph", "--amplitude", "local")
    d = json.loads(out)
    assert code == 0 and d["C_U_equals_tauA_S"]
    assert d["A_UR"] == d["A_UR_forest_form"]


def test_effective_and_lemma(capsys):
    code, out, _ = run(capsys, "effective", "--rho", 1, "--order", 2)
    assert code == 0 and json.loads(out)["corollary_holds"]
    code, out, _ = run(capsys, "lemma")
    d = json.loads(out)
    assert code == 0 and d["holds"] and d["lhs"] == ["9", "2"]


def test_parse_error_exit(capsys, tmp_path):
    bad = tmp_path / "bad.graph"
    bad.write_text("graph x\nvertex 0\ninternal a 0 9\n")
    code, _, err = run(capsys, "parse", bad)
    assert code == 1 and json.loads(err)["error"] == "parse"


def test_precondition_exit(capsys):
    code, _, err = run(capsys, "coproduct", DATA / "bubble.graph", "--rho", 1)
    assert code == 2 and json.loads(err)["error"] == "precondition"
    code, _, _ = run(capsys, "coproduct", DATA / "bubble.graph", "--format", "dot")
    assert code == 2


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "sunset")
    assert code == 0 and out.startswith("PASS")


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "mshopf", "lemma"], capture_output=True, text=True, check=False
    )
    assert r.returncode == 0 and json.loads(r.stdout)["holds"]
