import json
import subprocess
import sys
from pathlib import Path

import pytest

from nielsen.cli import main
from nielsen.suite import paper_suite, suite_json

SCEN = Path(__file__).resolve().parent.parent / "scenarios"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lattice_info(capsys):
    code, out, _ = run(capsys, "lattice", "info", "2*E8 + 3*U", "--json")
    d = json.loads(out)
    assert code == 0 and (d["rank"], d["b_plus"], d["b_minus"], d["parity"]) == (22, 3, 19, "even")


def test_lattice_bad_expr(capsys):
    assert run(capsys, "lattice", "info", "E7")[0] == 2


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--rank", "22", "--sig", "-16", "--parity", "even")
    assert code == 0 and "2*E8 + 3*U" in out
    assert run(capsys, "classify", "--rank", "8", "--sig", "-8", "--parity", "even")[0] == 2


def test_action(capsys):
    code, out, _ = run(capsys, "action", "--lattice", "U", "--twist", "1,-1", "--json")
    d = json.loads(out)
    assert code == 0 and d["matrix"] == [[0, 1], [1, 0]] and d["b_f_plus"] == 1
    code, out, _ = run(capsys, "action", "--lattice", "3*<-1>", "--reflect", "1,0,0;0,1,0", "--json")
    assert json.loads(out)["sigma_f"] == -3 + 2
    assert run(capsys, "action", "--lattice", "U", "--twist", "1,0")[0] == 2
    assert run(capsys, "action", "--lattice", "U", "--twist", "1;x")[0] == 2


def test_obstruct_hitchin(capsys):
    code, out, _ = run(capsys, "obstruct", str(SCEN / "hitchin_projective_twist.json"), "--json")
    d = json.loads(out)
    assert code == 0 and d["conclusion"] == "ObstructedNoFiniteOrder" and "cor:obstruction" in d["citations"]
    assert d["details"]["nontrivial"]["conclusion"] == "NontrivialClass"


def test_obstruct_enriques_boundary(capsys):
    code, out, _ = run(capsys, "obstruct", str(SCEN / "enriques_four_spheres.json"))
    assert code == 0 and "verdict: Inapplicable" in out


def test_obstruct_capacity_violation(capsys):
    code, _, err = run(capsys, "obstruct", str(SCEN / "enriques_nine_spheres.json"))
    assert code == 2 and "capacity 8" in err


def test_obstruct_as_paper_flag(capsys):
    path = str(SCEN / "z11_reflection.json")
    code, out, _ = run(capsys, "obstruct", path)
    assert code == 0 and json.loads(out)["conclusion"] == "HypothesisFailure"
    code, out, _ = run(capsys, "obstruct", path, "--as-paper")
    d = json.loads(out)
    assert d["conclusion"] == "ObstructedNoInvolution"
    assert any(n.startswith("--as-paper override") for n in d["notes"])


@pytest.mark.parametrize("content", ["{junk", "[]", '{"build": "K3"}',
                                     '{"build": "K3", "mapping_class": {"type": "dehn"}}',
                                     '{"build": "Nope", "mapping_class": {"type": "multi_twist", '
                                     '"config": [{"kind": "sphere", "euler": -2}]}}',
                                     '{"build": "K3", "mapping_class": {"type": "multi_twist", '
                                     '"config": [{"kind": "sphere", "euler": -3}]}}',
                                     '{"mapping_class": {"type": "multi_reflection", "k": 0, "xprime": "K3"}}'])
def test_obstruct_malformed(tmp_path, capsys, content):
    p = tmp_path / "s.json"
    p.write_text(content)
    assert run(capsys, "obstruct", str(p))[0] == 2


def test_obstruct_missing_file(capsys):
    assert run(capsys, "obstruct", "/nonexistent/scenario.json")[0] == 2


def test_json_byte_identical(capsys):
    path = str(SCEN / "k3_three_reflections.json")
    a = run(capsys, "obstruct", path, "--json")[1]
    b = run(capsys, "obstruct", path, "--json")[1]
    assert a == b


def test_degtyarev(capsys):
    code, out, _ = run(capsys, "degtyarev")
    assert code == 0 and "9/9 identities pass" in out


def test_suite_deterministic():
    assert suite_json(paper_suite(False)) == suite_json(paper_suite(False))


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "nielsen", "classify", "--rank", "2", "--sig", "0",
                        "--parity", "odd"], capture_output=True, text=True)
    assert r.returncode == 0 and "<1> + <-1>" in r.stdout
