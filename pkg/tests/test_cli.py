import json
import math

import pytest

from netavg.cli import dumps_json, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spectrum_cycle4(capsys):
    code, out, _ = run(capsys, "spectrum", "--gen", "cycle:4")
    assert code == 0
    atoms = [a["mu"] for a in json.loads(out)["spectrum_A"]["atoms"]]
    for want in (1.0, 2 / math.pi, 0.0):
        assert min(abs(a - want) for a in atoms) < 1e-11


def test_spectrum_from_file(tmp_path, capsys):
    path = tmp_path / "k3.json"
    path.write_text(json.dumps({"edges": [{"u": "a", "v": "b", "c": 1}, {"u": "b", "v": "c", "c": 1},
                                          {"u": "c", "v": "a", "c": 1}]}))
    code, out, _ = run(capsys, "spectrum", "-i", str(path))
    atoms = json.loads(out)["spectrum_A"]["atoms"]
    hit = [a for a in atoms if abs(a["mu"] - 0.4134966) < 1e-7]
    assert code == 0 and hit[0]["multiplicity"] == 2


def test_missing_input(capsys):
    code, _, err = run(capsys, "spectrum", "-i", "does-not-exist.json")
    assert code == 2 and "input not found" in err


def test_bad_generator(capsys):
    code, _, err = run(capsys, "spectrum", "--gen", "cycle:two")
    assert code == 2 and err


def test_flows_c5(capsys):
    code, out, _ = run(capsys, "flows", "--gen", "cycle:5")
    d = json.loads(out)
    assert code == 0 and d["odd"]["dimension"] == 1 and d["even"]["dimension"] == 0


def test_basis_count_path3(capsys):
    code, out, _ = run(capsys, "basis", "--gen", "path:3", "--n-max", "2")
    # 1 + n_max + n_max * bipartite + (pairs with |lambda| < 1) * (2 n_max + 1)
    assert code == 0 and json.loads(out)["count"] == 1 + 2 + 2 + 1 * 5


def test_verify_complete4(capsys, tmp_path):
    report = tmp_path / "report.json"
    code = main(["verify", "--gen", "complete:4", "--nodes", "64", "-o", str(report)])
    d = json.loads(report.read_text())
    assert code == 0 and d["passed"] and d["oracle"]["ok"]


def test_verify_fails_on_impossible_tolerance(capsys):
    code, out, _ = run(capsys, "verify", "--gen", "cycle:4", "--skip-oracle", "--tol", "0")
    assert code == 1 and not json.loads(out)["passed"]


def test_omega_star(capsys):
    code, out, _ = run(capsys, "omega-star")
    assert code == 0 and json.loads(out)["omega_star"] == pytest.approx(4.493409, abs=1e-6)


def test_tree(capsys):
    _, out, _ = run(capsys, "tree", "--q", "2")
    d = json.loads(out)
    assert d["min_spec"] == pytest.approx(-0.217233, abs=1e-6) and len(d["intervals"]) == 1
    _, out, _ = run(capsys, "tree", "--q", "83")
    assert json.loads(out)["case_flag"] == "endpoint"


def test_dl(capsys):
    _, out, _ = run(capsys, "dl", "--q", "2", "--r", "3")
    assert json.loads(out)["rho_P"] == pytest.approx(0.979795897, abs=1e-9)


def test_map_csv(tmp_path):
    path = tmp_path / "map.csv"
    assert main(["map", "--lambdas", "0.5", "-1", "--grid", "4", "-o", str(path)]) == 0
    raw = path.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0] == "kind,omega,mu,lambda,n"
    assert sum(line.startswith("grid") for line in lines) == 4
    assert sum(line.startswith("image") for line in lines) == 17


def test_byte_identical_and_sorted(capsys):
    _, a, _ = run(capsys, "basis", "--gen", "cycle:3", "--n-max", "1")
    _, b, _ = run(capsys, "basis", "--gen", "cycle:3", "--n-max", "1")
    assert a == b
    d = json.loads(a)
    assert list(d) == sorted(d)


def test_float_format():
    assert dumps_json({"x": 1 / 3, "b": [math.pi]}) == '{\n "b": [\n  3.14159265359\n ],\n "x": 0.333333333333\n}\n'
