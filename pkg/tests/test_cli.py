import io
import json
import subprocess
import sys

import pytest

from gradekit import cli
from gradekit.catalog import build_entry
from gradekit.gradings import fingerprint, universal_group
from gradekit.serialize import dumps, generators_to_json, grading_to_json


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name in ("sl4.pauli", "o4.cartan_refined", "sl4.cartan_outer", "sl2.pauli", "sl2.cartan"):
        p = tmp_path / f"{name}.json"
        p.write_text(dumps(grading_to_json(build_entry(name)[0])))
        paths[name] = str(p)
    G, gens, cands = build_entry("sl4.pauli")
    p = tmp_path / "pauli_gens.json"
    p.write_text(dumps(generators_to_json(G.algebra, gens, cands)))
    paths["gens"] = str(p)
    return paths


def test_catalog_verify():
    code, out, _ = run("catalog", "--entry", "sl4.pauli", "--verify")
    assert code == 0 and "15 x 1-dim" in out and "pass" in out


def test_help(capsys):
    code, _, _ = run("--help")
    assert code == 0
    assert "usage: gradekit" in capsys.readouterr().out


def test_ugroup_reports_witness(files):
    code, out, _ = run("ugroup", "--grading", files["o4.cartan_refined"])
    assert code == 0 and "not group-indexable" in out
    code, out, _ = run("--json", "ugroup", files["o4.cartan_refined"])
    assert json.loads(out)["witness"] == [0, 3]


def test_usage_errors_exit_2():
    assert run("frobnicate")[0] == 2
    assert run()[0] == 2
    assert run("ugroup")[0] == 2


def test_domain_errors_exit_1(tmp_path):
    code, _, err = run("catalog", "--entry", "sl3.pauli")
    assert code == 1 and "multiple of 3" in err
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "grading",')
    code, _, err = run("verify", str(bad))
    assert code == 1 and "line" in err


def test_conductor_flag_and_env(monkeypatch):
    assert run("catalog", "--entry", "sl3.pauli", "--conductor", "3")[0] == 0
    monkeypatch.setenv("GRADEKIT_CONDUCTOR", "12")
    code, out, _ = run("catalog", "--entry", "sl3.pauli")
    assert code == 0 and "8 x 1-dim" in out


def test_output_is_deterministic(files):
    a = run("--json", "fingerprint", files["sl4.pauli"])[1]
    b = run("--json", "fingerprint", files["sl4.pauli"])[1]
    assert a == b


def test_cli_matches_library(files):
    G = build_entry("sl4.pauli")[0]
    doc = json.loads(run("--json", "ugroup", files["sl4.pauli"])[1])
    grp = universal_group(G)
    assert doc["torsion"] == list(grp.torsion) and doc["free_rank"] == grp.free_rank
    assert [tuple(x) for x in doc["labels"]] == list(grp.labels)


def test_user_generators_get_fingerprints(files, tmp_path):
    out_path = tmp_path / "graded.json"
    code, out, _ = run("grade", files["gens"], "-o", str(out_path))
    assert code == 0
    assert "verify_grading: pass" in out
    assert fingerprint(build_entry("sl4.pauli")[0]).describe() in out
    code, out, _ = run("fingerprint", str(out_path), files["sl4.pauli"])
    assert code == 0 and "agree" in out


def test_displayed_search(files):
    code, out, _ = run("displayed", files["sl4.cartan_outer"], "--kind", "orthogonal", "--search")
    assert code == 0
    assert "antidiagonal         1 x 2-dim + 4 x 1-dim" in out


def test_realform_commands(files, tmp_path):
    alg = tmp_path / "sl2.json"
    assert run("algebra", "sl", "2", "-o", str(alg))[0] == 0
    code, out, _ = run("--json", "realform", "fixed", str(alg))
    assert code == 0 and json.loads(out)["killing_signature"] == [2, 1]
    code, out, _ = run("realform", "fundamental", files["sl2.pauli"])
    assert code == 0 and "3 x 1-dim" in out


def test_hierarchy(files):
    code, out, _ = run("hierarchy", files["sl2.pauli"], files["sl2.cartan"])
    assert code == 0 and out.startswith("digraph")


def test_diag(files):
    code, out, _ = run("--json", "diag", files["sl4.pauli"])
    assert code == 0 and json.loads(out)["torsion"] == [4, 4]


def test_console_script_version():
    out = subprocess.run([sys.executable, "-m", "gradekit", "--version"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("gradekit ")
