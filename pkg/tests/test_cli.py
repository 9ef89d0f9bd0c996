import io
import json
import re
import subprocess
import sys

import pytest

from lsconformal.cli import COMMANDS, run
from conftest import corpus


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


A_C = corpus("a_c.lsc")

DESIGNATED = [
    ("check-lsc", A_C),
    ("check-lsc", corpus("a_0.lsc")),
    ("check-lsc", corpus("zero_algebra.lsc")),
    ("check-lsc", corpus("current_2d.lsc")),
    ("check-lsc", corpus("current_nilpotent.lsc")),
    ("check-lie", corpus("virasoro.lsc")),
    ("check-module", corpus("module_example.lsc")),
    ("check-bilinear", corpus("tstar_a_c.lsc")),
    ("check-lsc", corpus("tstar_a_c.lsc")),
    ("sub-adjacent", A_C),
    ("adjoint", A_C),
    ("coadjoint", A_C),
    ("coadjoint", A_C, "--dual-left"),
    ("semidirect", corpus("module_example.lsc")),
    ("semidirect", A_C, "--rep", "coadjoint"),
    ("delta", A_C, "--cochain", corpus("f_da.coch")),
    ("d-lie", corpus("virasoro.lsc"), "--cochain", corpus("f_da.coch")),
    ("phi-diagram", A_C, "--trials", "2", "--seed", "3"),
    ("is-cocycle", A_C, "--cochain", corpus("f_da.coch")),
    ("solve-coboundary", A_C, "--cochain", corpus("delta_id.coch")),
    ("h-dim", A_C, "--n", "1", "--degree-z", "2"),
    ("check-deformation", A_C, "--cochain", corpus("product.coch")),
    ("nijenhuis", A_C, "--map", corpus("nijenhuis_id.map")),
    ("trivial-equiv", A_C, "--cochain", corpus("delta_id.coch"), "--map", corpus("nijenhuis_id.map")),
    ("formal-check", A_C, "--cochain", corpus("formal_coboundary.coch")),
    ("formal-normalize", A_C, "--cochain", corpus("formal_coboundary.coch")),
    ("tilde-omega", A_C, "--cochain", corpus("product.coch")),
    ("tstar-extend", A_C, "--omega", corpus("zero.coch")),
    ("tstar-extend", A_C, "--omega", corpus("omega_inv.coch")),
    ("coadjoint-extend", A_C, "--omega", corpus("zero.coch")),
    ("tstar-equiv", A_C, "--omega1", corpus("zero.coch"), "--omega2", corpus("zero.coch"),
     "--theta", corpus("theta_zero.map")),
    ("tstar-equiv", A_C, "--omega1", corpus("omega_inv.coch"), "--omega2", corpus("omega_inv.coch"),
     "--theta", corpus("theta_zero.map")),
]


@pytest.mark.parametrize("argv", DESIGNATED, ids=lambda a: " ".join(str(x).split("/")[-1] for x in a))
def test_designated_commands_pass(argv):
    code, out, err = invoke(*argv)
    assert code == 0, out + err


def test_every_command_is_exercised():
    assert {a[0] for a in DESIGNATED} | {"check-isometry"} == set(COMMANDS)


def test_sub_adjacent_prints_bracket():
    code, out, _ = invoke("sub-adjacent", A_C)
    assert code == 0 and "a a = (D + 2*L) a;" in out


def test_tstar_extend_prints_table_and_form():
    code, out, _ = invoke("tstar-extend", A_C, "--omega", corpus("zero.coch"))
    assert "a a = (D + L + c) a;" in out
    assert "a a* = (D - c) a*;" in out
    assert "[0, 1]" in out and "[1, 0]" in out


@pytest.mark.parametrize("argv,check", [
    (("nijenhuis", A_C, "--map", corpus("nijenhuis_d.map")), "nijenhuis"),
    (("trivial-equiv", A_C, "--cochain", corpus("zero.coch"), "--map", corpus("nijenhuis_d.map")), "t^2"),
    (("tstar-extend", A_C, "--omega", corpus("omega_bad.coch")), "cocycle"),
    (("check-isometry", corpus("tstar_a_c.lsc"), "--map", corpus("flip.map")), "isometry"),
    (("tstar-equiv", A_C, "--omega1", corpus("omega1_theta_a.coch"), "--omega2", corpus("zero.coch"),
      "--theta", corpus("theta_a.map")), "isometric"),
])
def test_failures_exit_one_with_residuals(argv, check):
    code, out, _ = invoke(*argv)
    assert code == 1
    assert "residuals:" in out and check in out
    code, out, _ = invoke(*argv, "--json")
    doc = json.loads(out)
    assert doc["exit_code"] == 1 and not doc["passed"]
    assert any(r["check"] == check for r in doc["residuals"])


@pytest.mark.parametrize("name", ["mu_in_product.lsc", "undeclared.lsc", "missing_semicolon.lsc"])
def test_malformed_files_exit_two(name):
    path = corpus(f"malformed/{name}")
    code, _, err = invoke("check-lsc", path)
    assert code == 2
    assert re.search(re.escape(path) + r":\d+:\d+: ", err)


def test_input_errors_exit_two():
    assert invoke("check-lsc", corpus("virasoro.lsc"))[0] == 2
    assert invoke("check-lsc", corpus("does_not_exist.lsc"))[0] == 2
    assert invoke("delta", A_C)[0] == 2
    assert invoke("delta", corpus("current_2d.lsc"), "--cochain", corpus("f_da.coch"))[0] == 2


def test_json_agrees_with_text():
    for argv in DESIGNATED[:10]:
        code, text, _ = invoke(*argv)
        jcode, out, _ = invoke(*argv, "--json")
        doc = json.loads(out)
        assert jcode == code == doc["exit_code"]
        for name, ok in doc["checks"].items():
            assert f"  {name}: {'pass' if ok else 'FAIL'}" in text


def test_output_is_deterministic():
    argv = ("phi-diagram", A_C, "--trials", "2", "--seed", "11", "--json")
    assert invoke(*argv) == invoke(*argv)


def test_h_dim_json():
    code, out, _ = invoke("h-dim", A_C, "--n", "1", "--degree-z", "2", "--json")
    data = json.loads(out)["data"]
    assert (data["dim_C"], data["dim_Z"], data["dim_B_cap_Z"]) == (3, 1, 0)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lsconformal", "check-lsc", A_C], capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS" in proc.stdout
