import json
import subprocess
import sys

import pytest

from charcoh import cli


def run_json(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_solve_vd_degree_three(capsys):
    code, obj = run_json(capsys, "solve-vd", "--degree", "3", "--model", "fuu=b*f")
    assert code == 0
    assert obj["dim"] == 1
    assert obj["generators_text"] == ["u2 - (1/2)*b*u0^3"]


def test_solve_vd_even_degree_is_empty(capsys):
    code, obj = run_json(capsys, "solve-vd", "--degree", "2", "--model", "fuu=b*f")
    assert code == 0 and obj["dim"] == 0


def test_text_and_latex(capsys):
    assert cli.run(["solve-vd", "--degree", "3", "--text"]) == 0
    assert capsys.readouterr().out == "dim V_3 = 1\n  u2 - (1/2)*b*u0^3\n"
    assert cli.run(["render", "u2 - 1/2*b*u0^3", "--latex"]) == 0
    assert capsys.readouterr().out.strip() == r"u_{2} - \frac{1}{2} b u_{0}^{3}"


def test_output_is_deterministic(capsys):
    argv = ["build-law", "--degree", "5"]
    cli.run(argv)
    first = capsys.readouterr().out
    cli.run(argv)
    assert capsys.readouterr().out == first


def test_out_file(tmp_path, capsys):
    target = tmp_path / "ps.json"
    assert cli.run(["ps-chain", "--count", "3", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    obj = json.loads(target.read_text())
    assert all(r["ok"] for r in obj["identities"])
    assert obj["degenerate"] is False


def test_build_law_variants(capsys):
    code, obj = run_json(capsys, "build-law", "--degree", "3")
    assert code == 0 and obj["closure_residual_is_zero"] and obj["varphi"]["d_varphi_equals_Phi"]
    code, obj = run_json(capsys, "build-law", "--classical", "--a", "0", "--b", "1")
    assert code == 0 and obj["varphi"]["d_varphi_equals_Phi"]
    assert run_json(capsys, "build-law", "--degree", "2", "--P", "u1")[0] == 1


def test_classify(capsys):
    code, obj = run_json(capsys, "classify", "--degree", "5")
    assert code == 0
    assert [c["text"] for c in obj["conditions"]] == ["l1 = 0", "l2 - 2*l1^2 = 0"]
    assert cli.run(["classify", "--degree", "4"]) == 2


def test_symmetry_check(capsys):
    code, obj = run_json(capsys, "symmetry-check", "--degree", "3")
    assert code == 0 and obj["solves_E"]
    code, obj = run_json(capsys, "symmetry-check", "--g", "u1", "--depth", "2")
    assert code == 1 and not obj["solves_E"]


def test_numcheck(tmp_path, capsys):
    csv_path = tmp_path / "s.csv"
    code, obj = run_json(capsys, "numcheck", "--degree", "3", "--csv", str(csv_path))
    assert code == 0 and obj["ok"]
    assert csv_path.read_text().startswith("x,u,du,a,residual\n")
    assert run_json(capsys, "numcheck", "--P", "u1")[0] == 1
    assert cli.run(["numcheck", "--P", "z*u0"]) == 2


def test_verify(capsys, monkeypatch):
    code, obj = run_json(capsys, "verify", "--max-degree", "3")
    assert code == 0 and obj["ok"] and obj["max_degree"] == 3
    monkeypatch.setenv(cli.DEGREE_ENV, "3")
    code, obj = run_json(capsys, "verify")
    assert obj["max_degree"] == 3
    monkeypatch.setenv(cli.DEGREE_ENV, "x")
    assert cli.run(["verify"]) == 2


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["nope"],
        ["solve-vd"],
        ["solve-vd", "--degree", "3", "--model", "fuu=f^2"],
        ["render", "u0/u1"],
        ["ps-chain", "--beta", "u0"],
        ["numcheck", "--h", "a,b"],
        ["solve-vd", "--degree", "3", "--text", "--json"],
    ],
)
def test_usage_errors(argv, capsys):
    assert cli.run(argv) == 2


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "charcoh.cli", "solve-vd", "--degree", "1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["generators_text"] == ["u0"]
