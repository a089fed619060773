import io
import json
import subprocess
import sys

import pytest

from siegrid.cli import run_cli


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_nf_text_and_latex():
    assert run("nf", "DX")[:2] == (0, "X*D + 1\n")
    assert run("nf", "(n+1)X^2 D", "--format", "latex")[1] == "(n+1)X^{2}D\n"


def test_nf_json():
    code, out, _ = run("nf", "M M", "--algebra", "hweyl", "--json")
    assert code == 0
    data = json.loads(out)
    assert {"coeff": "1", "x": 0, "m": 0, "d": 2} in data


def test_nf_matrix_window():
    code, out, _ = run("nf", "D", "--window", "0..2")
    assert code == 0
    assert out.splitlines()[1:] == ["0 1 0", "0 0 2"]


def test_apply_picks_algebra_from_vector():
    assert run("apply", "XCD + D + 2", "x^2 - 4x + 2")[1] == "0\n"
    assert run("apply", "M", "d[0]")[1] == "1/2*d[-1] + 1/2*d[1]\n"


def test_apply_polynomial_flag_rejects_laurent_results():
    code, _, err = run("apply", "X^-1", "x + 1", "--polynomial")
    assert code == 2 and "polynomial" in err


def test_verify_summary_and_exit_code():
    code, out, _ = run("verify", "binomial", "--n-max", "2", "--m-max", "2", "--quiet")
    assert code == 0
    assert out.strip().endswith("0 failed")


def test_verify_json_lines():
    code, out, _ = run("verify", "legendre", "--n-max", "1", "--l-set=-1,1", "--checks", "scalar", "--json")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and rows and all(r["pass"] for r in rows)
    assert set(rows[0]) >= {"check", "grid", "vertex", "circuit", "expected", "found", "pass"}


def test_verify_rejects_unknown_check():
    code, _, err = run("verify", "laguerre", "--checks", "bogus")
    assert code == 2 and "unknown checks" in err


def test_table_text():
    code, out, _ = run("table", "laguerre", "--rows", "2..2", "--cols", "0..2", "--norm", "monic")
    assert code == 0 and out == "m=2: 1 | x - 2 | x^2 - 4*x + 2\n"


def test_table_latex_and_json():
    assert "\\begin{tabular}" in run("table", "binomial", "--rows", "0..1", "--cols", "0..1", "--format", "latex")[1]
    data = json.loads(run("table", "gegenbauer", "--l-set=1", "--cols", "0..2", "--json")[1])
    assert data["rows"][0]["cells"] == ["1", "x", "3*x^2 - 1"]


def test_identity_command():
    code, out, _ = run("identity", "laguerre", "recurrence", "--n-max", "2", "--k-max", "1")
    assert code == 0 and "summary: 6 checks, 0 failed" in out
    code, out, _ = run("identity", "binomial", "two_step_G_col0", "--m", "3")
    assert code == 0


def test_identity_errors():
    assert run("identity", "legendre", "nope")[0] == 2
    assert run("identity", "laguerre", "three_point_1", "--n", "0", "--k", "1")[0] == 2


@pytest.mark.parametrize("argv", [["nf", "X +"], ["nf", "M"], ["apply", "D", "x^"], ["bogus"]])
def test_usage_errors_exit_two(argv):
    assert run(*argv)[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "siegrid", "nf", "D X - X D"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1\n"
