import io
import json
import subprocess
import sys

import jsonschema
import pytest

from sigforge.cli import EXIT_DIAG, EXIT_OK, EXIT_USAGE, run
from sigforge.diagnostics import DIAGNOSTIC_SCHEMA

from conftest import CORPUS, GOLDEN

NAT = str(CORPUS / "nat.sig")
TREE = str(CORPUS / "tree.sig")
ALGEBRAS = CORPUS / "algebras"


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def strict_torus(tmp_path):
    p = tmp_path / "torus.sig"
    src = (CORPUS / "torus.sig").read_text()
    p.write_text(src.replace("profile hiit-weak", "profile hiit-strict"))
    return str(p)


def test_check_reports_each_file():
    code, out, err = cli("check", NAT, str(CORPUS / "cat.sig"))
    assert code == EXIT_OK and err == ""
    assert out.splitlines()[0] == f"ok: {NAT}: signature NatSig (profile simple, 2 entries)"
    assert len(out.splitlines()) == 2


def test_strict_torus_is_a_profile_error(strict_torus):
    code, out, err = cli("check", strict_torus)
    assert code == EXIT_DIAG and out == ""
    assert err.startswith(f"{strict_torus}:8:")
    assert "E_PROFILE" in err


def test_diagnostics_as_json_follow_the_schema(strict_torus, tmp_path):
    code, _, err = cli("check", "--diag-json", strict_torus, str(tmp_path / "missing.sig"), NAT)
    assert code == EXIT_DIAG
    diags = json.loads(err)
    jsonschema.validate(diags, {"type": "array", "items": DIAGNOSTIC_SCHEMA})
    assert [d["code"] for d in diags] == ["E_PROFILE", "E_IO"]
    assert diags[0]["file"] == strict_torus and diags[0]["line"] == 8


def test_emit_matches_the_golden_file():
    code, out, _ = cli("emit", "--what", "a,m,d,s", "--style", "ascii", NAT)
    assert code == EXIT_OK
    assert out == (GOLDEN / "nat_amds.txt").read_text()


def test_emit_selected_kinds(tmp_path):
    target = tmp_path / "nat.txt"
    code, out, _ = cli("emit", "--what", "a,d,s", "--style", "ascii", "--out", str(target), NAT)
    assert code == EXIT_OK and out == ""
    names = [ln.split(" ")[0] for ln in target.read_text().splitlines()
             if ln.split(" ")[1:2] == [":"]]
    assert names == ["NatAlg", "NatDispAlg", "NatSection"]


def test_emission_is_byte_stable(tmp_path):
    paths = []
    for i in range(2):
        p = tmp_path / f"out{i}.txt"
        subprocess.run([sys.executable, "-m", "sigforge.cli", "emit", "--out", str(p),
                        str(CORPUS / "cat.sig"), str(CORPUS / "s1.sig")], check=True)
        paths.append(p.read_bytes())
    assert paths[0] == paths[1] and paths[0]


def test_emit_of_an_unsupported_kind_fails():
    code, _, err = cli("emit", "--what", "m", str(CORPUS / "torus.sig"))
    assert code == EXIT_DIAG and "E_UNSUPPORTED" in err


def test_eval_with_an_algebra():
    code, out, _ = cli("eval", "--algebra", str(ALGEBRAS / "nat_count.json"),
                       "--term", "suc (suc zero)", NAT)
    assert (code, out) == (EXIT_OK, "2\n")


def test_eval_with_a_displayed_algebra():
    code, out, _ = cli("eval", "--dalgebra", str(ALGEBRAS / "nat_triangular.json"),
                       "--term", "suc (suc zero)", NAT)
    assert (code, out) == (EXIT_OK, "3\n")


def test_eval_of_a_tree():
    code, out, _ = cli("eval", "--algebra", str(ALGEBRAS / "tree_height.json"),
                       "--term", "node (node leaf leaf) leaf", TREE)
    assert (code, out) == (EXIT_OK, "2\n")


def test_eval_with_a_mismatched_algebra():
    code, _, err = cli("eval", "--algebra", str(ALGEBRAS / "tree_leaves.json"), "--term", "zero", NAT)
    assert code == EXIT_DIAG and "E_ARITY" in err


def test_enumerate():
    code, out, _ = cli("enumerate", "--depth", "3", NAT)
    assert code == EXIT_OK
    assert out.splitlines() == ["zero", "suc zero", "suc (suc zero)"]


def test_selfcheck():
    code, out, _ = cli("selfcheck", "--seed", "4", "--samples", "10")
    assert code == EXIT_OK
    assert len(out.splitlines()) == 6


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate", NAT],
    ["emit", "--what", "a,x", NAT],
    ["emit", "--style", "latex", NAT],
    ["enumerate", "--depth", "-1", NAT],
    ["enumerate", NAT],
    ["eval", "--term", "zero", NAT],
    ["eval", "--algebra", "a.json", "--dalgebra", "b.json", "--term", "zero", NAT],
])
def test_usage_errors(argv):
    code, out, err = cli(*argv)
    assert code == EXIT_USAGE and out == ""
    assert err.strip()


def test_usage_errors_do_no_work(tmp_path):
    target = tmp_path / "never.txt"
    code, _, _ = cli("emit", "--what", "bogus", "--out", str(target), NAT)
    assert code == EXIT_USAGE and not target.exists()


def test_color_is_opt_in(strict_torus, monkeypatch):
    monkeypatch.setenv("SIGFORGE_COLOR", "1")
    _, _, err = cli("check", strict_torus)
    assert "\x1b[31mE_PROFILE" in err
    monkeypatch.setenv("SIGFORGE_COLOR", "0")
    _, _, err = cli("check", strict_torus)
    assert "\x1b" not in err


def test_help_exits_cleanly():
    code, _, _ = cli("--help")
    assert code == EXIT_OK
